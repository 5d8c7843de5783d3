use std::f64::consts::PI;

use helmtrace::extension_spectral::{annulus_mode, dtn_disk, ExtensionProfile, Geometry, Variant};
use helmtrace::fem_oracle::*;
use helmtrace::trace_spaces::{FourierTrace, Weight};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn disk_exact(k: i64, sigma: f64) -> f64 {
    2.0 * PI * dtn_disk(k, Weight::new(sigma).unwrap()).unwrap()
}

#[test]
fn disk_mesh_examples() {
    let h = 0.1;
    let m = mesh_disk(h).unwrap();
    m.validate(None).unwrap();
    let n = m.vertices().len();
    assert!((200..=2000).contains(&n), "{n} vertices");
    assert!((m.area() - PI).abs() < 2.0 * h * h);
    let straight: f64 = (0..m.triangles().len()).map(|t| m.triangle_area(t)).sum();
    assert!((straight - PI).abs() < 2.0 * h * h);
    assert!(m.count(Tag::Gamma) as f64 >= 2.0 * PI / h * 0.5);
    assert_eq!(m.count(Tag::GammaC), 0);
    assert!(m.size() <= 2.0 * h);
    assert!(mesh_disk(0.001).is_err());
    assert!(mesh_disk(0.5).is_err());
}

#[test]
fn annulus_mesh_examples() {
    let h = 0.1;
    let m = mesh_annulus(0.5, h).unwrap();
    m.validate(Some(0.5)).unwrap();
    assert!((m.area() - PI * 0.75).abs() < 2.0 * h * h);
    assert!(m.count(Tag::GammaC) >= 6);
    assert!(mesh_annulus(0.99, h).is_err());
    let g = mesh_annulus_graded(0.3, 0.05, 0.04).unwrap();
    g.validate(Some(0.3)).unwrap();
    assert!((g.area() - PI * 0.91).abs() < 1e-10);
}

#[test]
fn graded_mesh_is_valid_and_exact_in_area() {
    let m = mesh_disk_graded(0.05, boundary_layer_factor(1000.0)).unwrap();
    m.validate(None).unwrap();
    assert!((m.area() - PI).abs() < 1e-10);
    assert!(m.max_aspect() > 3.0);
    assert!((boundary_layer_factor(0.5) - 1.0).abs() == 0.0);
}

#[test]
fn mesh_text_round_trip() {
    let m = mesh_annulus(0.4, 0.2).unwrap();
    let text = m.to_text();
    assert_eq!(Mesh::from_text(&text).unwrap(), m);
    let first = text.lines().nth(1).unwrap();
    assert_eq!(first.split_whitespace().count(), 3);
    assert!(Mesh::from_text("2 0\n0 0 0\n").is_err());
    assert!(Mesh::from_text("1 0\n0 0 7\n").is_err());
}

#[test]
fn energy_examples() {
    let h = 0.1;
    let m = mesh_disk(h).unwrap();
    let one = FemField::from_fn(&m, |_, _| Complex64::new(1.0, 0.0));
    assert!((fem_energy(&one, 2.0).unwrap() - 4.0 * m.area()).abs() < 1e-12);
    assert!((fem_energy(&one, 2.0).unwrap() - 4.0 * PI).abs() < 2.0 * h * h);
    let zero = FemField::from_fn(&m, |_, _| Complex64::new(0.0, 0.0));
    assert_eq!(fem_energy(&zero, 3.0).unwrap(), 0.0);
    let x = FemField::from_fn(&m, |x, _| Complex64::new(x, 0.0));
    assert!((fem_energy(&x, 0.0).unwrap() - m.area()).abs() < 2.0 * h * h);
    assert!(FemField::new(&m, vec![Complex64::new(0.0, 0.0); 3]).is_err());
}

#[test]
fn disk_mode_one_example() {
    let m = mesh_disk(0.05).unwrap();
    let sol = solve_min_extension(&m, &FourierTrace::mode(1), 1.0, Variant::Standard).unwrap();
    let exact = disk_exact(1, 1.0);
    assert!(sol.energy >= exact && sol.energy <= 1.02 * exact, "{} vs {exact}", sol.energy);
    assert!(sol.residual <= 1e-9);
}

#[test]
fn zero_data_gives_zero() {
    let m = mesh_disk(0.1).unwrap();
    let sol = solve_min_extension(&m, &FourierTrace::zeros(2), 5.0, Variant::Standard).unwrap();
    assert_eq!(sol.energy, 0.0);
    assert!(sol.field.values().iter().all(|v| *v == Complex64::new(0.0, 0.0)));
}

#[test]
fn band_limit_precondition() {
    let m = mesh_disk(0.3).unwrap();
    let n = m.count(Tag::Gamma);
    assert!(solve_min_extension(&m, &FourierTrace::mode((n / 8 + 1) as i64), 1.0, Variant::Standard).is_err());
    assert!(solve_min_extension(&m, &FourierTrace::mode(1), -1.0, Variant::Standard).is_err());
}

#[test]
fn annulus_capacity_example() {
    let m = mesh_annulus(0.5, 0.05).unwrap();
    let one = FourierTrace::constant(Complex64::new(1.0, 0.0));
    let sol = solve_min_extension(&m, &one, 1e-2, Variant::Alternative).unwrap();
    let cap = 2.0 * PI / 2f64.ln();
    assert!((sol.energy - cap).abs() < 0.02 * cap);
    let exact = annulus_mode(0, Weight::new(1e-2).unwrap(), 0.5, Variant::Alternative).unwrap();
    assert!(sol.energy >= exact && sol.energy <= 1.02 * exact);
}

#[test]
fn annulus_both_variants_bound_the_spectral_value() {
    for variant in [Variant::Standard, Variant::Alternative] {
        for (k, sigma) in [(0i64, 0.1), (2, 1.0), (4, 30.0)] {
            let exact = annulus_mode(k, Weight::new(sigma).unwrap(), 0.5, variant).unwrap();
            let m = mesh_annulus_graded(0.5, 0.05, boundary_layer_factor(sigma)).unwrap();
            let e = solve_min_extension(&m, &FourierTrace::mode(k), sigma, variant).unwrap().energy;
            assert!(e >= exact && e <= 1.02 * exact, "{variant:?} k = {k} σ = {sigma}: {e} vs {exact}");
        }
    }
}

#[test]
fn refinement_contracts_the_gap() {
    for (k, sigma) in [(0i64, 1.0), (3, 0.01), (2, 100.0)] {
        let gap = |h: f64| {
            let m = mesh_disk_graded(h, boundary_layer_factor(sigma)).unwrap();
            let e = solve_min_extension(&m, &FourierTrace::mode(k), sigma, Variant::Standard).unwrap().energy;
            e - disk_exact(k, sigma)
        };
        let (coarse, fine) = (gap(0.1), gap(0.05));
        assert!(fine > 0.0 && coarse / fine >= 1.5, "k = {k}, σ = {sigma}: {coarse:e} → {fine:e}");
    }
}

#[test]
fn nodal_data_can_undershoot() {
    // plain nodal interpolation shrinks the trace norm; the prefiltered data does not
    let m = mesh_disk(0.1).unwrap();
    let g = FourierTrace::mode(4);
    let nodal = solve_min_extension_with(&m, &g, 1e-2, Variant::Standard, BoundaryData::Nodal).unwrap().energy;
    let pre = solve_min_extension(&m, &g, 1e-2, Variant::Standard).unwrap().energy;
    assert!(nodal < pre);
    assert!(pre >= disk_exact(4, 1e-2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fem_energy_bounds_spectral_energy(seed in 0u64..1000, ls in -2.0f64..2.0) {
        let sigma = 10f64.powf(ls);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = FourierTrace::from_coeffs(
            (0..7).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect(),
        ).unwrap();
        let profile = ExtensionProfile::new(Geometry::DiskInterior, Weight::new(sigma).unwrap(), Variant::Standard, 3).unwrap();
        let exact = profile.profile.norm(&g).unwrap().powi(2);
        let m = mesh_disk_graded(0.2, boundary_layer_factor(sigma)).unwrap();
        let sol = solve_min_extension(&m, &g, sigma, Variant::Standard).unwrap();
        prop_assert!(sol.energy >= exact, "{} < {}", sol.energy, exact);
        prop_assert!(sol.residual <= 1e-9);
    }
}
