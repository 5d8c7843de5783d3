use std::f64::consts::PI;

use helmtrace::extension_spectral::*;
use helmtrace::special_fn::{bessel_i, BesselRow, ComplexArg};
use helmtrace::trace_spaces::{FourierTrace, SphericalTrace, Wavenumber, Weight};
use num_complex::Complex64;
use proptest::prelude::*;

fn w(s: f64) -> Weight {
    Weight::new(s).unwrap()
}

fn real(s: f64) -> Wavenumber {
    Wavenumber::new(Complex64::new(s, 0.0)).unwrap()
}

fn i_real(k: usize, x: f64) -> f64 {
    bessel_i(k, ComplexArg::real(x).unwrap()).unwrap().re
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn disk_dtn_examples() {
    let s = 1e-3;
    assert!(rel(dtn_disk(0, w(s)).unwrap(), s * s / 2.0) < 1e-5);
    assert!(rel(dtn_disk(1, w(1e-6)).unwrap(), 1.0) < 1e-10);
    assert!(rel(dtn_disk(-1, w(1e-6)).unwrap(), 1.0) < 1e-10);
    let h0 = 2.0 * PI * dtn_disk(0, w(1.0)).unwrap();
    assert!((h0 - 2.8048).abs() < 1e-4);
    assert!(rel(h0, 2.0 * PI * i_real(1, 1.0) / i_real(0, 1.0)) < 1e-14);
}

#[test]
fn exterior_disk_dtn_examples() {
    let v: Vec<f64> = [1e-2, 1e-4, 1e-6].iter().map(|&s| dtn_exterior_disk(0, w(s)).unwrap()).collect();
    assert!(v[2] < 0.1);
    assert!(v[0] > v[1] && v[1] > v[2]);
    // -σK_0'/K_0 = σK_1/K_0 ≈ 1/(ln(2/σ) - γ) for small σ
    let approx = 1.0 / ((2.0f64 / 1e-6).ln() - 0.577_215_664_901_532_9);
    assert!(rel(v[2], approx) < 1e-6);
    assert!(rel(dtn_exterior_disk(1, w(1e-6)).unwrap(), 1.0) < 1e-6);
    for k in 0..=3 {
        let d = dtn_exterior_disk(k, w(10.0)).unwrap();
        assert!((10.0..=10.0 + k as f64 + 1.0).contains(&d), "k = {k}: {d}");
    }
}

#[test]
fn annulus_examples() {
    let alt = annulus_mode(0, w(1e-4), 0.5, Variant::Alternative).unwrap();
    assert!(rel(alt, 2.0 * PI / 2f64.ln()) < 1e-6, "{alt}");

    let s = 1e-3;
    let std = annulus_mode(0, w(s), 0.5, Variant::Standard).unwrap();
    let disk = 2.0 * PI * dtn_disk(0, w(s)).unwrap();
    let ratio = std / disk;
    assert!((0.75..=1.0).contains(&ratio), "{ratio}");
    // constant-extension energy on the annulus is an upper bound
    assert!(std <= PI * s * s * 0.75);
}

#[test]
fn annulus_matches_radial_ode_shooting() {
    // Independent check: integrate u'' + u'/r - (k²/r² + σ²)u = 0 from r = ρ with
    // the variant's condition, by RK4 in r, and read σ-free DtN u'(1)/u(1).
    fn shoot(k: f64, sigma: f64, rho: f64, variant: Variant) -> f64 {
        let (mut u, mut du) = match variant {
            Variant::Alternative => (0.0, 1.0),
            Variant::Standard => (1.0, 0.0),
        };
        let n = 20000;
        let h = (1.0 - rho) / n as f64;
        let f = |r: f64, u: f64, du: f64| (du, -du / r + (k * k / (r * r) + sigma * sigma) * u);
        let mut r = rho;
        for _ in 0..n {
            let (a1, b1) = f(r, u, du);
            let (a2, b2) = f(r + h / 2.0, u + h / 2.0 * a1, du + h / 2.0 * b1);
            let (a3, b3) = f(r + h / 2.0, u + h / 2.0 * a2, du + h / 2.0 * b2);
            let (a4, b4) = f(r + h, u + h * a3, du + h * b3);
            u += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
            du += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
            r += h;
        }
        2.0 * PI * du / u
    }
    for (k, sigma, rho) in [(0, 0.5, 0.5), (3, 2.0, 0.3), (1, 7.0, 0.8), (5, 0.1, 0.5)] {
        for variant in [Variant::Standard, Variant::Alternative] {
            let a = annulus_mode(k, w(sigma), rho, variant).unwrap();
            let b = shoot(k as f64, sigma, rho, variant);
            assert!(rel(a, b) < 1e-9, "k = {k}, σ = {sigma}, ρ = {rho}, {variant:?}: {a} vs {b}");
        }
    }
}

#[test]
fn ball_examples() {
    for s in [1e-3, 1e-2] {
        let d = dtn_ball(0, w(s)).unwrap();
        assert!(rel(d, s * s / 3.0) < 1e-4);
    }
    let s: f64 = 1.7;
    assert!(rel(dtn_ball(0, w(s)).unwrap(), s / s.tanh() - 1.0) < 1e-13);
    for s in [1e-6, 1e-3, 0.5, 1.0, 3.0, 1e3, 1e6] {
        let d = dtn_exterior_ball(0, w(s)).unwrap();
        assert!(rel(d, 1.0 + s) < 1e-12, "σ = {s}");
        let ratio = d / s.max(1.0);
        assert!((1.0..=2.0).contains(&ratio));
    }
}

#[test]
fn min_ext_norm_examples() {
    let s = 2.0;
    let p = ExtensionProfile::new(Geometry::DiskInterior, w(s), Variant::Standard, 4).unwrap();
    let one = FourierTrace::constant(Complex64::new(1.0, 0.0));
    let v = min_ext_norm(&one, &p).unwrap();
    let exact = (2.0 * PI * s * i_real(1, s) / i_real(0, s)).sqrt();
    assert!(rel(v, exact) < 1e-13);
    assert!(v <= s * PI.sqrt());

    assert_eq!(min_ext_norm(&FourierTrace::zeros(3), &p).unwrap(), 0.0);
    let q = ExtensionProfile::new(Geometry::BallExterior, w(s), Variant::Standard, 4).unwrap();
    assert_eq!(min_ext_norm(&SphericalTrace::zeros(2), &q).unwrap(), 0.0);

    let p1 = ExtensionProfile::new(Geometry::DiskInterior, w(1.0), Variant::Standard, 2).unwrap();
    let v = min_ext_norm(&FourierTrace::mode(1), &p1).unwrap();
    let i1 = i_real(1, 1.0);
    let di1 = i_real(0, 1.0) - i1;
    assert!(rel(v, (2.0 * PI * di1 / i1).sqrt()) < 1e-13);
    assert!((v - 2.791).abs() < 1e-3);
}

fn gaussian_spectrum(n: usize, half_width: f64) -> (Vec<f64>, Vec<f64>) {
    let xi: Vec<f64> = (0..n).map(|i| -half_width + 2.0 * half_width * i as f64 / (n - 1) as f64).collect();
    // g = e^{-x²/2}, ĝ = √(2π) e^{-ξ²/2}
    let sp = xi.iter().map(|x| 2.0 * PI * (-x * x).exp()).collect();
    (xi, sp)
}

#[test]
fn halfspace_examples() {
    let (xi, sp) = gaussian_spectrum(4001, 14.0);
    let n0 = halfspace_norm(&xi, &sp, 0.0).unwrap();
    // same trapezoid sum written out, and the exact value 2π ∫ |ξ| 2π e^{-ξ²} dξ = 4π²
    let direct: f64 = (1..xi.len())
        .map(|i| 0.5 * (xi[i] - xi[i - 1]) * (xi[i].abs() * sp[i] + xi[i - 1].abs() * sp[i - 1]))
        .sum::<f64>();
    assert!(rel(n0, (2.0 * PI * direct).sqrt()) < 1e-14);
    assert!(rel(n0 * n0, 4.0 * PI * PI) < 1e-4);
    let n1 = halfspace_norm(&xi, &sp, 1.0).unwrap();
    let n2 = halfspace_norm(&xi, &sp, 2.0).unwrap();
    assert!(n0 < n1 && n1 < n2);
    // ½(σ + |ξ|)² ≤ σ² + ξ² ≤ (σ + |ξ|)², integrated against |ĝ|²
    for s in [1e-3, 0.1, 1.0, 2.0, 50.0] {
        let n = halfspace_norm(&xi, &sp, s).unwrap();
        let upper: f64 = (1..xi.len())
            .map(|i| 0.5 * (xi[i] - xi[i - 1]) * ((s + xi[i].abs()) * sp[i] + (s + xi[i - 1].abs()) * sp[i - 1]))
            .sum::<f64>()
            * 2.0
            * PI;
        let ratio = n * n / upper;
        assert!((1.0 / 2f64.sqrt()..=1.0).contains(&ratio), "σ = {s}: {ratio}");
    }
    assert_eq!(halfspace_norm(&xi, &vec![0.0; xi.len()], 1.0).unwrap(), 0.0);
}

#[test]
fn variational_identity_interior_and_exterior() {
    let sigmas = [1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3];
    for &s in &sigmas {
        for k in 0..=16 {
            let e = field_energy_disk(k, real(s), s).unwrap();
            let d = 2.0 * PI * dtn_disk(k, w(s)).unwrap();
            assert!(rel(e, d) <= 1e-8, "interior k = {k}, σ = {s}: {e} vs {d}");
            let e = field_energy_exterior_disk(k, real(s), s).unwrap();
            let d = 2.0 * PI * dtn_exterior_disk(k, w(s)).unwrap();
            assert!(rel(e, d) <= 1e-8, "exterior k = {k}, σ = {s}: {e} vs {d}");
        }
    }
}

#[test]
fn small_sigma_constant_energy() {
    let s = 1e-4;
    let e = field_energy_disk(0, real(s), s).unwrap();
    assert!(rel(e, PI * s * s) < 1e-6);
    let e = field_energy_exterior_disk(0, real(s), s).unwrap();
    assert!(rel(e, 2.0 * PI * dtn_exterior_disk(0, w(s)).unwrap()) < 1e-8);
}

#[test]
fn complex_energies_positive_and_match_green_identity() {
    for (k, sigma, theta) in [(0, 1.0, PI / 4.0), (3, 0.2, -1.2), (8, 30.0, 1.45), (1, 500.0, 0.4)] {
        let s = Wavenumber::from_polar(sigma, theta).unwrap();
        let row = BesselRow::new(ComplexArg::new(s.s()).unwrap(), k).unwrap();
        let e = field_energy_disk(k as i64, s, sigma).unwrap();
        assert!(e > 0.0);
        assert!(rel(field_energy_disk_green(&row, k, s), e) < 1e-9, "interior k = {k}");
        let e = field_energy_exterior_disk(k as i64, s, sigma).unwrap();
        assert!(e > 0.0);
        assert!(rel(field_energy_exterior_disk_green(&row, k, s), e) < 1e-9, "exterior k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn standard_below_alternative(k in 0i64..=16, ls in -4.0f64..4.0, rho in 0.05f64..0.95) {
        let s = w(10f64.powf(ls));
        let a = annulus_mode(k, s, rho, Variant::Standard).unwrap();
        let b = annulus_mode(k, s, rho, Variant::Alternative).unwrap();
        prop_assert!(a > 0.0 && a <= b * (1.0 + 1e-12), "{a} vs {b}");
    }

    #[test]
    fn weights_are_positive_and_increasing_in_mode(ls in -4.0f64..4.0) {
        let s = w(10f64.powf(ls));
        for g in [Geometry::DiskInterior, Geometry::DiskExterior, Geometry::annulus(0.5), Geometry::BallInterior, Geometry::BallExterior] {
            let p = ExtensionProfile::new(g, s, Variant::Standard, 32).unwrap();
            for n in 1..=32 {
                prop_assert!(p.weight_at(n) > p.weight_at(n - 1) && p.weight_at(n - 1) > 0.0, "{g:?} n = {n}");
            }
        }
    }
}
