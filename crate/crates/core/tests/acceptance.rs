//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to see them.

use std::f64::consts::PI;
use std::time::Instant;

use helmtrace::extension_spectral::{dtn_disk, dtn_exterior_disk, field_energy_disk, field_energy_exterior_disk};
use helmtrace::gagliardo_quad::{gagliardo_circle, CircleSamples};
use helmtrace::harness::{
    cmd_bio, cmd_characterize, cmd_compare, cmd_fem_validate, cmd_scaling, wronskian_points, Kind, SweepConfig,
    SweepReport,
};
use helmtrace::layer_ops::{layer_spectrum, v_quadrature_oracle, BoundName, Operator};
use helmtrace::special_fn::{cross_products, ComplexArg};
use helmtrace::trace_spaces::{gagliardo_eigen_circle, FourierTrace, Wavenumber, Weight};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    id: usize,
    pass: bool,
    detail: String,
}

fn outcome(id: usize, pass: bool, detail: String) -> Outcome {
    Outcome { id, pass, detail }
}

fn spread(rep: &SweepReport, check: &str, geometry: &str) -> (f64, f64) {
    // norm ratios squared back into weight ratios
    rep.rows_for(check, geometry).map(|r| r.ratio * r.ratio).fold((f64::INFINITY, 0.0), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for (k, z) in wronskian_points(1, 1000) {
        let c = cross_products(k, ComplexArg::new(z).unwrap()).unwrap();
        worst = worst.max((c.ipk - c.ikp - z.inv()).norm() / z.inv().norm());
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(1, worst <= 1e-11 && secs < 5.0, format!("worst relative Wronskian defect {worst:.2e} on 1000 points, {secs:.2} s"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for s in [1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3] {
        let w = Weight::new(s).unwrap();
        let sv = Wavenumber::new(Complex64::new(s, 0.0)).unwrap();
        for k in 0..=16i64 {
            let a = field_energy_disk(k, sv, s).unwrap();
            let b = 2.0 * PI * dtn_disk(k, w).unwrap();
            let c = field_energy_exterior_disk(k, sv, s).unwrap();
            let d = 2.0 * PI * dtn_exterior_disk(k, w).unwrap();
            worst = worst.max((a - b).abs() / b).max((c - d).abs() / d);
        }
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(2, worst <= 1e-8 && secs < 10.0, format!("worst relative gap {worst:.2e}, {secs:.2} s"))
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for k in 0..=16i64 {
        let v = gagliardo_circle(&CircleSamples::new(FourierTrace::mode(k).sample(512)).unwrap()).unwrap();
        let e = gagliardo_eigen_circle(k);
        worst = worst.max((v - e).abs() / e.max(1.0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let kmax = rng.gen_range(1..=16usize);
        let g = FourierTrace::from_coeffs(
            (0..2 * kmax + 1).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect(),
        )
        .unwrap();
        let v = gagliardo_circle(&CircleSamples::new(g.sample(512)).unwrap()).unwrap();
        let e: f64 = g.modes().map(|(k, c)| 4.0 * PI * PI * k.abs() as f64 * c.norm_sqr()).sum();
        worst = worst.max((v - e).abs() / e);
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(3, worst <= 1e-8 && secs < 20.0, format!("worst relative disagreement {worst:.2e}, {secs:.2} s"))
}

fn criterion_4(cfg: &SweepConfig) -> Outcome {
    let t = Instant::now();
    let rep = cmd_fem_validate(cfg).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let upper: Vec<_> = rep.rows.iter().filter(|r| r.check == "fem_upper").collect();
    let upper_ok = upper.iter().all(|r| r.pass);
    let gap = rep.rows_for("fem_gap", "disk_h0.05").map(|r| r.ratio - 1.0).fold(0.0, f64::max);
    let contraction = rep
        .rows_for("fem_contraction", "disk_h0.1_to_h0.05")
        .map(|r| r.rhs / r.lhs)
        .fold(f64::INFINITY, f64::min);
    let pass = upper_ok && gap <= 0.02 && contraction >= 1.5 && secs < 120.0;
    outcome(
        4,
        pass,
        format!(
            "upper bound in {}/{} cases, max gap at h = 0.05 {:.3}%, min contraction {contraction:.2}x, {secs:.1} s",
            upper.iter().filter(|r| r.pass).count(),
            upper.len(),
            100.0 * gap
        ),
    )
}

fn criterion_5(rep: &SweepReport, secs: f64) -> Outcome {
    let (lo, hi) = spread(rep, "char", "disk");
    let finite = lo.is_finite() && lo > 0.0 && hi.is_finite();
    outcome(
        5,
        finite && hi / lo <= 10.0 && secs < 5.0,
        format!("h_k/GD in [{lo:.4}, {hi:.4}], sup/inf {:.3}, {secs:.2} s", hi / lo),
    )
}

fn criterion_6(rep: &SweepReport) -> Outcome {
    let (lo, hi) = spread(rep, "char", "exterior_ball");
    let finite = lo.is_finite() && lo > 0.0 && hi.is_finite();
    let identity: Vec<_> = rep.rows_for("constant_ratio", "exterior_ball").collect();
    let identity_ok = !identity.is_empty() && identity.iter().all(|r| r.pass && (1.0..=2.0).contains(&r.rhs));
    outcome(
        6,
        finite && hi / lo <= 10.0 && identity_ok,
        format!(
            "h_l/GD(max{{1,σ}}) in [{lo:.4}, {hi:.4}], sup/inf {:.3}; l = 0 identity {}",
            hi / lo,
            if identity_ok { "exact to 1e-10" } else { "violated" }
        ),
    )
}

fn criterion_7() -> Outcome {
    let vals: Vec<f64> =
        [1e-2, 1e-3, 1e-4, 1e-5, 1e-6].iter().map(|&s| dtn_exterior_disk(0, Weight::new(s).unwrap()).unwrap()).collect();
    let decreasing = vals.windows(2).all(|w| w[1] < w[0]);
    let halved = vals[4] < 0.5 * vals[0];
    outcome(7, decreasing && halved, format!("h_0/(2π) from {:.4} at 1e-2 down to {:.4} at 1e-6", vals[0], vals[4]))
}

fn criterion_8(cfg: &SweepConfig) -> Outcome {
    let rep = cmd_scaling(cfg).unwrap();
    let bounds_ok = rep.rows.iter().filter(|r| r.kind == Kind::Bound).all(|r| r.pass);
    let c_sc = rep.constants.iter().filter(|c| c.name == "C_sc").map(|c| c.value).fold(0.0, f64::max);
    let at_one: Vec<_> = rep.rows.iter().filter(|r| r.sigma == 1.0 && r.kind == Kind::Bound).collect();
    let exact = !at_one.is_empty() && at_one.iter().all(|r| (r.ratio - 1.0).abs() <= 1e-12);
    outcome(
        8,
        bounds_ok && c_sc.is_finite() && exact,
        format!("{} bound rows hold, C_sc = {c_sc:.4}, {} rows at σ = 1 exact", rep.rows.len(), at_one.len()),
    )
}

fn criterion_9(cfg: &SweepConfig) -> Outcome {
    let rep = cmd_compare(cfg).unwrap();
    let c = rep.constant("C_sharp", "annulus").unwrap_or(f64::INFINITY);
    let low: Vec<f64> = rep.rows_for("sharpness", "annulus").filter(|r| r.sigma <= 0.1).map(|r| r.ratio).collect();
    let (lo, hi) = low.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    outcome(
        9,
        c.is_finite() && !low.is_empty() && hi / lo <= 1.2,
        format!("C = {c:.4}; (ratio/σ) over σ ≤ 0.1 varies by {:.2}%", 100.0 * (hi / lo - 1.0)),
    )
}

fn criterion_10(cfg: &SweepConfig) -> Outcome {
    let t = Instant::now();
    let rep = cmd_bio(cfg).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let names: Vec<&str> = BoundName::ALL.iter().map(|b| b.as_str()).collect();
    let six: Vec<_> = rep.rows.iter().filter(|r| names.contains(&r.check.as_str())).collect();
    let violations = six.iter().filter(|r| !r.pass).count();
    let worst = six.iter().map(|r| 1.0 - r.ratio).fold(f64::INFINITY, f64::min);
    let equality = rep.rows.iter().filter(|r| r.check == "normal_derivative_equality").all(|r| r.pass);
    let coercive = rep.rows.iter().filter(|r| r.check == "coercivity").all(|r| r.pass);
    let expected = 25 * 7 * 65 * 6;
    outcome(
        10,
        violations == 0 && six.len() == expected && equality && coercive && secs < 60.0,
        format!("{violations} violations in {} rows, worst margin {worst:.3e}, {secs:.1} s", six.len()),
    )
}

fn criterion_11() -> Outcome {
    let mut worst = 0.0f64;
    for modulus in [0.01, 0.1, 1.0, 10.0] {
        for phase in [0.0, PI / 4.0, -1.45] {
            let s = Wavenumber::from_polar(modulus, phase).unwrap();
            let spec = layer_spectrum(s, 32).unwrap();
            for k in 0..=32i64 {
                let a = spec.eigenvalue(Operator::V, k);
                let b = v_quadrature_oracle(k, s).unwrap();
                worst = worst.max((a - b).norm() / a.norm());
            }
        }
    }
    outcome(11, worst <= 1e-7, format!("worst relative gap {worst:.2e}"))
}

// The literal spread bound of criterion 6 cannot hold: the sphere Gagliardo eigenvalue
// is 4πl, so h_l/(Λ_l + max{1,σ}) runs from 2 (l = 0, σ = 1) to 65/(256π + 1) ≈ 0.081 (l = 64, σ → 0).
const KNOWN_RED: [usize; 1] = [6];

#[test]
fn acceptance_criteria() {
    let cfg = SweepConfig::default();
    let t = Instant::now();
    let characterize = cmd_characterize(&cfg).unwrap();
    let char_secs = t.elapsed().as_secs_f64();
    let results = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(&cfg),
        criterion_5(&characterize, char_secs),
        criterion_6(&characterize),
        criterion_7(),
        criterion_8(&cfg),
        criterion_9(&cfg),
        criterion_10(&cfg),
        criterion_11(),
    ];
    for r in &results {
        println!("criterion {:2}: {}  {}", r.id, if r.pass { "PASS" } else { "FAIL" }, r.detail);
    }
    let unexpected: Vec<usize> = results.iter().filter(|r| !r.pass && !KNOWN_RED.contains(&r.id)).map(|r| r.id).collect();
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
    // everything the known-red criterion asserts apart from the spread must still hold
    let (lo, hi) = spread(&characterize, "char", "exterior_ball");
    assert!(lo > 0.0 && hi.is_finite());
    assert!(characterize.rows_for("constant_ratio", "exterior_ball").all(|r| r.pass));
}
