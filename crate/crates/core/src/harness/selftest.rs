use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::SweepConfig;
use super::grid_label;
use super::report::{Extremum, Record, SweepReport};
use crate::error::Result;
use crate::extension_spectral::{dtn_disk, dtn_exterior_disk, field_energy_disk, field_energy_exterior_disk};
use crate::gagliardo_quad::{gagliardo_circle, CircleSamples};
use crate::special_fn::{switchover_scan, BesselRow, ComplexArg};
use crate::trace_spaces::{gagliardo_eigen_circle, FourierTrace, Wavenumber, Weight};

pub const WRONSKIAN_POINTS: usize = 1000;
pub const WRONSKIAN_TOL: f64 = 1e-11;
const IDENTITY_SIGMAS: [f64; 7] = [1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3];

/// Random `(k, z)` with `k ≤ 64`, `|z|` log-uniform in `[1e-3, 1e3]` and `Re z > 0`.
pub fn wronskian_points(seed: u64, n: usize) -> Vec<(usize, Complex64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let k = rng.gen_range(0..=64);
            let r = 10f64.powf(rng.gen_range(-3.0..=3.0));
            let phase = rng.gen_range(-0.999..0.999) * FRAC_PI_2;
            (k, Complex64::from_polar(r, phase))
        })
        .collect()
}

fn special_rows(cfg: &SweepConfig) -> Result<Vec<Record>> {
    let sw = cfg.switchover;
    let pts = wronskian_points(cfg.seed, WRONSKIAN_POINTS);
    let mut rows = pts
        .par_iter()
        .map(|&(k, z)| -> Result<Vec<Record>> {
            let row = BesselRow::with_switchover(ComplexArg::new(z)?, k, &sw)?;
            let c = row.cross(k);
            let err = (c.ipk - c.ikp - z.inv()).norm();
            let mut out =
                vec![Record::bound("wronskian", "bessel", z.norm(), k as i64, err, WRONSKIAN_TOL * z.inv().norm(), 0.0)
                    .with_phase(z.arg())];
            // three-term recurrences, where the unscaled values stay in range
            if k >= 1 && z.norm() <= 100.0 {
                let next = BesselRow::with_switchover(ComplexArg::new(z)?, k + 1, &sw)?;
                let (i_m, i_0, i_p) = (next.i(k - 1)?, next.i(k)?, next.i(k + 1)?);
                let (k_m, k_0, k_p) = (next.k(k - 1)?, next.k(k)?, next.k(k + 1)?);
                let two_k = 2.0 * k as f64 / z;
                let ei = (i_m - i_p - two_k * i_0).norm();
                let ek = (k_p - k_m - two_k * k_0).norm();
                let si = i_m.norm() + i_p.norm();
                let sk = k_m.norm() + k_p.norm();
                out.push(Record::bound("recurrence_i", "bessel", z.norm(), k as i64, ei, 1e-12 * si, 0.0).with_phase(z.arg()));
                out.push(Record::bound("recurrence_k", "bessel", z.norm(), k as i64, ek, 1e-12 * sk, 0.0).with_phase(z.arg()));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    let scan = switchover_scan(&sw, 64)?;
    rows.push(Record::bound("switchover", "bessel", scan.worst_z.norm(), scan.worst_order as i64, scan.worst_jump, scan.tolerance, 0.0));
    Ok(rows)
}

fn identity_rows() -> Result<Vec<Record>> {
    let jobs: Vec<(f64, i64)> = IDENTITY_SIGMAS.iter().flat_map(|&s| (0..=16).map(move |k| (s, k))).collect();
    let parts = jobs
        .par_iter()
        .map(|&(s, k)| -> Result<Vec<Record>> {
            let w = Weight::new(s)?;
            let sv = Wavenumber::new(Complex64::new(s, 0.0))?;
            let int = field_energy_disk(k, sv, s)?;
            let ext = field_energy_exterior_disk(k, sv, s)?;
            Ok(vec![
                Record::equal("identity", "disk", s, k, int, 2.0 * PI * dtn_disk(k, w)?, 1e-8),
                Record::equal("identity", "exterior_disk", s, k, ext, 2.0 * PI * dtn_exterior_disk(k, w)?, 1e-8),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().flatten().collect())
}

fn gagliardo_rows(seed: u64) -> Result<Vec<Record>> {
    const N: usize = 512;
    let mut rows = Vec::new();
    for k in 0..=16i64 {
        let v = gagliardo_circle(&CircleSamples::new(FourierTrace::mode(k).sample(N))?)?;
        let e = gagliardo_eigen_circle(k);
        // the k = 0 row compares against zero, so it is measured on the scale of one
        rows.push(Record::bound("gagliardo_mode", "circle", 0.0, k, (v - e).abs(), 1e-8 * e.max(1.0), 0.0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    for trial in 0..20 {
        let kmax = rng.gen_range(1..=16usize);
        let coeffs = (0..2 * kmax + 1)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let g = FourierTrace::from_coeffs(coeffs)?;
        let v = gagliardo_circle(&CircleSamples::new(g.sample(N))?)?;
        let e: f64 = g.modes().map(|(k, c)| gagliardo_eigen_circle(k) * c.norm_sqr()).sum();
        rows.push(Record::equal("gagliardo_random", "circle", 0.0, trial, v, e, 1e-8));
    }
    Ok(rows)
}

/// Special-function identities, the variational identity and the two Gagliardo routes.
pub fn cmd_selftest(cfg: &SweepConfig) -> Result<SweepReport> {
    let mut rep = SweepReport::new("selftest", grid_label(cfg));
    rep.extend(special_rows(cfg)?);
    rep.extend(identity_rows()?);
    rep.extend(gagliardo_rows(cfg.seed)?);
    rep.measure("max_wronskian_over_tol", "wronskian", "bessel", Extremum::Max);
    rep.measure("max_identity_ratio", "identity", "disk", Extremum::Max);
    rep.measure("max_identity_ratio", "identity", "exterior_disk", Extremum::Max);
    Ok(rep)
}
