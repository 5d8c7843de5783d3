use rayon::prelude::*;

use super::config::SweepConfig;
use super::report::{Extremum, Record, SweepReport};
use crate::error::Result;
use crate::layer_ops::{
    check_coercivity, check_continuity_bounds, check_normal_derivative_bound, disk_profile, layer_spectrum, BoundName,
};
use crate::trace_spaces::Wavenumber;

const GEOMETRY: &str = "circle";

/// Modes at which the radial-quadrature checks run; the closed forms cover every mode.
fn quadrature_modes(kmax: usize) -> Vec<usize> {
    let mut ks = vec![0, 1, 8, kmax];
    ks.retain(|&k| k <= kmax);
    ks.dedup();
    ks
}

/// Continuity of the layer operators and potentials, the normal-derivative bound and
/// coercivity over `|s|` × phase.
pub fn cmd_bio(cfg: &SweepConfig) -> Result<SweepReport> {
    let moduli = cfg.modulus_grid();
    let phases = cfg.phases.clone();
    let grid = format!(
        "|s|[{:e};{:e};{}] phases={} kmax={}",
        moduli[0],
        moduli[moduli.len() - 1],
        moduli.len(),
        phases.len(),
        cfg.kmax
    );
    let mut rep = SweepReport::new("bio", grid);
    let points: Vec<(f64, f64)> = moduli.iter().flat_map(|&m| phases.iter().map(move |&p| (m, p))).collect();
    let quad = quadrature_modes(cfg.kmax);
    let parts = points
        .par_iter()
        .map(|&(modulus, phase)| -> Result<Vec<Record>> {
            let s = Wavenumber::from_polar(modulus, phase)?;
            let spec = layer_spectrum(s, cfg.kmax)?;
            let hd = disk_profile(s, cfg.kmax)?;
            let bounds = check_continuity_bounds(&spec, &hd)?;
            let mut rows: Vec<Record> = bounds
                .rows
                .iter()
                .map(|b| {
                    Record::bound(b.bound.as_str(), GEOMETRY, modulus, b.k as i64, b.lhs, b.rhs, Record::BOUND_SLACK)
                        .with_phase(phase)
                })
                .collect();
            for k in 0..=cfg.kmax {
                let ratio = spec.normal_derivative_ratio(k, hd.weight(k));
                rows.push(
                    Record::bound("normal_derivative", GEOMETRY, modulus, k as i64, ratio, 1.0, Record::BOUND_SLACK)
                        .with_phase(phase),
                );
                if phase == 0.0 {
                    rows.push(
                        Record::equal("normal_derivative_equality", GEOMETRY, modulus, k as i64, ratio, 1.0, 1e-9)
                            .with_phase(phase),
                    );
                }
            }
            for &k in &quad {
                let ratio = check_normal_derivative_bound(k as i64, s)?;
                rows.push(
                    Record::bound("normal_derivative_quad", GEOMETRY, modulus, k as i64, ratio, 1.0, 1e-8)
                        .with_phase(phase),
                );
                let c = check_coercivity(k as i64, s)?;
                // ρ‖v‖² ≤ Re((s̄/|s|) l(v, v))
                rows.push(Record::bound("coercivity", GEOMETRY, modulus, k as i64, c.rhs, c.lhs, 1e-10).with_phase(phase));
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    rep.extend(parts.into_iter().flatten());
    for name in BoundName::ALL.iter().map(|b| b.as_str()).chain(["normal_derivative"]) {
        rep.measure(&format!("max_{name}"), name, GEOMETRY, Extremum::Max);
    }
    rep.measure("min_coercivity_ratio", "coercivity", GEOMETRY, Extremum::Min);
    Ok(rep)
}
