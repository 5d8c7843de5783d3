use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::config::SweepConfig;
use super::grid_label;
use super::report::{Extremum, Record, SweepReport};
use super::spectral::Geo;
use crate::error::{Error, Result};
use crate::extension_spectral::{annulus_mode, Variant};
use crate::fem_oracle::{
    boundary_layer_factor, fem_energy, mesh_annulus, mesh_disk_graded, solve_min_extension, FemField, Mesh, Tag,
};
use crate::special_fn::MAX_CYL_ORDER;
use crate::trace_spaces::{FourierTrace, Weight};

/// σ values of the finite-element rows.
pub const FEM_SIGMAS: [f64; 5] = [1e-2, 1e-1, 1.0, 10.0, 100.0];
const FEM_MODES: i64 = 4;
const REFINEMENT: [f64; 3] = [0.2, 0.1, 0.05];

/// Squared interior-disk norm of the trace of a P1 field on Γ, from above.
///
/// Γ vertices are equally spaced, so the trace is piecewise linear in θ and its
/// Fourier coefficients are `sinc²(mΔ/2) V̂_{m mod N}` with `V̂` the DFT of the Γ values.
/// Modes up to 256 are summed exactly. Above that `h_m ≤ 2π(m + σ)` bounds each alias,
/// and the bound is what gets added.
pub fn piecewise_linear_trace_norm_sq(field: &FemField, sigma: f64) -> Result<f64> {
    let mesh = field.mesh();
    let mut gamma: Vec<(f64, Complex64)> = mesh
        .vertices()
        .iter()
        .zip(mesh.tags())
        .zip(field.values())
        .filter(|((_, t), _)| **t == Tag::Gamma)
        .map(|((v, _), &u)| (v[1].atan2(v[0]).rem_euclid(2.0 * PI), u))
        .collect();
    gamma.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = gamma.len();
    if n < 3 {
        return Err(Error::Precondition("mesh has fewer than three Γ vertices".into()));
    }
    let delta = 2.0 * PI / n as f64;
    let theta0 = gamma[0].0;
    if gamma.iter().enumerate().any(|(j, (t, _))| (t - theta0 - delta * j as f64).abs() > 1e-9) {
        return Err(Error::Precondition("Γ vertices are not equally spaced".into()));
    }

    let m_max = MAX_CYL_ORDER as i64;
    let h = Geo::Disk.weights(sigma, MAX_CYL_ORDER, 0.5)?;
    let nn = n as i64;
    let lo = -(nn / 2);
    // bound on h_m sinc⁴(mΔ/2) / sin⁴(jΔ/2) for |m| > 256
    let far = |m: f64| 2.0 * PI * (m + sigma) / (0.5 * m * delta).powi(4);
    const EXPLICIT_ALIASES: i64 = 1000;
    let mut total = 0.0;
    for j in lo..lo + nn {
        let vj: Complex64 = gamma
            .iter()
            .enumerate()
            .map(|(p, (_, u))| u * Complex64::from_polar(1.0, -(j as f64) * delta * p as f64))
            .sum::<Complex64>()
            / n as f64;
        let e = vj.norm_sqr();
        if e == 0.0 {
            continue;
        }
        let mut s = 0.0;
        let mut tail = 0.0;
        // aliases m = j + tN on both sides of zero
        for dir in [1i64, -1] {
            let mut m = if dir == 1 { j } else { j - nn };
            let mut extra = 0;
            loop {
                let a = m.abs();
                if a <= m_max {
                    let x = 0.5 * m as f64 * delta;
                    let sinc = if m == 0 { 1.0 } else { x.sin() / x };
                    s += h[a as usize] * sinc.powi(4);
                } else if extra < EXPLICIT_ALIASES {
                    tail += far(a as f64);
                    extra += 1;
                } else {
                    // decreasing terms spaced N apart: the rest is below (1/N)∫_a^∞
                    let a = a as f64;
                    tail += 2.0 * PI * 16.0 / delta.powi(4) * (1.0 / (2.0 * a * a) + sigma / (3.0 * a * a * a)) / n as f64;
                    break;
                }
                m += dir * nn;
            }
        }
        s += (0.5 * j as f64 * delta).sin().powi(4) * tail;
        total += s * e;
    }
    Ok(total)
}

/// Trace-norm bounds: the disk against the annulus across the σ-grid, and the
/// trace norm of finite-element fields against their energy.
pub fn cmd_trace(cfg: &SweepConfig) -> Result<SweepReport> {
    let mut rep = SweepReport::new("trace", grid_label(cfg));
    let parts = cfg
        .sigma_grid
        .par_iter()
        .map(|&s| -> Result<Vec<Record>> {
            let disk = Geo::Disk.weights(s, cfg.kmax, cfg.rho)?;
            let ann = Geo::AnnulusStd.weights(s, cfg.kmax, cfg.rho)?;
            let ext = Geo::ExteriorDisk.weights(s, cfg.kmax, cfg.rho)?;
            let mut rows = Vec::new();
            for k in 0..=cfg.kmax {
                rows.push(Record::ratio("tr_annulus", "disk|annulus_std", s, k as i64, disk[k].sqrt(), ann[k].sqrt()));
                rows.push(Record::info("tr_exterior_2d", "disk|exterior_disk", s, k as i64, disk[k].sqrt(), ext[k].sqrt()));
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;
    rep.extend(parts.into_iter().flatten());

    let h = cfg.h;
    let kmax = FEM_MODES.min(cfg.kmax as i64);
    let meshes = FEM_SIGMAS
        .iter()
        .map(|&s| mesh_disk_graded(h, boundary_layer_factor(s)))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, i64)> = (0..FEM_SIGMAS.len()).flat_map(|i| (0..=kmax).map(move |k| (i, k))).collect();
    let parts = jobs
        .par_iter()
        .map(|&(i, k)| -> Result<Vec<Record>> {
            let (s, mesh) = (FEM_SIGMAS[i], &meshes[i]);
            let hk = Geo::Disk.weights(s, k as usize, cfg.rho)?[k as usize];
            let sol = solve_min_extension(mesh, &FourierTrace::mode(k), s, Variant::Standard)?;
            let t_min = piecewise_linear_trace_norm_sq(&sol.field, s)?;
            let harm = FemField::from_fn(mesh, |x, y| Complex64::new(x, y).powi(k as i32));
            let e_harm = fem_energy(&harm, s)?;
            let t_harm = piecewise_linear_trace_norm_sq(&harm, s)?;
            Ok(vec![
                Record::bound("tr_fem_minimal", "disk", s, k, t_min.sqrt(), sol.energy.sqrt(), 0.0).with_h(h),
                Record::bound("tr_fem_harmonic", "disk", s, k, t_harm.sqrt(), e_harm.sqrt(), 0.0).with_h(h),
                Record::info("tr_fem_gap", "disk", s, k, sol.energy, hk).with_h(h),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    rep.extend(parts.into_iter().flatten());

    rep.measure("C_tr", "tr_annulus", "disk|annulus_std", Extremum::Max);
    rep.measure("max_tr_exterior_2d", "tr_exterior_2d", "disk|exterior_disk", Extremum::Max);
    rep.measure("max_fem_energy_over_spectral", "tr_fem_gap", "disk", Extremum::Max);
    Ok(rep)
}

fn disk_label(h: f64) -> String {
    format!("disk_h{h}")
}

/// Finite-element minimal extensions on refined meshes against the spectral values.
pub fn cmd_fem_validate(cfg: &SweepConfig) -> Result<SweepReport> {
    let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
    let grid = format!("h[{}] sigma[{}] k<={FEM_MODES} rho={}", list(&REFINEMENT), list(&FEM_SIGMAS), cfg.rho);
    let mut rep = SweepReport::new("fem-validate", grid);
    let spectral: Vec<Vec<f64>> =
        FEM_SIGMAS.iter().map(|&s| Geo::Disk.weights(s, FEM_MODES as usize, cfg.rho)).collect::<Result<_>>()?;
    let meshes: Vec<(f64, usize, Mesh)> = REFINEMENT
        .iter()
        .flat_map(|&h| FEM_SIGMAS.iter().enumerate().map(move |(i, &s)| (h, i, s)))
        .map(|(h, i, s)| Ok((h, i, mesh_disk_graded(h, boundary_layer_factor(s))?)))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, i64)> = (0..meshes.len()).flat_map(|m| (0..=FEM_MODES).map(move |k| (m, k))).collect();
    let energies = jobs
        .par_iter()
        .map(|&(m, k)| {
            let (_, i, mesh) = &meshes[m];
            Ok(solve_min_extension(mesh, &FourierTrace::mode(k), FEM_SIGMAS[*i], Variant::Standard)?.energy)
        })
        .collect::<Result<Vec<f64>>>()?;

    let gap = |m: usize, k: i64| {
        let (_, i, _) = meshes[m];
        let e = energies[m * (FEM_MODES as usize + 1) + k as usize];
        (e, e / spectral[i][k as usize] - 1.0)
    };
    for (m, &(h, i, _)) in meshes.iter().enumerate() {
        let s = FEM_SIGMAS[i];
        for k in 0..=FEM_MODES {
            let (e, _) = gap(m, k);
            let exact = spectral[i][k as usize];
            let label = disk_label(h);
            rep.rows.push(Record::bound("fem_upper", &label, s, k, exact, e, 0.0).with_h(h));
            rep.rows.push(Record::info("fem_gap", &label, s, k, e, exact).with_h(h));
        }
    }
    let per_h = FEM_SIGMAS.len();
    for step in 1..REFINEMENT.len() {
        let label = format!("disk_h{}_to_h{}", REFINEMENT[step - 1], REFINEMENT[step]);
        for i in 0..per_h {
            for k in 0..=FEM_MODES {
                let (_, coarse) = gap((step - 1) * per_h + i, k);
                let (_, fine) = gap(step * per_h + i, k);
                rep.rows.push(
                    Record::bound("fem_contraction", &label, FEM_SIGMAS[i], k, fine, coarse, 0.0)
                        .with_h(REFINEMENT[step]),
                );
            }
        }
    }

    let fine = *REFINEMENT.last().expect("nonempty");
    let mesh = mesh_disk_graded(fine, 1.0)?;
    let zero = solve_min_extension(&mesh, &FourierTrace::zeros(0), 1.0, Variant::Standard)?;
    rep.rows.push(Record::equal("fem_zero", "disk", 1.0, 0, zero.energy, 0.0, 0.0).with_h(fine));

    let rho = cfg.rho;
    let ann = mesh_annulus(rho, fine)?;
    let label = format!("annulus_rho{rho}");
    for (variant, s, check) in [(Variant::Alternative, 1e-4, "fem_annulus_alt"), (Variant::Standard, 1.0, "fem_annulus_std")] {
        let exact = annulus_mode(0, Weight::new(s)?, rho, variant)?;
        let e = solve_min_extension(&ann, &FourierTrace::mode(0), s, variant)?.energy;
        rep.rows.push(Record::bound(check, &label, s, 0, exact, e, 0.0).with_h(fine));
        if variant == Variant::Alternative {
            rep.rows.push(Record::info("fem_capacity", &label, s, 0, e, 2.0 * PI / (1.0 / rho).ln()).with_h(fine));
        }
    }

    for &h in &REFINEMENT {
        rep.measure("max_energy_ratio", "fem_gap", &disk_label(h), Extremum::Max);
    }
    for step in 1..REFINEMENT.len() {
        let label = format!("disk_h{}_to_h{}", REFINEMENT[step - 1], REFINEMENT[step]);
        rep.measure("worst_gap_ratio", "fem_contraction", &label, Extremum::Max);
    }
    Ok(rep)
}
