use std::f64::consts::PI;

use rayon::prelude::*;

use super::config::SweepConfig;
use super::grid_label;
use super::report::{Extremum, Record, SweepReport};
use crate::error::Result;
use crate::extension_spectral::{ExtensionProfile, Geometry, Variant};
use crate::trace_spaces::{gagliardo_eigen_circle, gagliardo_eigen_sphere, Weight};

/// Model extension sets of the unit circle or sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geo {
    Disk,
    AnnulusStd,
    AnnulusAlt,
    ExteriorDisk,
    Ball,
    ExteriorBall,
}

impl Geo {
    pub const ALL: [Geo; 6] = [Geo::Disk, Geo::AnnulusStd, Geo::AnnulusAlt, Geo::ExteriorDisk, Geo::Ball, Geo::ExteriorBall];

    pub fn name(self) -> &'static str {
        match self {
            Geo::Disk => "disk",
            Geo::AnnulusStd => "annulus_std",
            Geo::AnnulusAlt => "annulus_alt",
            Geo::ExteriorDisk => "exterior_disk",
            Geo::Ball => "ball",
            Geo::ExteriorBall => "exterior_ball",
        }
    }

    pub fn is_sphere(self) -> bool {
        matches!(self, Geo::Ball | Geo::ExteriorBall)
    }

    pub fn is_exterior(self) -> bool {
        matches!(self, Geo::ExteriorDisk | Geo::ExteriorBall)
    }

    /// The same set with zero Dirichlet data on the rest of its boundary.
    /// Sets whose boundary is Γ alone are unchanged.
    pub fn alternative(self) -> Geo {
        match self {
            Geo::AnnulusStd => Geo::AnnulusAlt,
            g => g,
        }
    }

    /// Per-mode weights `h_k`, `k = 0..=kmax`.
    pub fn weights(self, sigma: f64, kmax: usize, rho: f64) -> Result<Vec<f64>> {
        let (geometry, variant) = match self {
            Geo::Disk => (Geometry::DiskInterior, Variant::Standard),
            Geo::AnnulusStd => (Geometry::annulus(rho), Variant::Standard),
            Geo::AnnulusAlt => (Geometry::annulus(rho), Variant::Alternative),
            Geo::ExteriorDisk => (Geometry::DiskExterior, Variant::Standard),
            Geo::Ball => (Geometry::BallInterior, Variant::Standard),
            Geo::ExteriorBall => (Geometry::BallExterior, Variant::Standard),
        };
        Ok(ExtensionProfile::new(geometry, Weight::new(sigma)?, variant, kmax)?.profile.weights().to_vec())
    }
}

/// Gagliardo eigenvalues for the boundary of `geo`, computed once per sweep.
struct Eigen {
    circle: Vec<f64>,
    sphere: Vec<f64>,
}

impl Eigen {
    fn new(kmax: usize) -> Result<Self> {
        Ok(Self {
            circle: (0..=kmax).map(|k| gagliardo_eigen_circle(k as i64)).collect(),
            sphere: (0..=kmax).map(gagliardo_eigen_sphere).collect::<Result<_>>()?,
        })
    }

    /// `GD` weight at `σ`: the Gagliardo eigenvalue plus the L² term in the boundary basis.
    fn gd(&self, geo: Geo, k: usize, sigma: f64) -> f64 {
        let l2 = sigma * sigma.min(1.0);
        if geo.is_sphere() {
            self.sphere[k] + l2
        } else {
            self.circle[k] + 2.0 * PI * l2
        }
    }
}

fn sweep<F>(cfg: &SweepConfig, f: F) -> Result<Vec<Record>>
where
    F: Fn(f64) -> Result<Vec<Record>> + Sync,
{
    let parts = cfg.sigma_grid.par_iter().map(|&s| f(s)).collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// σ values of the two-dimensional exterior counterexample.
pub const COUNTEREXAMPLE_SIGMAS: [f64; 5] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

/// Two-sided comparison of every minimal-extension norm with the Gagliardo norm.
pub fn cmd_characterize(cfg: &SweepConfig) -> Result<SweepReport> {
    let mut rep = SweepReport::new("characterize", grid_label(cfg));
    let eig = Eigen::new(cfg.kmax)?;
    let rows = sweep(cfg, |s| {
        let hi = s.max(1.0);
        let mut rows = Vec::new();
        for geo in Geo::ALL {
            let h = geo.weights(s, cfg.kmax, cfg.rho)?;
            let name = geo.name();
            for (k, &hk) in h.iter().enumerate() {
                let ki = k as i64;
                let nd = hk.sqrt();
                let gd = eig.gd(geo, k, s).sqrt();
                let gd_hi = eig.gd(geo, k, hi).sqrt();
                // lower and upper halves of the intrinsic-norm chains
                let lower = if geo == Geo::AnnulusAlt { gd_hi } else { gd };
                rows.push(Record::ratio("rel_lower", name, s, ki, lower, nd));
                rows.push(Record::ratio("rel_upper", name, s, ki, nd, gd_hi));
                match geo {
                    Geo::Disk | Geo::AnnulusStd | Geo::Ball => rows.push(Record::ratio("char", name, s, ki, nd, gd)),
                    Geo::ExteriorBall => rows.push(Record::ratio("char", name, s, ki, nd, gd_hi)),
                    Geo::ExteriorDisk => rows.push(Record::info("char_2d", name, s, ki, nd, gd_hi)),
                    Geo::AnnulusAlt => {}
                }
                if geo == Geo::ExteriorBall && k == 0 {
                    rows.push(Record::equal("constant_ratio", name, s, 0, hk / hi, (1.0 + s) / hi, 1e-10));
                }
            }
        }
        Ok(rows)
    })?;
    rep.extend(rows);

    // h_0/(2π) on the exterior of the disk as σ → 0
    let mut prev: Option<f64> = None;
    let first = Geo::ExteriorDisk.weights(COUNTEREXAMPLE_SIGMAS[0], 0, cfg.rho)?[0] / (2.0 * PI);
    for &s in &COUNTEREXAMPLE_SIGMAS {
        let v = Geo::ExteriorDisk.weights(s, 0, cfg.rho)?[0] / (2.0 * PI);
        rep.rows.push(Record::info("exterior_2d_mode0", Geo::ExteriorDisk.name(), s, 0, v, 1.0));
        if let Some(p) = prev {
            rep.rows.push(Record::bound("exterior_2d_decreasing", Geo::ExteriorDisk.name(), s, 0, v, p, -1e-14));
        }
        prev = Some(v);
    }
    let last = prev.expect("nonempty");
    rep.rows.push(Record::bound(
        "exterior_2d_halved",
        Geo::ExteriorDisk.name(),
        COUNTEREXAMPLE_SIGMAS[4],
        0,
        last,
        0.5 * first,
        0.0,
    ));

    for geo in Geo::ALL {
        let g = geo.name();
        rep.measure("C_rel_lower", "rel_lower", g, Extremum::Max);
        rep.measure("C_rel_upper", "rel_upper", g, Extremum::Max);
        if rep.measure("C_char_high", "char", g, Extremum::Max).is_some() {
            rep.measure("C_char_low", "char", g, Extremum::Min);
        }
    }
    rep.measure("char_2d_max", "char_2d", Geo::ExteriorDisk.name(), Extremum::Max);
    rep.measure("char_2d_min", "char_2d", Geo::ExteriorDisk.name(), Extremum::Min);
    Ok(rep)
}

/// Per-mode scaling of the norms in the weight, relative to `σ = 1`.
pub fn cmd_scaling(cfg: &SweepConfig) -> Result<SweepReport> {
    let mut rep = SweepReport::new("scaling", grid_label(cfg));
    let at_one: Vec<Vec<f64>> = Geo::ALL.iter().map(|g| g.weights(1.0, cfg.kmax, cfg.rho)).collect::<Result<_>>()?;
    let rows = sweep(cfg, |s| {
        let low = s.min(1.0);
        let mut rows = Vec::new();
        for (geo, h1) in Geo::ALL.iter().zip(&at_one) {
            let h = geo.weights(s, cfg.kmax, cfg.rho)?;
            let name = geo.name();
            for (k, (&hk, &h1k)) in h.iter().zip(h1).enumerate() {
                let ki = k as i64;
                let (n, n1) = (hk.sqrt(), h1k.sqrt());
                rows.push(Record::bound("scaling_lower", name, s, ki, low * n1, n, Record::BOUND_SLACK));
                rows.push(Record::bound("scaling_upper", name, s, ki, n, s.max(1.0) * n1, Record::BOUND_SLACK));
                if s > 1.0 {
                    rows.push(Record::ratio("scaling_sqrt", name, s, ki, n, s.sqrt() * n1));
                }
                match geo {
                    Geo::ExteriorBall | Geo::AnnulusAlt => rows.push(Record::ratio("scaling_reverse", name, s, ki, n1, n)),
                    Geo::ExteriorDisk => rows.push(Record::info("scaling_reverse_2d", name, s, ki, n1, n)),
                    _ => {}
                }
            }
        }
        Ok(rows)
    })?;
    rep.extend(rows);
    for geo in Geo::ALL {
        rep.measure("C_sc", "scaling_sqrt", geo.name(), Extremum::Max);
    }
    rep.measure("C_sc_reverse", "scaling_reverse", Geo::ExteriorBall.name(), Extremum::Max);
    rep.measure("C_sc_reverse", "scaling_reverse", Geo::AnnulusAlt.name(), Extremum::Max);
    rep.measure("reverse_2d_max", "scaling_reverse_2d", Geo::ExteriorDisk.name(), Extremum::Max);
    Ok(rep)
}

/// Standard against alternative norm on the annulus, and the constant-function sharpness row.
pub fn cmd_compare(cfg: &SweepConfig) -> Result<SweepReport> {
    let mut rep = SweepReport::new("compare", grid_label(cfg));
    let name = "annulus";
    let rows = sweep(cfg, |s| {
        let hi = s.max(1.0);
        let std = Geo::AnnulusStd.weights(s, cfg.kmax, cfg.rho)?;
        let alt = Geo::AnnulusAlt.weights(s, cfg.kmax, cfg.rho)?;
        let std_hi = Geo::AnnulusStd.weights(hi, cfg.kmax, cfg.rho)?;
        let mut rows = Vec::new();
        for k in 0..=cfg.kmax {
            let ki = k as i64;
            let (a, b, c) = (std[k].sqrt(), alt[k].sqrt(), std_hi[k].sqrt());
            rows.push(Record::bound("std_le_alt", name, s, ki, a, b, Record::BOUND_SLACK));
            rows.push(Record::ratio("cmp", name, s, ki, b, c));
            rows.push(Record::bound("cmp_chain", name, s, ki, c, a / s.min(1.0), Record::BOUND_SLACK));
        }
        if s <= 1.0 {
            rows.push(Record::ratio("sharpness", name, s, 0, std[0].sqrt() / alt[0].sqrt(), s));
        }
        Ok(rows)
    })?;
    rep.extend(rows);
    rep.measure("C_cmp", "cmp", name, Extremum::Max);
    rep.measure("C_sharp", "sharpness", name, Extremum::Max);
    rep.measure("sharp_min", "sharpness", name, Extremum::Min);
    Ok(rep)
}

/// Ratios between norms from different extension sets of the same Γ.
pub fn cmd_extension_sets(cfg: &SweepConfig) -> Result<SweepReport> {
    use Geo::*;
    let mut rep = SweepReport::new("extension-sets", grid_label(cfg));
    // (check, ω̃ norm, Ω norm, Ω at max{1,σ}); the ω̃ side is already the alternative norm where the item says so
    let circle: [(&str, Geo, Geo, bool); 18] = [
        ("eq_main", Disk, Disk, true),
        ("eq_main", Disk, AnnulusStd, true),
        ("eq_main", Disk, ExteriorDisk, true),
        ("eq_main", AnnulusAlt, Disk, true),
        ("eq_main", AnnulusAlt, AnnulusStd, true),
        ("eq_main", AnnulusAlt, ExteriorDisk, true),
        ("eq_main", ExteriorDisk, Disk, true),
        ("eq_main", ExteriorDisk, AnnulusStd, true),
        ("eq_main", ExteriorDisk, ExteriorDisk, true),
        ("eq_i", Disk, AnnulusStd, false),
        ("eq_i", Disk, ExteriorDisk, false),
        ("eq_i", AnnulusStd, Disk, false),
        ("eq_i", AnnulusStd, ExteriorDisk, false),
        ("eq_iii", Disk, AnnulusAlt, false),
        ("eq_iii", ExteriorDisk, AnnulusAlt, false),
        ("eq_iii", AnnulusAlt, AnnulusAlt, false),
        ("eq_ii_2d", Disk, ExteriorDisk, false),
        ("eq_ii_2d", AnnulusAlt, ExteriorDisk, false),
    ];
    let sphere: [(&str, Geo, Geo, bool); 4] = [
        ("eq_main", Ball, ExteriorBall, true),
        ("eq_main", ExteriorBall, Ball, true),
        ("eq_i", Ball, ExteriorBall, false),
        ("eq_ii", Ball, ExteriorBall, false),
    ];
    let pairs: Vec<_> = circle.iter().chain(sphere.iter()).copied().collect();
    let label = |a: Geo, b: Geo| format!("{}|{}", a.name(), b.name());
    let rows = sweep(cfg, |s| {
        let hi = s.max(1.0);
        let at = |g: Geo, sig: f64| g.weights(sig, cfg.kmax, cfg.rho);
        let mut rows = Vec::new();
        for &(check, tilde, omega, raise) in &pairs {
            let num = at(tilde, s)?;
            let den = at(omega, if raise { hi } else { s })?;
            let g = label(tilde, omega);
            for k in 0..=cfg.kmax {
                let (a, b) = (num[k].sqrt(), den[k].sqrt());
                rows.push(if check == "eq_ii_2d" {
                    Record::info(check, &g, s, k as i64, a, b)
                } else {
                    Record::ratio(check, &g, s, k as i64, a, b)
                });
            }
        }
        Ok(rows)
    })?;
    rep.extend(rows);
    for &(check, tilde, omega, _) in &pairs {
        let g = label(tilde, omega);
        let name = if check.ends_with("_2d") { format!("max_{check}") } else { format!("C_{check}") };
        if rep.constant(&name, &g).is_none() {
            rep.measure(&name, check, &g, Extremum::Max);
        }
    }
    Ok(rep)
}
