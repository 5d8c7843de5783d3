use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::fem_oracle::{MAX_H, MIN_H};
use crate::layer_ops::MAX_LAYER_MODE;
use crate::special_fn::Switchover;
use crate::trace_spaces::Weight;

/// Grids and settings shared by every experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub sigma_grid: Vec<f64>,
    pub kmax: usize,
    pub phases: Vec<f64>,
    pub h: f64,
    pub rho: f64,
    pub out: PathBuf,
    pub seed: u64,
    /// Radii used by the special-function self checks. Only changed to inject faults.
    pub switchover: Switchover,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let p8 = std::f64::consts::PI / 8.0;
        Self {
            sigma_grid: log_grid(1e-4, 1e4, 25),
            kmax: 64,
            phases: vec![0.0, p8, -p8, 2.0 * p8, -2.0 * p8, 1.45, -1.45],
            h: 0.05,
            rho: 0.5,
            out: PathBuf::from("out"),
            seed: 20240,
            switchover: Switchover::DEFAULT,
        }
    }
}

/// `n` points from `lo` to `hi`, equally spaced in `log10`. The endpoints are hit exactly.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            (0..n)
                .map(|i| match i {
                    0 => lo,
                    i if i == n - 1 => hi,
                    i => 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64),
                })
                .collect()
        }
    }
}

/// Command-line values that replace whatever the file or the defaults say.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub sigma_min: Option<f64>,
    pub sigma_max: Option<f64>,
    pub sigma_points: Option<usize>,
    pub kmax: Option<usize>,
    pub h: Option<f64>,
    pub rho: Option<f64>,
    pub out: Option<PathBuf>,
}

// range of the σ-grid as min, max, count; kept separate so overrides can touch one field
#[derive(Debug, Clone, Copy)]
struct GridSpec {
    min: f64,
    max: f64,
    points: usize,
}

impl SweepConfig {
    /// Parses `key = value` lines. `#` starts a comment. Unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, &Overrides::default())
    }

    pub fn load(path: &Path, ov: &Overrides) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_with(&text, ov)
    }

    pub fn from_overrides(ov: &Overrides) -> Result<Self> {
        Self::parse_with("", ov)
    }

    pub fn parse_with(text: &str, ov: &Overrides) -> Result<Self> {
        let mut cfg = Self::default();
        let mut grid = GridSpec { min: 1e-4, max: 1e4, points: 25 };
        let mut explicit: Option<Vec<f64>> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let line_no = n + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: line_no, msg: format!("expected `key = value`, got `{line}`") })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::Parse { line: line_no, msg: format!("{key}: {what} `{value}`") };
            let num = || value.parse::<f64>().map_err(|_| bad("not a number"));
            let int = || value.parse::<u64>().map_err(|_| bad("not a nonnegative integer"));
            let list = || -> Result<Vec<f64>> {
                value
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<f64>().map_err(|_| bad("not a list of numbers")))
                    .collect()
            };
            match key {
                "sigma_min" => grid.min = num()?,
                "sigma_max" => grid.max = num()?,
                "sigma_points" => grid.points = int()? as usize,
                "sigma_grid" => explicit = Some(list()?),
                "kmax" => cfg.kmax = int()? as usize,
                "phases" => cfg.phases = list()?,
                "h" => cfg.h = num()?,
                "rho" => cfg.rho = num()?,
                "out" => cfg.out = PathBuf::from(value),
                "seed" => cfg.seed = int()?,
                "switchover_series_radius" => cfg.switchover.series_radius = num()?,
                "switchover_asymptotic_radius" => cfg.switchover.asymptotic_radius = num()?,
                _ => return Err(Error::Parse { line: line_no, msg: format!("unknown key `{key}`") }),
            }
        }

        let touched_grid = ov.sigma_min.is_some() || ov.sigma_max.is_some() || ov.sigma_points.is_some();
        grid.min = ov.sigma_min.unwrap_or(grid.min);
        grid.max = ov.sigma_max.unwrap_or(grid.max);
        grid.points = ov.sigma_points.unwrap_or(grid.points);
        cfg.sigma_grid = match explicit {
            Some(list) if !touched_grid => list,
            _ => {
                if !(grid.min > 0.0 && grid.max >= grid.min) {
                    return Err(Error::Config(format!("σ range [{:e}, {:e}] is not a positive interval", grid.min, grid.max)));
                }
                log_grid(grid.min, grid.max, grid.points)
            }
        };
        cfg.kmax = ov.kmax.unwrap_or(cfg.kmax);
        cfg.h = ov.h.unwrap_or(cfg.h);
        cfg.rho = ov.rho.unwrap_or(cfg.rho);
        if let Some(out) = &ov.out {
            cfg.out = out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sigma_grid.is_empty() {
            return Err(Error::Config("σ-grid is empty".into()));
        }
        if let Some(s) = self.sigma_grid.iter().find(|s| !(Weight::MIN..=Weight::MAX).contains(*s)) {
            return Err(Error::Config(format!("σ = {s:e} outside [1e-6, 1e6]")));
        }
        if self.phases.is_empty() {
            return Err(Error::Config("phase grid is empty".into()));
        }
        if let Some(p) = self.phases.iter().find(|p| !(p.abs() < FRAC_PI_2)) {
            return Err(Error::Config(format!("phase {p} not strictly inside (-π/2, π/2)")));
        }
        if !(1..=MAX_LAYER_MODE).contains(&self.kmax) {
            return Err(Error::Config(format!("kmax = {} outside [1, {MAX_LAYER_MODE}]", self.kmax)));
        }
        if !(MIN_H..=MAX_H).contains(&self.h) {
            return Err(Error::Config(format!("h = {} outside [{MIN_H}, {MAX_H}]", self.h)));
        }
        if !(0.05..=0.95).contains(&self.rho) {
            return Err(Error::Config(format!("ρ = {} outside [0.05, 0.95]", self.rho)));
        }
        let sw = self.switchover;
        if !(sw.series_radius > 0.0 && sw.asymptotic_radius > sw.series_radius) {
            return Err(Error::Config("switchover radii must satisfy 0 < series < asymptotic".into()));
        }
        Ok(())
    }

    /// The σ-grid clipped to the window of the layer operators, same point count.
    pub fn modulus_grid(&self) -> Vec<f64> {
        use crate::layer_ops::{MAX_LAYER_MODULUS, MIN_LAYER_MODULUS};
        let lo = self.sigma_grid.iter().cloned().fold(f64::INFINITY, f64::min).max(MIN_LAYER_MODULUS);
        let hi = self.sigma_grid.iter().cloned().fold(0.0, f64::max).min(MAX_LAYER_MODULUS);
        if lo > hi {
            return vec![lo.min(MAX_LAYER_MODULUS)];
        }
        log_grid(lo, hi, self.sigma_grid.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_hits_one() {
        let g = log_grid(1e-4, 1e4, 25);
        assert_eq!(g[12], 1.0);
        assert_eq!(g[0], 1e-4);
        assert_eq!(g[24], 1e4);
    }

    #[test]
    fn parse_and_override() {
        let cfg = SweepConfig::parse_with(
            "# sweep\nkmax = 16\nphases = 0, 0.5\nsigma_grid = 0.1, 1, 10\n",
            &Overrides { rho: Some(0.25), ..Default::default() },
        )
        .unwrap();
        assert_eq!(cfg.kmax, 16);
        assert_eq!(cfg.sigma_grid, vec![0.1, 1.0, 10.0]);
        assert_eq!(cfg.rho, 0.25);
        let cfg = SweepConfig::parse_with("sigma_grid = 0.1, 1", &Overrides { sigma_points: Some(3), ..Default::default() })
            .unwrap();
        assert_eq!(cfg.sigma_grid.len(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(SweepConfig::parse("sigma_points = 0"), Err(Error::Config(_))));
        assert!(matches!(SweepConfig::parse("sigma_grid ="), Err(Error::Config(_))));
        assert!(matches!(SweepConfig::parse("phases = 1.6"), Err(Error::Config(_))));
        assert!(matches!(SweepConfig::parse("nonsense = 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(SweepConfig::parse("\nkmax = x"), Err(Error::Parse { line: 2, .. })));
    }
}
