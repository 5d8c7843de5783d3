use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;

/// What a row claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// `lhs ≤ rhs`, up to a relative slack.
    Bound,
    /// `lhs/rhs` feeds a measured constant; the row passes when the ratio is finite and positive.
    Ratio,
    /// Recorded only.
    Info,
}

impl Kind {
    fn as_str(self) -> &'static str {
        match self {
            Kind::Bound => "bound",
            Kind::Ratio => "ratio",
            Kind::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub check: String,
    pub kind: Kind,
    pub geometry: String,
    /// `|s|`, which is `σ` for real weights.
    pub sigma: f64,
    /// `arg s`, zero for real weights.
    pub phase: f64,
    pub k: i64,
    /// Mesh size for finite-element rows.
    pub h: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub pass: bool,
}

impl Record {
    pub const BOUND_SLACK: f64 = 1e-12;

    fn base(check: &str, kind: Kind, geometry: &str, sigma: f64, k: i64, lhs: f64, rhs: f64) -> Self {
        Self {
            check: check.to_string(),
            kind,
            geometry: geometry.to_string(),
            sigma,
            phase: 0.0,
            k,
            h: None,
            lhs,
            rhs,
            ratio: if lhs == rhs { 1.0 } else { lhs / rhs },
            pass: true,
        }
    }

    /// `lhs ≤ rhs (1 + slack)`.
    pub fn bound(check: &str, geometry: &str, sigma: f64, k: i64, lhs: f64, rhs: f64, slack: f64) -> Self {
        let mut r = Self::base(check, Kind::Bound, geometry, sigma, k, lhs, rhs);
        r.pass = lhs <= rhs + slack * rhs.abs();
        r
    }

    /// `|lhs - rhs| ≤ tol |rhs|`.
    pub fn equal(check: &str, geometry: &str, sigma: f64, k: i64, lhs: f64, rhs: f64, tol: f64) -> Self {
        let mut r = Self::base(check, Kind::Bound, geometry, sigma, k, lhs, rhs);
        r.pass = (lhs - rhs).abs() <= tol * rhs.abs();
        r
    }

    pub fn ratio(check: &str, geometry: &str, sigma: f64, k: i64, lhs: f64, rhs: f64) -> Self {
        let mut r = Self::base(check, Kind::Ratio, geometry, sigma, k, lhs, rhs);
        r.pass = r.ratio.is_finite() && r.ratio > 0.0;
        r
    }

    pub fn info(check: &str, geometry: &str, sigma: f64, k: i64, lhs: f64, rhs: f64) -> Self {
        Self::base(check, Kind::Info, geometry, sigma, k, lhs, rhs)
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }

    pub fn with_h(mut self, h: f64) -> Self {
        self.h = Some(h);
        self
    }

    /// `1 - lhs/rhs` for bound rows.
    pub fn margin(&self) -> Option<f64> {
        (self.kind == Kind::Bound).then(|| 1.0 - self.ratio)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Max,
    Min,
}

/// A measured constant: an extremum of `ratio` over the rows of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct Constant {
    pub name: String,
    pub check: String,
    pub geometry: String,
    pub extremum: Extremum,
    pub value: f64,
    pub rows: usize,
    pub grid: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub experiment: String,
    pub grid: String,
    pub rows: Vec<Record>,
    pub constants: Vec<Constant>,
}

const HEADER: &str = "check,kind,geometry,sigma,phase,k,h,lhs,rhs,ratio,pass";
const CONSTANTS_HEADER: &str = "experiment,constant,check,geometry,extremum,value,rows,grid";

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

impl SweepReport {
    pub fn new(experiment: &str, grid: String) -> Self {
        Self { experiment: experiment.to_string(), grid, rows: Vec::new(), constants: Vec::new() }
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Record>) {
        self.rows.extend(rows);
    }

    pub fn rows_for<'a>(&'a self, check: &'a str, geometry: &'a str) -> impl Iterator<Item = &'a Record> + 'a {
        self.rows.iter().filter(move |r| r.check == check && r.geometry == geometry)
    }

    /// Records the extremum of `ratio` over the rows of `check` on `geometry` as `name`.
    /// Rows with a non-finite ratio are skipped; they already fail on their own.
    pub fn measure(&mut self, name: &str, check: &str, geometry: &str, extremum: Extremum) -> Option<f64> {
        let vals = self.rows_for(check, geometry).map(|r| r.ratio).filter(|v| v.is_finite());
        let (value, rows) = vals.fold((None::<f64>, 0usize), |(acc, n), v| {
            let next = match (acc, extremum) {
                (None, _) => v,
                (Some(a), Extremum::Max) => a.max(v),
                (Some(a), Extremum::Min) => a.min(v),
            };
            (Some(next), n + 1)
        });
        let value = value?;
        self.constants.push(Constant {
            name: name.to_string(),
            check: check.to_string(),
            geometry: geometry.to_string(),
            extremum,
            value,
            rows,
            grid: self.grid.clone(),
        });
        Some(value)
    }

    pub fn constant(&self, name: &str, geometry: &str) -> Option<f64> {
        self.constants.iter().find(|c| c.name == name && c.geometry == geometry).map(|c| c.value)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// The bound row with the smallest `1 - lhs/rhs`.
    pub fn worst_margin(&self) -> Option<(&Record, f64)> {
        self.rows
            .iter()
            .filter_map(|r| r.margin().filter(|m| m.is_finite()).map(|m| (r, m)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(128 * (self.rows.len() + 1));
        out.push_str(HEADER);
        out.push('\n');
        for r in &self.rows {
            let h = r.h.map(num).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.check,
                r.kind.as_str(),
                r.geometry,
                num(r.sigma),
                num(r.phase),
                r.k,
                h,
                num(r.lhs),
                num(r.rhs),
                num(r.ratio),
                r.pass
            );
        }
        out
    }

    pub fn constants_csv(&self) -> String {
        let mut out = String::from(CONSTANTS_HEADER);
        out.push('\n');
        for c in &self.constants {
            let ext = match c.extremum {
                Extremum::Max => "max",
                Extremum::Min => "min",
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                self.experiment,
                c.name,
                c.check,
                c.geometry,
                ext,
                num(c.value),
                c.rows,
                c.grid
            );
        }
        out
    }

    /// Writes `<dir>/<experiment>.csv` and `<dir>/constants.csv`.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        fs::create_dir_all(dir)?;
        let rows = dir.join(format!("{}.csv", self.experiment));
        let consts = dir.join("constants.csv");
        fs::write(&rows, self.to_csv())?;
        // keep constants of other experiments already in the directory
        let mut text = self.constants_csv();
        if let Ok(prev) = fs::read_to_string(&consts) {
            let tag = format!("{},", self.experiment);
            let kept: Vec<&str> = prev.lines().skip(1).filter(|l| !l.starts_with(&tag)).collect();
            let mut merged = String::from(CONSTANTS_HEADER);
            merged.push('\n');
            for l in kept {
                merged.push_str(l);
                merged.push('\n');
            }
            merged.push_str(&text[CONSTANTS_HEADER.len() + 1..]);
            text = merged;
        }
        fs::write(&consts, text)?;
        Ok((rows, consts))
    }

    /// A few human-readable lines: counts, worst margin, constants, first failures.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let fails = self.failures().count();
        let _ = writeln!(out, "{}: {} rows, {} failed", self.experiment, self.rows.len(), fails);
        if let Some((r, m)) = self.worst_margin() {
            let _ = writeln!(out, "  worst margin {m:.3e} ({} on {}, σ = {:e}, k = {})", r.check, r.geometry, r.sigma, r.k);
        }
        for c in &self.constants {
            let _ = writeln!(out, "  {} [{}] = {:.6e}", c.name, c.geometry, c.value);
        }
        for r in self.failures().take(10) {
            let _ = writeln!(
                out,
                "  FAIL {} on {}: σ = {:e}, phase = {}, k = {}, lhs = {:e}, rhs = {:e}",
                r.check, r.geometry, r.sigma, r.phase, r.k, r.lhs, r.rhs
            );
        }
        out
    }
}
