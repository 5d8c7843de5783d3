//! Named experiments over σ- and s-grids. Each produces a [`SweepReport`]
//! whose rows are written to `<out>/<command>.csv` and whose measured
//! constants go to `<out>/constants.csv`.

mod bio;
mod config;
mod fem;
mod report;
mod selftest;
mod spectral;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use bio::cmd_bio;
pub use config::{log_grid, Overrides, SweepConfig};
pub use fem::{cmd_fem_validate, cmd_trace, piecewise_linear_trace_norm_sq, FEM_SIGMAS};
pub use report::{num, Constant, Extremum, Kind, Record, SweepReport};
pub use selftest::{cmd_selftest, wronskian_points, WRONSKIAN_POINTS, WRONSKIAN_TOL};
pub use spectral::{cmd_characterize, cmd_compare, cmd_extension_sets, cmd_scaling, Geo, COUNTEREXAMPLE_SIGMAS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Selftest,
    Characterize,
    Scaling,
    Compare,
    ExtensionSets,
    Trace,
    Bio,
    FemValidate,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Selftest,
        Command::Characterize,
        Command::Scaling,
        Command::Compare,
        Command::ExtensionSets,
        Command::Trace,
        Command::Bio,
        Command::FemValidate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Selftest => "selftest",
            Command::Characterize => "characterize",
            Command::Scaling => "scaling",
            Command::Compare => "compare",
            Command::ExtensionSets => "extension-sets",
            Command::Trace => "trace",
            Command::Bio => "bio",
            Command::FemValidate => "fem-validate",
        }
    }

    pub fn run(self, cfg: &SweepConfig) -> Result<SweepReport> {
        match self {
            Command::Selftest => cmd_selftest(cfg),
            Command::Characterize => cmd_characterize(cfg),
            Command::Scaling => cmd_scaling(cfg),
            Command::Compare => cmd_compare(cfg),
            Command::ExtensionSets => cmd_extension_sets(cfg),
            Command::Trace => cmd_trace(cfg),
            Command::Bio => cmd_bio(cfg),
            Command::FemValidate => cmd_fem_validate(cfg),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown command `{s}`")))
    }
}

/// Runs `cmd`, writes both CSV files into `cfg.out` and returns the report.
pub fn run_and_write(cmd: Command, cfg: &SweepConfig) -> Result<SweepReport> {
    let rep = cmd.run(cfg)?;
    rep.write(&cfg.out)?;
    Ok(rep)
}

fn grid_label(cfg: &SweepConfig) -> String {
    let lo = cfg.sigma_grid.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = cfg.sigma_grid.iter().cloned().fold(0.0, f64::max);
    format!("sigma[{lo:e};{hi:e};{}] kmax={} rho={} h={}", cfg.sigma_grid.len(), cfg.kmax, cfg.rho, cfg.h)
}
