use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use helmtrace::harness::{run_and_write, Command, Overrides, SweepConfig};

/// Wavenumber-weighted trace norm experiments.
#[derive(Debug, Parser)]
#[command(name = "helmtrace", version)]
struct Cli {
    /// selftest | characterize | scaling | compare | extension-sets | trace | bio | fem-validate
    command: Command,
    /// `key = value` settings file
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    sigma_min: Option<f64>,
    #[arg(long)]
    sigma_max: Option<f64>,
    #[arg(long)]
    sigma_points: Option<usize>,
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    rho: Option<f64>,
    /// output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ov = Overrides {
        sigma_min: cli.sigma_min,
        sigma_max: cli.sigma_max,
        sigma_points: cli.sigma_points,
        kmax: cli.kmax,
        h: cli.h,
        rho: cli.rho,
        out: cli.out,
    };
    let cfg = match &cli.config {
        Some(path) => SweepConfig::load(path, &ov),
        None => SweepConfig::from_overrides(&ov),
    };
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            eprintln!("helmtrace: {e}");
            return ExitCode::FAILURE;
        }
    };
    let start = Instant::now();
    match run_and_write(cli.command, &cfg) {
        Ok(rep) => {
            print!("{}", rep.summary());
            println!("  wrote {}/{}.csv in {:.2} s", cfg.out.display(), rep.experiment, start.elapsed().as_secs_f64());
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("helmtrace {}: {e}", cli.command);
            ExitCode::FAILURE
        }
    }
}
