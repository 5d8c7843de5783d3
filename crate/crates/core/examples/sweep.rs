//! A small characterisation sweep, written as CSV into a temporary directory.

use helmtrace::harness::{run_and_write, Command, Overrides, SweepConfig};

fn main() -> helmtrace::error::Result<()> {
    let out = std::env::temp_dir().join("helmtrace-sweep");
    let ov = Overrides { sigma_points: Some(9), kmax: Some(16), out: Some(out.clone()), ..Default::default() };
    let cfg = SweepConfig::from_overrides(&ov)?;
    for cmd in [Command::Characterize, Command::Scaling] {
        let rep = run_and_write(cmd, &cfg)?;
        print!("{}", rep.summary());
    }
    println!("csv files in {}", out.display());
    Ok(())
}
