//! Per-mode weights of the minimal-extension norms on the disk, ball and their exteriors.

use helmtrace::extension_spectral::{ExtensionProfile, Geometry, Variant};
use helmtrace::trace_spaces::Weight;

fn main() -> helmtrace::error::Result<()> {
    let geometries = [Geometry::DiskInterior, Geometry::DiskExterior, Geometry::BallInterior, Geometry::BallExterior];
    for sigma in [1e-4, 1.0, 1e2] {
        println!("sigma = {sigma:e}");
        for g in geometries {
            let p = ExtensionProfile::new(g, Weight::new(sigma)?, Variant::Standard, 16)?;
            let w: Vec<String> = [0, 1, 4, 16].iter().map(|&n| format!("{:.5e}", p.weight_at(n))).collect();
            println!("  {:<16} {}", g.name(), w.join("  "));
        }
    }
    Ok(())
}
