//! Finite-element minimal extension on the disk against the spectral value.

use std::f64::consts::PI;

use helmtrace::extension_spectral::{dtn_disk, Variant};
use helmtrace::fem_oracle::{boundary_layer_factor, mesh_disk_graded, solve_min_extension};
use helmtrace::trace_spaces::{FourierTrace, Weight};

fn main() -> helmtrace::error::Result<()> {
    for sigma in [0.1, 1.0, 100.0] {
        let mesh = mesh_disk_graded(0.05, boundary_layer_factor(sigma))?;
        for k in [0, 2, 4] {
            let sol = solve_min_extension(&mesh, &FourierTrace::mode(k), sigma, Variant::Standard)?;
            let exact = 2.0 * PI * dtn_disk(k, Weight::new(sigma)?)?;
            println!(
                "sigma = {sigma:<5} k = {k}  fem {:.8}  exact {:.8}  gap {:.3}%  ({} CG steps)",
                sol.energy,
                exact,
                100.0 * (sol.energy / exact - 1.0),
                sol.iterations
            );
        }
    }
    Ok(())
}
