//! The H^{1/2} seminorm on the circle by direct quadrature against the Fourier value,
//! and the two-arc splitting inequality.

use std::f64::consts::PI;

use helmtrace::gagliardo_quad::{gagliardo_circle, split_inequality_check, Arc, CircleSamples};
use helmtrace::trace_spaces::gagliardo_eigen_circle;
use num_complex::Complex64;

fn main() -> helmtrace::error::Result<()> {
    for k in [1i64, 4, 16] {
        let g = CircleSamples::from_fn(512, |t| Complex64::from_polar(1.0, k as f64 * t))?;
        println!("k = {k:2}  quadrature {:.12}  eigenvalue {:.12}", gagliardo_circle(&g)?, gagliardo_eigen_circle(k));
    }
    let arcs = [Arc { start: 0.0, end: 0.75 * PI }, Arc { start: PI, end: 1.75 * PI }];
    let rep = split_inequality_check(arcs, |t| Complex64::new(if t < PI { 1.0 } else { 0.0 }, 0.0), 64)?;
    println!(
        "split: parts {:?}  full {:.6}  measured C {:.4}  bound {:.4}",
        rep.seminorm_parts, rep.seminorm_full, rep.c_spl, rep.c_bound
    );
    Ok(())
}
