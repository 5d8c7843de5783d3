//! Modified Bessel functions along a row of orders, with the Wronskian as a check.

use helmtrace::special_fn::{BesselRow, ComplexArg};
use num_complex::Complex64;

fn main() -> helmtrace::error::Result<()> {
    for z in [Complex64::new(0.5, 0.0), Complex64::new(20.0, 15.0), Complex64::new(3000.0, -100.0)] {
        let row = BesselRow::new(ComplexArg::new(z)?, 32)?;
        println!("z = {z}");
        for k in [0, 1, 8, 32] {
            let c = row.cross(k);
            let defect = (c.ipk - c.ikp - z.inv()).norm() * z.norm();
            println!("  k = {k:2}  I_k K_k = {:.12e}  K'_k/K_k = {:.6}  Wronskian defect {defect:.1e}", c.ik, row.log_deriv_k(k));
        }
    }
    Ok(())
}
