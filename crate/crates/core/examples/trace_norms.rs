//! Weighted trace norms of a few boundary functions on the unit circle.

use helmtrace::extension_spectral::{min_ext_norm, ExtensionProfile, Geometry, Variant};
use helmtrace::trace_spaces::{FourierTrace, Weight};
use num_complex::Complex64;

fn main() -> helmtrace::error::Result<()> {
    let mut g = FourierTrace::zeros(8);
    g.set(0, Complex64::new(1.0, 0.0));
    g.set(3, Complex64::new(0.0, 0.5));
    g.set(-8, Complex64::new(0.25, 0.0));
    println!("{:>10} {:>14} {:>14} {:>14}", "sigma", "disk", "exterior", "annulus 0.5");
    for sigma in [1e-3, 1e-1, 1.0, 10.0, 1e3] {
        let w = Weight::new(sigma)?;
        let norm = |geometry| -> helmtrace::error::Result<f64> {
            min_ext_norm(&g, &ExtensionProfile::new(geometry, w, Variant::Standard, 8)?)
        };
        println!(
            "{sigma:>10.0e} {:>14.6} {:>14.6} {:>14.6}",
            norm(Geometry::DiskInterior)?,
            norm(Geometry::DiskExterior)?,
            norm(Geometry::annulus(0.5))?
        );
    }
    Ok(())
}
