//! Layer-operator eigenvalues on the circle and the continuity bounds at one wavenumber.

use helmtrace::layer_ops::{check_continuity_bounds, disk_profile, layer_spectrum, BoundName, Operator};
use helmtrace::trace_spaces::Wavenumber;

fn main() -> helmtrace::error::Result<()> {
    let s = Wavenumber::from_polar(5.0, 1.2)?;
    let spec = layer_spectrum(s, 32)?;
    for k in [0i64, 1, 8, 32] {
        println!(
            "k = {k:2}  V = {:.6e}  K = {:.6e}  W = {:.6e}",
            spec.eigenvalue(Operator::V, k),
            spec.eigenvalue(Operator::K, k),
            spec.eigenvalue(Operator::W, k)
        );
    }
    let rep = check_continuity_bounds(&spec, &disk_profile(s, 32)?)?;
    for b in BoundName::ALL {
        let w = rep.worst_for(b).expect("every bound has rows");
        println!("{:<24} worst at k = {:2}, margin {:.3e}", b.as_str(), w.k, w.margin);
    }
    println!("violations: {}", rep.violations().count());
    Ok(())
}
