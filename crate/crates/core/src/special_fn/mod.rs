//! Modified Bessel functions of integer order for complex argument with
//! positive real part, and the modified spherical Bessel functions.
//!
//! Regimes for `I_k`/`K_k`: ascending series for `|z| ≤ 2`, Miller backward
//! recurrence (normalised by `I_0 + 2ΣI_k = e^z`) together with the Temme
//! continued fraction for K up to `|z| = 2000`, Hankel expansions beyond.
//! The radii live in [`Switchover`] and are checked by [`switchover_scan`].

mod cylindrical;
pub(crate) mod scaled;
mod spherical;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use cylindrical::{BesselRow, CrossProducts};
pub use spherical::SphericalRow;

pub const MAX_CYL_ORDER: usize = 256;
pub const MAX_SPH_ORDER: usize = 128;

/// A Bessel argument: `Re z > 0` and `|z|` inside the supported window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(Complex64);

impl ComplexArg {
    pub const MIN_MODULUS: f64 = 1e-8;
    pub const MAX_MODULUS: f64 = 1e6;

    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re > 0.0) || !z.im.is_finite() {
            return Err(Error::Domain(format!("argument {z} must have positive real part")));
        }
        let r = z.norm();
        if !(Self::MIN_MODULUS..=Self::MAX_MODULUS).contains(&r) {
            return Err(Error::Domain(format!(
                "|z| = {r:e} outside [{:e}, {:e}]",
                Self::MIN_MODULUS,
                Self::MAX_MODULUS
            )));
        }
        Ok(Self(z))
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }
}

impl TryFrom<Complex64> for ComplexArg {
    type Error = Error;
    fn try_from(z: Complex64) -> Result<Self> {
        Self::new(z)
    }
}

impl TryFrom<f64> for ComplexArg {
    type Error = Error;
    fn try_from(x: f64) -> Result<Self> {
        Self::real(x)
    }
}

/// Radii at which the cylindrical evaluation changes method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Switchover {
    pub series_radius: f64,
    pub asymptotic_radius: f64,
}

impl Switchover {
    pub const DEFAULT: Switchover = Switchover { series_radius: 2.0, asymptotic_radius: 2000.0 };
}

impl Default for Switchover {
    fn default() -> Self {
        Self::DEFAULT
    }
}

fn cap_cyl(order: usize) -> Result<()> {
    if order > MAX_CYL_ORDER {
        return Err(Error::Domain(format!("order {order} exceeds cap {MAX_CYL_ORDER}")));
    }
    Ok(())
}

fn cap_sph(l: usize) -> Result<()> {
    if l > MAX_SPH_ORDER {
        return Err(Error::Domain(format!("degree {l} exceeds cap {MAX_SPH_ORDER}")));
    }
    Ok(())
}

/// `I_order(z)`. Range error if the value does not fit in an `f64`.
pub fn bessel_i(order: usize, z: ComplexArg) -> Result<Complex64> {
    cap_cyl(order)?;
    BesselRow::new(z, order)?.i(order)
}

/// `K_order(z)`. Range error if the value does not fit in an `f64`.
pub fn bessel_k(order: usize, z: ComplexArg) -> Result<Complex64> {
    cap_cyl(order)?;
    BesselRow::new(z, order)?.k(order)
}

/// `I'_order(z) / I_order(z)`.
pub fn log_deriv_i(order: usize, z: ComplexArg) -> Result<Complex64> {
    cap_cyl(order)?;
    Ok(BesselRow::new(z, order)?.log_deriv_i(order))
}

/// `K'_order(z) / K_order(z)`.
pub fn log_deriv_k(order: usize, z: ComplexArg) -> Result<Complex64> {
    cap_cyl(order)?;
    Ok(BesselRow::new(z, order)?.log_deriv_k(order))
}

/// `I_k K_k`, `I'_k K_k`, `I_k K'_k`, `I'_k K'_k` at `z`; finite throughout the window.
pub fn cross_products(order: usize, z: ComplexArg) -> Result<CrossProducts> {
    cap_cyl(order)?;
    Ok(BesselRow::new(z, order)?.cross(order))
}

pub fn sph_i(l: usize, z: ComplexArg) -> Result<Complex64> {
    cap_sph(l)?;
    SphericalRow::new(z, l)?.i(l)
}

pub fn sph_k(l: usize, z: ComplexArg) -> Result<Complex64> {
    cap_sph(l)?;
    SphericalRow::new(z, l)?.k(l)
}

pub fn sph_log_deriv_i(l: usize, z: ComplexArg) -> Result<Complex64> {
    cap_sph(l)?;
    Ok(SphericalRow::new(z, l)?.log_deriv_i(l))
}

pub fn sph_log_deriv_k(l: usize, z: ComplexArg) -> Result<Complex64> {
    cap_sph(l)?;
    Ok(SphericalRow::new(z, l)?.log_deriv_k(l))
}

/// Result of comparing adjacent evaluation methods on both sides of each radius.
#[derive(Debug, Clone)]
pub struct SwitchoverReport {
    pub worst_jump: f64,
    pub worst_z: Complex64,
    pub worst_order: usize,
    pub quantity: &'static str,
    pub tolerance: f64,
}

impl SwitchoverReport {
    pub fn passed(&self) -> bool {
        self.worst_jump <= self.tolerance
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    if d == 0.0 {
        0.0
    } else {
        d / a.norm().max(b.norm())
    }
}

fn rel_scaled(a: scaled::Scaled, b: scaled::Scaled) -> f64 {
    let q = (a / b).to_complex_flush();
    (q - 1.0).norm()
}

/// Evaluates every order up to `kmax` just inside and just outside each
/// switchover radius of `sw` (and of the spherical `i_0` formula), over a fan
/// of phases, and reports the largest relative discrepancy.
pub fn switchover_scan(sw: &Switchover, kmax: usize) -> Result<SwitchoverReport> {
    let mut rep = SwitchoverReport {
        worst_jump: 0.0,
        worst_z: Complex64::new(0.0, 0.0),
        worst_order: 0,
        quantity: "",
        tolerance: 1e-10,
    };
    let mut note = |jump: f64, z: Complex64, k: usize, what: &'static str| {
        if !(jump <= rep.worst_jump) {
            rep.worst_jump = if jump.is_nan() { f64::INFINITY } else { jump };
            rep.worst_z = z;
            rep.worst_order = k;
            rep.quantity = what;
        }
    };
    let phases: Vec<f64> = (0..=30).map(|j| -1.52 + 3.04 * j as f64 / 30.0).collect();
    let nudge = 1e-9;
    let below_series = Switchover { series_radius: sw.series_radius * (1.0 + nudge), ..*sw };
    let above_series = Switchover { series_radius: sw.series_radius * (1.0 - nudge), ..*sw };
    let below_asym = Switchover { asymptotic_radius: sw.asymptotic_radius * (1.0 + nudge), ..*sw };
    let above_asym = Switchover { asymptotic_radius: sw.asymptotic_radius * (1.0 - nudge), ..*sw };
    for (radius, lo, hi) in [
        (sw.series_radius, below_series, above_series),
        (sw.asymptotic_radius, below_asym, above_asym),
    ] {
        for &ph in &phases {
            let z = ComplexArg::new(Complex64::from_polar(radius, ph))?;
            let a = BesselRow::with_switchover(z, kmax, &lo)?;
            let b = BesselRow::with_switchover(z, kmax, &hi)?;
            for k in 0..=kmax {
                note(rel_scaled(a.i_scaled(k), b.i_scaled(k)), z.value(), k, "I");
                note(rel_scaled(a.k_scaled(k), b.k_scaled(k)), z.value(), k, "K");
                note(rel(a.log_deriv_i(k), b.log_deriv_i(k)), z.value(), k, "I'/I");
                note(rel(a.log_deriv_k(k), b.log_deriv_k(k)), z.value(), k, "K'/K");
            }
        }
    }
    for &ph in &phases {
        let z = Complex64::from_polar(spherical::SPH_SERIES_RADIUS, ph);
        let s = scaled::Scaled::new(spherical::i0_series(z));
        note(rel_scaled(s, spherical::i0_closed(z)), z, 0, "i_0");
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arg(re: f64, im: f64) -> ComplexArg {
        ComplexArg::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn rejects_left_half_plane_and_window() {
        assert!(matches!(ComplexArg::new(Complex64::new(0.0, 1.0)), Err(Error::Domain(_))));
        assert!(matches!(ComplexArg::new(Complex64::new(-1.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(ComplexArg::real(1e-9), Err(Error::Domain(_))));
        assert!(matches!(ComplexArg::real(2e6), Err(Error::Domain(_))));
        assert!(matches!(bessel_i(257, arg(1.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(sph_k(129, arg(1.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn tiny_argument_leading_term() {
        let v = bessel_i(0, arg(1e-8, 0.0)).unwrap();
        assert!((v - 1.0).norm() <= 1e-15);
    }

    #[test]
    fn default_switchover_is_smooth() {
        let rep = switchover_scan(&Switchover::DEFAULT, 64).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn corrupted_series_radius_is_detected() {
        let bad = Switchover { series_radius: 40.0, ..Switchover::DEFAULT };
        let rep = switchover_scan(&bad, 8).unwrap();
        assert!(!rep.passed(), "{rep:?}");
    }

    #[test]
    fn overflow_is_a_range_error() {
        assert!(matches!(bessel_i(0, arg(1e5, 0.0)), Err(Error::Range(_))));
        assert!(matches!(bessel_k(0, arg(1e5, 0.0)), Err(Error::Range(_))));
        // the product stays representable
        let c = cross_products(3, arg(1e5, 0.0)).unwrap();
        assert!((c.ik * 2e5 - 1.0).norm() < 1e-4);
    }
}
