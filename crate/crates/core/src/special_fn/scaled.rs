use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex number stored as `mant * 2^exp2`, so that long products of
/// Bessel ratios neither overflow nor underflow before the final result is
/// requested. The mantissa is kept with `|mant|` in `[0.5, 1)` when nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    mant: Complex64,
    exp2: i64,
}

impl Scaled {
    pub fn new(value: Complex64) -> Self {
        Self { mant: value, exp2: 0 }.normalized()
    }

    /// `e^z` without forming the possibly overflowing real exponential.
    pub fn exp(z: Complex64) -> Self {
        let k = (z.re / std::f64::consts::LN_2).floor();
        let frac = z.re - k * std::f64::consts::LN_2;
        let mant = Complex64::from_polar(frac.exp(), z.im);
        Self { mant, exp2: k as i64 }.normalized()
    }

    fn normalized(self) -> Self {
        let m = self.mant.norm();
        if m == 0.0 || !m.is_finite() {
            return Self { mant: self.mant, exp2: if m == 0.0 { 0 } else { self.exp2 } };
        }
        let e = m.log2().floor() as i64 + 1;
        let mant = self.mant * 2f64.powi(-(e as i32));
        Self { mant, exp2: self.exp2 + e }
    }

    pub fn is_zero(&self) -> bool {
        self.mant == Complex64::new(0.0, 0.0)
    }

    /// Converts to an ordinary complex number; errors if the modulus is not
    /// representable as a normal `f64`.
    pub fn to_complex(&self) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(self.mant);
        }
        if !self.mant.re.is_finite() || !self.mant.im.is_finite() {
            return Err(Error::Range("non-finite value".into()));
        }
        if self.exp2 > 1023 {
            return Err(Error::Range(format!("value overflows (|v| ~ 2^{})", self.exp2)));
        }
        if self.exp2 < -1021 {
            return Err(Error::Range(format!("value underflows (|v| ~ 2^{})", self.exp2)));
        }
        Ok(self.mant * 2f64.powi(self.exp2 as i32))
    }

    /// Like [`to_complex`](Self::to_complex) but flushes underflow to zero;
    /// for quantities that are summed against O(1) terms.
    pub fn to_complex_flush(&self) -> Complex64 {
        if self.exp2 < -1070 {
            return Complex64::new(0.0, 0.0);
        }
        if self.exp2 > 1023 {
            return Complex64::new(f64::INFINITY, f64::INFINITY);
        }
        let half = self.exp2 / 2;
        self.mant * 2f64.powi(half as i32) * 2f64.powi((self.exp2 - half) as i32)
    }
}

impl std::ops::Mul for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Scaled) -> Scaled {
        Scaled { mant: self.mant * rhs.mant, exp2: self.exp2 + rhs.exp2 }.normalized()
    }
}

impl std::ops::Mul<Complex64> for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Complex64) -> Scaled {
        Scaled { mant: self.mant * rhs, exp2: self.exp2 }.normalized()
    }
}

impl std::ops::Div for Scaled {
    type Output = Scaled;
    fn div(self, rhs: Scaled) -> Scaled {
        Scaled { mant: self.mant / rhs.mant, exp2: self.exp2 - rhs.exp2 }.normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_round_trips_in_range() {
        let z = Complex64::new(3.7, -1.2);
        let v = Scaled::exp(z).to_complex().unwrap();
        assert!((v - z.exp()).norm() < 1e-14 * z.exp().norm());
    }

    #[test]
    fn large_exponents_cancel_in_products() {
        let big = Scaled::exp(Complex64::new(5000.0, 0.3));
        let small = Scaled::exp(Complex64::new(-5000.0, -0.3));
        assert!(big.to_complex().is_err());
        let p = (big * small).to_complex().unwrap();
        assert!((p - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn underflow_is_a_range_error() {
        let tiny = Scaled::exp(Complex64::new(-800.0, 0.0));
        assert!(matches!(tiny.to_complex(), Err(Error::Range(_))));
        assert_eq!(tiny.to_complex_flush(), Complex64::new(0.0, 0.0));
    }
}
