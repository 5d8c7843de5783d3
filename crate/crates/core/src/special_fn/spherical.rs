//! Modified spherical Bessel functions `i_l(z) = √(π/2z) I_{l+1/2}(z)` and
//! `k_l(z) = √(π/2z) K_{l+1/2}(z)`, so that `k_0(z) = (π/2z) e^{-z}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::scaled::Scaled;
use super::{ComplexArg, MAX_SPH_ORDER};
use crate::error::{Error, Result};

/// Below this modulus `i_0` is summed as a series instead of `(1 - e^{-2z}) e^z / 2z`.
pub(crate) const SPH_SERIES_RADIUS: f64 = 1.0;

pub(crate) fn i0_series(z: Complex64) -> Complex64 {
    // sinh z / z = Σ z^{2m} / (2m+1)!
    let z2 = z * z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for m in 1..200 {
        let mf = m as f64;
        term *= z2 / ((2.0 * mf) * (2.0 * mf + 1.0));
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

pub(crate) fn i0_closed(z: Complex64) -> Scaled {
    let one = Complex64::new(1.0, 0.0);
    Scaled::exp(z) * ((one - (-2.0 * z).exp()) / (2.0 * z))
}

/// All degrees `0..=lmax` of `i_l(z)` and `k_l(z)` at one argument.
#[derive(Debug, Clone)]
pub struct SphericalRow {
    z: Complex64,
    lmax: usize,
    // p[l] = i_l / i_{l-1}, l = 1..=lmax+1
    p: Vec<Complex64>,
    // q[l] = k_l / k_{l-1}, l = 1..=max(lmax, 1)
    q: Vec<Complex64>,
    i_vals: Vec<Scaled>,
    k_vals: Vec<Scaled>,
}

impl SphericalRow {
    pub fn new(z: ComplexArg, lmax: usize) -> Result<Self> {
        if lmax > MAX_SPH_ORDER {
            return Err(Error::Domain(format!("degree {lmax} exceeds cap {MAX_SPH_ORDER}")));
        }
        let z = z.value();
        let zi = z.inv();

        let n = lmax + 1;
        let r = z.norm();
        let start = n.max(r.ceil() as usize) + 40 + (2.0 * r.sqrt()).ceil() as usize;
        let mut p = vec![Complex64::new(0.0, 0.0); n + 1];
        let mut pj = Complex64::new(0.0, 0.0);
        for l in (1..=start).rev() {
            pj = ((2.0 * l as f64 + 1.0) * zi + pj).inv();
            if l <= n {
                p[l] = pj;
            }
        }
        let i0 = if r <= SPH_SERIES_RADIUS { Scaled::new(i0_series(z)) } else { i0_closed(z) };

        let k0 = Scaled::exp(-z) * (PI / 2.0 * zi);
        let mut q = vec![Complex64::new(0.0, 0.0); lmax.max(1) + 1];
        q[1] = 1.0 + zi;
        for l in 1..lmax {
            q[l + 1] = q[l].inv() + (2.0 * l as f64 + 1.0) * zi;
        }

        let mut i_vals = vec![i0];
        let mut k_vals = vec![k0];
        for l in 1..=lmax {
            i_vals.push(i_vals[l - 1] * p[l]);
            k_vals.push(k_vals[l - 1] * q[l]);
        }
        Ok(Self { z, lmax, p, q, i_vals, k_vals })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    fn check(&self, l: usize) {
        assert!(l <= self.lmax, "degree {l} beyond row length {}", self.lmax);
    }

    pub fn i(&self, l: usize) -> Result<Complex64> {
        self.check(l);
        self.i_vals[l].to_complex()
    }

    pub fn k(&self, l: usize) -> Result<Complex64> {
        self.check(l);
        self.k_vals[l].to_complex()
    }

    /// `i'_l / i_l = l/z + i_{l+1}/i_l`.
    pub fn log_deriv_i(&self, l: usize) -> Complex64 {
        self.check(l);
        l as f64 / self.z + self.p[l + 1]
    }

    /// `k'_l / k_l`, from `k'_l = -k_{l-1} - ((l+1)/z) k_l` (and `k'_0 = -k_1`).
    pub fn log_deriv_k(&self, l: usize) -> Complex64 {
        self.check(l);
        if l == 0 {
            -self.q[1]
        } else {
            -self.q[l].inv() - (l as f64 + 1.0) / self.z
        }
    }

    /// `i_l(z) k_l(z)` as an ordinary number (it is always of moderate size).
    pub fn ik(&self, l: usize) -> Complex64 {
        self.check(l);
        (self.i_vals[l] * self.k_vals[l]).to_complex_flush()
    }
}
