//! Integer-order modified Bessel functions `I_k`, `K_k` for `Re z > 0`.
//!
//! Every evaluation builds a [`BesselRow`]: `I_0`, `K_0` in [`Scaled`] form
//! plus the order-to-order ratios `I_j/I_{j-1}` and `K_j/K_{j-1}`. Values,
//! log-derivatives and the products `I_k K_k` (which stay O(1/k) even when
//! the factors do not fit in an `f64`) are all read off the row.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::scaled::Scaled;
use super::{ComplexArg, Switchover, MAX_CYL_ORDER};
use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EPS: f64 = 1e-17;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Regime {
    Series,
    Recurrence,
    Asymptotic,
}

impl Regime {
    pub(crate) fn select(z: Complex64, sw: &Switchover) -> Regime {
        let r = z.norm();
        if r <= sw.series_radius {
            Regime::Series
        } else if r <= sw.asymptotic_radius {
            Regime::Recurrence
        } else {
            Regime::Asymptotic
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `I_0` and `I_1` by the ascending series.
pub(crate) fn series_i01(z: Complex64) -> (Complex64, Complex64) {
    let t = z * z / 4.0;
    let mut term0 = c(1.0);
    let mut term1 = z / 2.0;
    let mut s0 = term0;
    let mut s1 = term1;
    for m in 1..2000 {
        let mf = m as f64;
        term0 *= t / (mf * mf);
        term1 *= t / (mf * (mf + 1.0));
        s0 += term0;
        s1 += term1;
        if term0.norm() <= EPS * s0.norm() && term1.norm() <= EPS * s1.norm() {
            break;
        }
    }
    (s0, s1)
}

/// `K_0` and `K_1` by the series with logarithmic term.
pub(crate) fn series_k01(z: Complex64) -> (Complex64, Complex64) {
    let (i0, i1) = series_i01(z);
    let t = z * z / 4.0;
    let lnz2 = (z / 2.0).ln();

    // K_0 = -(ln(z/2) + γ) I_0 + Σ_{m≥1} H_m t^m / (m!)^2
    let mut k0 = -(lnz2 + EULER_GAMMA) * i0;
    // K_1 = 1/z + ln(z/2) I_1 - (z/4) Σ_{m≥0} (H_m + H_{m+1} - 2γ) t^m / (m!(m+1)!)
    let mut sum1 = c(1.0 - 2.0 * EULER_GAMMA);
    let mut p0 = c(1.0);
    let mut p1 = c(1.0);
    let mut harmonic = 0.0;
    for m in 1..2000 {
        let mf = m as f64;
        p0 *= t / (mf * mf);
        p1 *= t / (mf * (mf + 1.0));
        harmonic += 1.0 / mf;
        let t0 = p0 * harmonic;
        let t1 = p1 * (harmonic + harmonic + 1.0 / (mf + 1.0) - 2.0 * EULER_GAMMA);
        k0 += t0;
        sum1 += t1;
        if t0.norm() <= EPS * k0.norm().max(i0.norm()) && t1.norm() <= EPS * sum1.norm() {
            break;
        }
    }
    let k1 = z.inv() + lnz2 * i1 - z / 4.0 * sum1;
    (k0, k1)
}

/// `K_0` and `K_1 / K_0` by Steed's evaluation of the Temme continued fraction.
pub(crate) fn steed_k01(z: Complex64) -> Result<(Scaled, Complex64)> {
    let a1 = 0.25;
    let mut b = 2.0 * (c(1.0) + z);
    let mut d = b.inv();
    let mut h = d;
    let mut delh = d;
    let mut q1 = c(0.0);
    let mut q2 = c(1.0);
    let mut q = c(a1);
    let mut cc = c(a1);
    let mut a = -a1;
    let mut s = c(1.0) + q * delh;
    let mut converged = false;
    for i in 1..100_000 {
        let fi = i as f64;
        a -= 2.0 * fi;
        cc = -cc * a / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += cc * qnew;
        b += 2.0;
        d = (b + a * d).inv();
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < 1e-17 * s.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Solver(format!("K continued fraction did not converge at z = {z}")));
    }
    h *= a1;
    let k0 = Scaled::exp(-z) * ((PI / (2.0 * z)).sqrt() / s);
    let q1_ratio = (z + 0.5 - h) / z;
    Ok((k0, q1_ratio))
}

/// Hankel-type sums `Σ (±1)^k a_k(ν) / z^k` for ν = 0, 1.
fn hankel_sums(z: Complex64, nu: f64) -> (Complex64, Complex64) {
    let mu = 4.0 * nu * nu;
    let zi = z.inv();
    let mut term = c(1.0);
    let mut plus = c(1.0);
    let mut minus = c(1.0);
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= zi * ((mu - odd * odd) / (8.0 * kf));
        let tn = term.norm();
        if tn > last {
            break;
        }
        last = tn;
        plus += term;
        if k % 2 == 0 {
            minus += term;
        } else {
            minus -= term;
        }
        if tn < EPS {
            break;
        }
    }
    (plus, minus)
}

/// `I_0` and `I_1 / I_0` for large `|z|`, including the exponentially small
/// `e^{-z}` contribution that matters close to the imaginary axis.
pub(crate) fn asymptotic_i01(z: Complex64) -> (Scaled, Complex64) {
    let pre = (2.0 * PI * z).sqrt().inv();
    let (p0, m0) = hankel_sums(z, 0.0);
    let (p1, m1) = hankel_sums(z, 1.0);
    let side = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let e2 = (-2.0 * z).exp();
    let i_unit = Complex64::new(0.0, side);
    let b0 = m0 + i_unit * e2 * p0;
    let b1 = m1 - i_unit * e2 * p1;
    (Scaled::exp(z) * (pre * b0), b1 / b0)
}

/// `K_0` and `K_1 / K_0` for large `|z|`.
pub(crate) fn asymptotic_k01(z: Complex64) -> (Scaled, Complex64) {
    let (p0, _) = hankel_sums(z, 0.0);
    let (p1, _) = hankel_sums(z, 1.0);
    let k0 = Scaled::exp(-z) * ((PI / (2.0 * z)).sqrt() * p0);
    (k0, p1 / p0)
}

/// Backward (Miller) recurrence for `r_j = I_j / I_{j-1}`, j = 1..=n, together
/// with `H = Σ_{k≥1} I_k / I_0` for the normalisation `I_0 + 2 Σ I_k = e^z`.
pub(crate) fn miller_ratios(z: Complex64, n: usize) -> (Vec<Complex64>, Complex64) {
    let r = z.norm();
    let start = n.max(r.ceil() as usize) + 40 + (2.0 * r.sqrt()).ceil() as usize;
    let zi = z.inv();
    let mut ratios = vec![c(0.0); n + 1];
    let mut rj = c(0.0);
    let mut hsum = c(0.0);
    for j in (1..=start).rev() {
        rj = (2.0 * j as f64 * zi + rj).inv();
        hsum = rj * (1.0 + hsum);
        if j <= n {
            ratios[j] = rj;
        }
    }
    (ratios, hsum)
}

/// `K_0` and `K_1/K_0` by the method attached to `regime`.
pub(crate) fn k01_by(z: Complex64, regime: Regime) -> Result<(Scaled, Complex64)> {
    match regime {
        Regime::Series => {
            let (k0, k1) = series_k01(z);
            Ok((Scaled::new(k0), k1 / k0))
        }
        Regime::Recurrence => steed_k01(z),
        Regime::Asymptotic => Ok(asymptotic_k01(z)),
    }
}

/// Products `I_k K_k`, `I'_k K_k`, `I_k K'_k`, `I'_k K'_k` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossProducts {
    pub ik: Complex64,
    pub ipk: Complex64,
    pub ikp: Complex64,
    pub ipkp: Complex64,
}

/// All orders `0..=kmax` of `I_k(z)` and `K_k(z)` at a single argument.
#[derive(Debug, Clone)]
pub struct BesselRow {
    z: Complex64,
    kmax: usize,
    // r[j] = I_j / I_{j-1}, j = 1..=kmax+1
    r: Vec<Complex64>,
    // q[j] = K_j / K_{j-1}, j = 1..=max(kmax, 1)
    q: Vec<Complex64>,
    i_vals: Vec<Scaled>,
    k_vals: Vec<Scaled>,
}

impl BesselRow {
    pub fn new(z: ComplexArg, kmax: usize) -> Result<Self> {
        Self::with_switchover(z, kmax, &Switchover::DEFAULT)
    }

    pub fn with_switchover(z: ComplexArg, kmax: usize, sw: &Switchover) -> Result<Self> {
        if kmax > MAX_CYL_ORDER {
            return Err(Error::Domain(format!("order {kmax} exceeds cap {MAX_CYL_ORDER}")));
        }
        let z = z.value();
        let zi = z.inv();
        let regime = Regime::select(z, sw);

        let (r, i0) = match regime {
            Regime::Asymptotic => {
                let (i0, r1) = asymptotic_i01(z);
                let mut r = vec![c(0.0); kmax + 2];
                r[1] = r1;
                for j in 1..=kmax {
                    r[j + 1] = r[j].inv() - 2.0 * j as f64 * zi;
                }
                (r, i0)
            }
            _ => {
                let (r, h) = miller_ratios(z, kmax + 1);
                let i0 = if regime == Regime::Series {
                    Scaled::new(series_i01(z).0)
                } else {
                    Scaled::exp(z) * (1.0 + 2.0 * h).inv()
                };
                (r, i0)
            }
        };

        let (k0, q1) = k01_by(z, regime)?;
        let mut q = vec![c(0.0); kmax.max(1) + 1];
        q[1] = q1;
        for j in 1..kmax {
            q[j + 1] = q[j].inv() + 2.0 * j as f64 * zi;
        }

        let mut i_vals = Vec::with_capacity(kmax + 1);
        let mut k_vals = Vec::with_capacity(kmax + 1);
        i_vals.push(i0);
        k_vals.push(k0);
        for j in 1..=kmax {
            i_vals.push(i_vals[j - 1] * r[j]);
            k_vals.push(k_vals[j - 1] * q[j]);
        }
        Ok(Self { z, kmax, r, q, i_vals, k_vals })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    fn check(&self, k: usize) {
        assert!(k <= self.kmax, "order {k} beyond row length {}", self.kmax);
    }

    pub(crate) fn i_scaled(&self, k: usize) -> Scaled {
        self.check(k);
        self.i_vals[k]
    }

    pub(crate) fn k_scaled(&self, k: usize) -> Scaled {
        self.check(k);
        self.k_vals[k]
    }

    pub fn i(&self, k: usize) -> Result<Complex64> {
        self.i_scaled(k).to_complex()
    }

    pub fn k(&self, k: usize) -> Result<Complex64> {
        self.k_scaled(k).to_complex()
    }

    /// `I'_k(z) / I_k(z) = k/z + I_{k+1}/I_k`.
    pub fn log_deriv_i(&self, k: usize) -> Complex64 {
        self.check(k);
        k as f64 / self.z + self.r[k + 1]
    }

    /// `K'_k(z) / K_k(z)`, from `K'_k = -K_{k-1} - (k/z) K_k` (and `K'_0 = -K_1`).
    pub fn log_deriv_k(&self, k: usize) -> Complex64 {
        self.check(k);
        if k == 0 {
            -self.q[1]
        } else {
            -self.q[k].inv() - k as f64 / self.z
        }
    }

    pub fn cross(&self, k: usize) -> CrossProducts {
        let ik = (self.i_scaled(k) * self.k_scaled(k)).to_complex_flush();
        let li = self.log_deriv_i(k);
        let lk = self.log_deriv_k(k);
        CrossProducts { ik, ipk: ik * li, ikp: ik * lk, ipkp: ik * li * lk }
    }
}
