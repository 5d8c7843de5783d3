//! Boundary data as coefficient vectors and the diagonal trace norms built on them.
//!
//! Circle traces use `e_k(θ) = e^{ikθ}`, so `‖e_k‖² = 2π`; sphere traces are
//! zonal and use the orthonormal `Y_{l0}`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extension_spectral::Geometry;
use crate::quadrature::{integrate, Tolerance};

pub const MAX_GAGLIARDO_MODE: usize = 4096;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Fourier coefficients `c_k`, `k = -K..=K`, of a function on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierTrace {
    max_mode: usize,
    coeffs: Vec<Complex64>,
}

impl FourierTrace {
    pub fn zeros(max_mode: usize) -> Self {
        Self { max_mode, coeffs: vec![ZERO; 2 * max_mode + 1] }
    }

    /// Coefficients listed from `k = -K` to `k = K`.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::Domain("coefficient vector must have odd length 2K+1".into()));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Domain("non-finite trace coefficient".into()));
        }
        Ok(Self { max_mode: coeffs.len() / 2, coeffs })
    }

    /// The single mode `e_k`.
    pub fn mode(k: i64) -> Self {
        let mut g = Self::zeros(k.unsigned_abs() as usize);
        g.set(k, Complex64::new(1.0, 0.0));
        g
    }

    pub fn constant(value: Complex64) -> Self {
        Self { max_mode: 0, coeffs: vec![value] }
    }

    pub fn max_mode(&self) -> usize {
        self.max_mode
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        if k.unsigned_abs() as usize > self.max_mode {
            return ZERO;
        }
        self.coeffs[(k + self.max_mode as i64) as usize]
    }

    pub fn set(&mut self, k: i64, value: Complex64) {
        assert!(k.unsigned_abs() as usize <= self.max_mode, "mode {k} beyond K = {}", self.max_mode);
        let idx = (k + self.max_mode as i64) as usize;
        self.coeffs[idx] = value;
    }

    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let kk = self.max_mode as i64;
        self.coeffs.iter().enumerate().map(move |(i, c)| (i as i64 - kk, *c))
    }

    pub fn padded(&self, max_mode: usize) -> Self {
        let mut g = Self::zeros(max_mode.max(self.max_mode));
        for (k, c) in self.modes() {
            g.set(k, c);
        }
        g
    }

    /// `g(2πj/N)` for `j = 0..N`.
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|j| {
                let th = 2.0 * PI * j as f64 / n as f64;
                self.modes().map(|(k, c)| c * Complex64::from_polar(1.0, k as f64 * th)).sum()
            })
            .collect()
    }

    /// Plain-text form: one line `k re im` per mode.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.modes() {
            let _ = writeln!(out, "{k} {:e} {:e}", c.re, c.im);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, c) = parse_mode_line(line, n + 1)?;
            entries.push((k, c));
        }
        let kmax = entries.iter().map(|(k, _)| k.unsigned_abs() as usize).max().unwrap_or(0);
        let mut g = Self::zeros(kmax);
        for (k, c) in entries {
            g.set(k, c);
        }
        Ok(g)
    }
}

fn parse_mode_line(line: &str, lineno: usize) -> Result<(i64, Complex64)> {
    let bad = |msg: &str| Error::Parse { line: lineno, msg: msg.to_string() };
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(bad("expected three fields: k re im"));
    }
    let k: i64 = fields[0].parse().map_err(|_| bad("mode index is not an integer"))?;
    let re: f64 = fields[1].parse().map_err(|_| bad("real part is not a number"))?;
    let im: f64 = fields[2].parse().map_err(|_| bad("imaginary part is not a number"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad("non-finite coefficient"));
    }
    Ok((k, Complex64::new(re, im)))
}

/// Zonal coefficients `c_l`, `l = 0..=L`, on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalTrace {
    coeffs: Vec<Complex64>,
}

impl SphericalTrace {
    pub fn zeros(max_degree: usize) -> Self {
        Self { coeffs: vec![ZERO; max_degree + 1] }
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("empty coefficient vector".into()));
        }
        if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::Domain("non-finite trace coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn degree(l: usize) -> Self {
        let mut g = Self::zeros(l);
        g.coeffs[l] = Complex64::new(1.0, 0.0);
        g
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, l: usize) -> Complex64 {
        self.coeffs.get(l).copied().unwrap_or(ZERO)
    }

    pub fn degrees(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.coeffs.iter().copied().enumerate()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (l, c) in self.degrees() {
            let _ = writeln!(out, "{l} {:e} {:e}", c.re, c.im);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (l, c) = parse_mode_line(line, n + 1)?;
            if l < 0 {
                return Err(Error::Parse { line: n + 1, msg: "negative degree".into() });
            }
            entries.push((l as usize, c));
        }
        let lmax = entries.iter().map(|(l, _)| *l).max().unwrap_or(0);
        let mut g = Self::zeros(lmax);
        for (l, c) in entries {
            g.coeffs[l] = c;
        }
        Ok(g)
    }
}

/// Which boundary a trace or profile lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Circle,
    Sphere,
}

/// Common view of circle and sphere traces: `|k|`-indexed squared magnitudes.
pub trait BoundaryTrace {
    fn boundary(&self) -> Boundary;
    fn max_index(&self) -> usize;
    /// `Σ_{|k| = n} |c_k|²`.
    fn shell_energy(&self, n: usize) -> f64;
    /// Squared L² norm of the function on the boundary.
    fn l2_norm_sq(&self) -> f64;
}

impl BoundaryTrace for FourierTrace {
    fn boundary(&self) -> Boundary {
        Boundary::Circle
    }
    fn max_index(&self) -> usize {
        self.max_mode
    }
    fn shell_energy(&self, n: usize) -> f64 {
        let k = n as i64;
        if n == 0 {
            self.coeff(0).norm_sqr()
        } else {
            self.coeff(k).norm_sqr() + self.coeff(-k).norm_sqr()
        }
    }
    fn l2_norm_sq(&self) -> f64 {
        2.0 * PI * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }
}

impl BoundaryTrace for SphericalTrace {
    fn boundary(&self) -> Boundary {
        Boundary::Sphere
    }
    fn max_index(&self) -> usize {
        self.max_degree()
    }
    fn shell_energy(&self, n: usize) -> f64 {
        self.coeff(n).norm_sqr()
    }
    fn l2_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Real weight `σ > 0` with `σ_low = min{1, σ}` and `σ_high = max{1, 1/σ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weight {
    sigma: f64,
}

impl Weight {
    pub const MIN: f64 = 1e-6;
    pub const MAX: f64 = 1e6;

    pub fn new(sigma: f64) -> Result<Self> {
        if !(Self::MIN..=Self::MAX).contains(&sigma) {
            return Err(Error::Domain(format!("weight σ = {sigma:e} outside [1e-6, 1e6]")));
        }
        Ok(Self { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn low(&self) -> f64 {
        self.sigma.min(1.0)
    }

    pub fn high(&self) -> f64 {
        1.0 / self.low()
    }

    /// `max{1, σ}`, the weight at which upper bounds are taken.
    pub fn at_least_one(&self) -> Weight {
        Weight { sigma: self.sigma.max(1.0) }
    }

    /// The product `σ · min{1, σ}` multiplying the L² term.
    pub fn l2_factor(&self) -> f64 {
        self.sigma * self.low()
    }
}

/// Complex wavenumber `s`, `Re s > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavenumber {
    s: Complex64,
}

impl Wavenumber {
    pub fn new(s: Complex64) -> Result<Self> {
        if !(s.re > 0.0) || !s.im.is_finite() {
            return Err(Error::Domain(format!("wavenumber {s} must have positive real part")));
        }
        Ok(Self { s })
    }

    pub fn from_polar(modulus: f64, phase: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(modulus, phase))
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    pub fn sigma(&self) -> f64 {
        self.s.norm()
    }

    /// Coercivity ratio `Re s / |s|`.
    pub fn rho(&self) -> f64 {
        self.s.re / self.s.norm()
    }
}

/// `|e_k|²_{H^{1/2}}` on the unit circle: `4π²|k|`.
pub fn gagliardo_eigen_circle(k: i64) -> f64 {
    assert!(k.unsigned_abs() as usize <= MAX_GAGLIARDO_MODE, "mode {k} beyond cap");
    4.0 * PI * PI * k.unsigned_abs() as f64
}

/// `E_l(t) = (1 - P_l(t)) / (1 - t)`, a polynomial of degree `l - 1`.
fn legendre_defect(l: usize, t: f64) -> f64 {
    if l == 0 {
        return 0.0;
    }
    let mut prev = 0.0;
    let mut cur = 1.0;
    for n in 1..l {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * (1.0 + t * cur) - nf * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Gagliardo eigenvalue `Λ_l` of the zonal harmonic of degree `l` on the unit sphere,
/// `π ∫_0^π (1 - P_l(cos γ)) cos(γ/2) / sin²(γ/2) dγ = 2π ∫_0^π E_l(cos γ) cos(γ/2) dγ`.
pub fn gagliardo_eigen_sphere(l: usize) -> Result<f64> {
    if l > crate::special_fn::MAX_SPH_ORDER {
        return Err(Error::Domain(format!("degree {l} beyond cap")));
    }
    if l == 0 {
        return Ok(0.0);
    }
    let tol = Tolerance { abs_tol: 0.0, rel_tol: 1e-10, max_intervals: 4000 };
    let est = integrate(|g| legendre_defect(l, g.cos()) * (0.5 * g).cos(), 0.0, PI, tol)?;
    Ok(2.0 * PI * est.value)
}

/// Norm family a diagonal profile represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormLabel {
    /// Minimal extension norm (Neumann on the rest of the boundary).
    HD,
    /// Minimal extension norm with zero Dirichlet data on the rest of the boundary.
    HDAlt,
    /// Gagliardo seminorm plus `σ min{1,σ}` times the L² norm.
    GD,
    HN,
    HNAlt,
}

/// Per-mode weights `λ_n` of a trace norm that is diagonal in the boundary basis:
/// `‖g‖² = Σ_n λ_n Σ_{|k|=n} |c_k|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalNormProfile {
    pub label: NormLabel,
    pub boundary: Boundary,
    pub geometry: Option<Geometry>,
    pub sigma: f64,
    weights: Vec<f64>,
}

impl DiagonalNormProfile {
    pub fn new(
        label: NormLabel,
        boundary: Boundary,
        geometry: Option<Geometry>,
        sigma: f64,
        weights: Vec<f64>,
    ) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Domain("profile needs at least one weight".into()));
        }
        if let Some((n, w)) = weights.iter().enumerate().find(|(_, w)| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::Domain(format!("profile weight {n} is {w:e}, must be positive")));
        }
        Ok(Self { label, boundary, geometry, sigma, weights })
    }

    /// GD profile on the circle, `4π²|k| + 2π σ min{1,σ}`.
    pub fn gd_circle(max_mode: usize, w: Weight) -> Self {
        let l2 = 2.0 * PI * w.l2_factor();
        let weights = (0..=max_mode).map(|k| gagliardo_eigen_circle(k as i64) + l2).collect();
        Self { label: NormLabel::GD, boundary: Boundary::Circle, geometry: None, sigma: w.sigma(), weights }
    }

    /// GD profile on the sphere, `Λ_l + σ min{1,σ}`.
    pub fn gd_sphere(max_degree: usize, w: Weight) -> Result<Self> {
        let l2 = w.l2_factor();
        let weights = (0..=max_degree)
            .map(|l| gagliardo_eigen_sphere(l).map(|v| v + l2))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { label: NormLabel::GD, boundary: Boundary::Sphere, geometry: None, sigma: w.sigma(), weights })
    }

    pub fn max_index(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weight(&self, n: usize) -> f64 {
        self.weights[n]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn check<T: BoundaryTrace>(&self, g: &T) -> Result<()> {
        if g.boundary() != self.boundary {
            return Err(Error::Precondition("trace and profile live on different boundaries".into()));
        }
        if g.max_index() > self.max_index() {
            return Err(Error::Precondition(format!(
                "trace has modes up to {}, profile only up to {}",
                g.max_index(),
                self.max_index()
            )));
        }
        Ok(())
    }

    /// `sqrt(Σ λ_n |c_n|²)`.
    pub fn norm<T: BoundaryTrace>(&self, g: &T) -> Result<f64> {
        self.check(g)?;
        Ok((0..=g.max_index()).map(|n| self.weights[n] * g.shell_energy(n)).sum::<f64>().sqrt())
    }
}

/// Weighted Sobolev–Slobodeckij norm: `sqrt(|g|²_{H^{1/2}} + σ min{1,σ} ‖g‖²_{L²})`.
pub fn sobolev_weighted_norm<T: BoundaryTrace>(g: &T, w: Weight) -> Result<f64> {
    let mut sum = w.l2_factor() * g.l2_norm_sq();
    for n in 1..=g.max_index() {
        let e = g.shell_energy(n);
        if e == 0.0 {
            continue;
        }
        let lam = match g.boundary() {
            Boundary::Circle => gagliardo_eigen_circle(n as i64),
            Boundary::Sphere => gagliardo_eigen_sphere(n)?,
        };
        sum += lam * e;
    }
    Ok(sum.sqrt())
}

/// Bilinear pairing `⟨g_N, g_D⟩ = Σ_k 2π d_k c_{-k}` on the circle.
pub fn pairing(g_n: &FourierTrace, g_d: &FourierTrace) -> Complex64 {
    let kk = g_n.max_mode().min(g_d.max_mode()) as i64;
    (-kk..=kk).map(|k| 2.0 * PI * g_n.coeff(k) * g_d.coeff(-k)).sum()
}

/// Dual norm of `g_N` with respect to the diagonal primal profile: exact supremum
/// of `|⟨g_N, g_D⟩| / ‖g_D‖`.
pub fn dual_norm<T: BoundaryTrace>(primal: &DiagonalNormProfile, g_n: &T) -> Result<f64> {
    primal.check(g_n)?;
    let pair_w = match primal.boundary {
        Boundary::Circle => (2.0 * PI) * (2.0 * PI),
        Boundary::Sphere => 1.0,
    };
    Ok((0..=g_n.max_index()).map(|n| pair_w * g_n.shell_energy(n) / primal.weight(n)).sum::<f64>().sqrt())
}

/// Norm on a disjoint union: square root of the sum of the squared component norms.
pub fn decompose_union(parts: &[(&DiagonalNormProfile, &FourierTrace)]) -> Result<f64> {
    let mut sum = 0.0;
    for (p, g) in parts {
        sum += p.norm(*g)?.powi(2);
    }
    Ok(sum.sqrt())
}
