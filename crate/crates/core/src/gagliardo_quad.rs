//! Direct evaluation of the Gagliardo double integral
//! `∬ |g(x) - g(y)|² / |x - y|^n` on the unit circle and on the real line,
//! without going through the eigenvalue formulas.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn check_len(n: usize) -> Result<()> {
    if n < 64 || !n.is_power_of_two() {
        return Err(Error::Precondition(format!("sample count {n} must be a power of two ≥ 64")));
    }
    Ok(())
}

/// Equispaced samples `g(2πj/N)`, `j = 0..N`, on the unit circle.
#[derive(Debug, Clone)]
pub struct CircleSamples {
    values: Vec<Complex64>,
}

impl CircleSamples {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        check_len(values.len())?;
        Ok(Self { values })
    }

    pub fn from_fn(n: usize, g: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new((0..n).map(|j| g(2.0 * PI * j as f64 / n as f64)).collect())
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Samples `g(x0 + jΔ)` on a uniform grid; `g` must vanish at both ends.
#[derive(Debug, Clone)]
pub struct LineSamples {
    pub x0: f64,
    pub dx: f64,
    values: Vec<Complex64>,
}

impl LineSamples {
    pub fn new(x0: f64, dx: f64, values: Vec<Complex64>) -> Result<Self> {
        check_len(values.len())?;
        if !(dx > 0.0) {
            return Err(Error::Domain("grid spacing must be positive".into()));
        }
        Ok(Self { x0, dx, values })
    }

    pub fn from_fn(x0: f64, dx: f64, n: usize, g: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(x0, dx, (0..n).map(|j| g(x0 + dx * j as f64)).collect())
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Discrete Fourier coefficients `c_k = (1/N) Σ_j g_j e^{-ikθ_j}` in FFT order.
fn coefficients(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    buf.iter_mut().for_each(|c| *c /= n as f64);
    buf
}

fn signed_mode(i: usize, n: usize) -> f64 {
    if i <= n / 2 {
        i as f64
    } else {
        i as f64 - n as f64
    }
}

/// `|g|²_{H^{1/2}}` on the unit circle by the periodic trapezoid rule on the
/// torus, with `|x - y| = 2|sin((θ-φ)/2)|` and the diagonal replaced by its
/// limit `|g'(θ)|²` (spectral derivative). Requires the band limit `K < N/4`.
pub fn gagliardo_circle(g: &CircleSamples) -> Result<f64> {
    let n = g.values.len();
    let c = coefficients(&g.values);
    let peak = c.iter().fold(0.0f64, |m, v| m.max(v.norm()));
    if peak == 0.0 {
        return Ok(0.0);
    }
    let tail = c
        .iter()
        .enumerate()
        .filter(|(i, _)| signed_mode(*i, n).abs() >= (n / 4) as f64)
        .fold(0.0f64, |m, (_, v)| m.max(v.norm()));
    if tail > 1e-12 * peak {
        return Err(Error::Precondition(format!(
            "samples are not band-limited below N/4 (tail {:e} of peak)",
            tail / peak
        )));
    }

    let mut deriv: Vec<Complex64> =
        c.iter().enumerate().map(|(i, ck)| ck * Complex64::new(0.0, signed_mode(i, n))).collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut deriv);

    // kernel weights depend only on the index offset
    let kernel: Vec<f64> = (0..n)
        .map(|m| if m == 0 { 0.0 } else { 1.0 / (4.0 * (PI * m as f64 / n as f64).sin().powi(2)) })
        .collect();
    let vals = &g.values;
    let total: f64 = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = deriv[i].norm_sqr();
            for m in 1..n {
                row += (vals[i] - vals[(i + m) % n]).norm_sqr() * kernel[m];
            }
            row
        })
        .sum();
    let h = 2.0 * PI / n as f64;
    Ok(total * h * h)
}

/// Trigamma `ψ'(x)` for `x ≥ 1`, via upward shift and the asymptotic series.
fn trigamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 20.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let x2 = 1.0 / (x * x);
    acc + 1.0 / x + x2 / 2.0 + (1.0 / 6.0 - x2 * (1.0 / 30.0 - x2 * (1.0 / 42.0 - x2 / 30.0))) / (x * x * x)
}

/// `|g|²_{H^{1/2}(ℝ)} = ∫ D(h)/h² dh` with `D(h) = ∫ |g(x+h) - g(x)|² dx`,
/// by the trapezoid rule in `h` on the sample grid. `D(mΔ)` comes from the
/// discrete autocorrelation; the `h = 0` node uses `‖g'‖²`, and the tail
/// beyond the support, where `D = 2‖g‖²`, is summed in closed form.
pub fn gagliardo_line(g: &LineSamples) -> Result<f64> {
    let n = g.values.len();
    let peak = g.values.iter().fold(0.0f64, |m, v| m.max(v.norm()));
    if peak == 0.0 {
        return Ok(0.0);
    }
    if g.values[0] != ZERO || g.values[n - 1] != ZERO {
        return Err(Error::Precondition("line samples must vanish at both grid ends".into()));
    }
    let dx = g.dx;
    let big = 2 * n;
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(big);
    let inv = planner.plan_fft_inverse(big);

    let mut buf = vec![ZERO; big];
    buf[..n].copy_from_slice(&g.values);
    fwd.process(&mut buf);
    let spectrum = buf.clone();

    // autocorrelation A(m) = Σ_j g_{j+m} conj(g_j)
    let mut auto: Vec<Complex64> = spectrum.iter().map(|v| Complex64::new(v.norm_sqr(), 0.0)).collect();
    inv.process(&mut auto);
    auto.iter_mut().for_each(|v| *v /= big as f64);

    let l2: f64 = dx * g.values.iter().map(|v| v.norm_sqr()).sum::<f64>();
    // spectral derivative on the zero-padded grid
    let mut deriv: Vec<Complex64> = spectrum
        .iter()
        .enumerate()
        .map(|(i, v)| v * Complex64::new(0.0, 2.0 * PI * signed_mode(i, big) / (big as f64 * dx)))
        .collect();
    inv.process(&mut deriv);
    let grad: f64 = dx * deriv.iter().map(|v| (v / big as f64).norm_sqr()).sum::<f64>();

    let mut sum = grad;
    for m in 1..n {
        let d = (2.0 * l2 - 2.0 * dx * auto[m].re).max(0.0);
        let h = m as f64 * dx;
        sum += 2.0 * d / (h * h);
    }
    let tail = 4.0 * l2 / (dx * dx) * trigamma(n as f64);
    Ok(dx * sum + dx * tail)
}

/// One arc `θ ∈ (start, end)` of the unit circle.
#[derive(Debug, Clone, Copy)]
pub struct Arc {
    pub start: f64,
    pub end: f64,
}

impl Arc {
    pub fn length(&self) -> f64 {
        self.end - self.start
    }
}

/// Both sides of the two-component splitting inequality for `Γ = Γ_1 ∪ Γ_2`.
#[derive(Debug, Clone)]
pub struct SplitReport {
    pub seminorm_parts: [f64; 2],
    pub seminorm_full: f64,
    pub l2_sq: f64,
    /// `(full - Σ parts) / ‖g‖²`, the smallest constant that makes the upper bound hold.
    pub c_spl: f64,
    /// `4 max|Γ_j| / d²` with `d` the chord distance between the arcs.
    pub c_bound: f64,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

fn arc_double_integral(a: &Arc, b: &Arc, g: &(dyn Fn(f64) -> Complex64 + Sync), order: usize) -> f64 {
    // orders n and n+1 never share an interior node, so the diagonal is never hit
    let ga = GaussLegendre::new(order);
    let gb = GaussLegendre::new(order + 1);
    let outer: Vec<(f64, f64)> = ga.on(a.start, a.end).collect();
    let inner: Vec<(f64, f64, Complex64)> = gb.on(b.start, b.end).map(|(x, w)| (x, w, g(x))).collect();
    outer
        .par_iter()
        .map(|&(th, wt)| {
            let gt = g(th);
            inner
                .iter()
                .map(|&(ph, wp, gp)| wp * (gt - gp).norm_sqr() / (4.0 * (0.5 * (th - ph)).sin().powi(2)))
                .sum::<f64>()
                * wt
        })
        .sum()
}

fn chord_gap(a: &Arc, b: &Arc) -> f64 {
    let gap1 = b.start - a.end;
    let gap2 = a.start + 2.0 * PI - b.end;
    2.0 * (0.5 * gap1.min(gap2)).sin()
}

/// Checks `Σ_j |g|²_{Γ_j} ≤ |g|²_Γ ≤ Σ_j |g|²_{Γ_j} + C ‖g‖²_{L²(Γ)}` and reports the measured `C`.
/// Arcs must be ordered, lie in `[0, 2π]` and leave gaps of at least `π/8`.
pub fn split_inequality_check(
    arcs: [Arc; 2],
    g: impl Fn(f64) -> Complex64 + Sync,
    order: usize,
) -> Result<SplitReport> {
    let [a, b] = arcs;
    let gaps = [b.start - a.end, a.start + 2.0 * PI - b.end];
    if a.length() <= 0.0 || b.length() <= 0.0 || gaps.iter().any(|&x| x < PI / 8.0 - 1e-12) {
        return Err(Error::Precondition("arcs must be nonempty, ordered and separated by gaps ≥ π/8".into()));
    }
    let g: &(dyn Fn(f64) -> Complex64 + Sync) = &g;
    let p1 = arc_double_integral(&a, &a, g, order);
    let p2 = arc_double_integral(&b, &b, g, order);
    let cross = arc_double_integral(&a, &b, g, order);
    let full = p1 + p2 + 2.0 * cross;
    let gl = GaussLegendre::new(order);
    let l2_sq: f64 = [a, b].iter().map(|arc| gl.integrate(arc.start, arc.end, |t| g(t).norm_sqr())).sum();
    let d = chord_gap(&a, &b);
    let c_bound = 4.0 * a.length().max(b.length()) / (d * d);
    let c_spl = if l2_sq > 0.0 { (full - p1 - p2) / l2_sq } else { 0.0 };
    Ok(SplitReport {
        seminorm_parts: [p1, p2],
        seminorm_full: full,
        l2_sq,
        c_spl,
        c_bound,
        lower_holds: full >= p1 + p2,
        upper_holds: full <= p1 + p2 + c_bound * l2_sq,
    })
}
