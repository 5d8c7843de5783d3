//! Single and double layer potentials of `-Δu + s²u = 0` on the unit circle,
//! diagonalised in the Fourier basis, and checks of their continuity bounds
//! in the wavenumber-weighted trace norms.
//!
//! With `G(x, y) = K_0(s|x - y|)/(2π)` the addition theorem gives the mode-`k`
//! single layer field `I_k(s r_<) K_k(s r_>) e^{ikθ}`. Jumps are taken
//! interior minus exterior with `ν` the outward normal of the disk, so
//! `[∂_ν S] = +1` and `[D] = -1` per mode.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extension_spectral::{
    field_energy_disk, field_energy_disk_green, field_energy_exterior_disk_green, radial_parts_disk,
    radial_parts_exterior_disk, Geometry,
};
use crate::quadrature::{legendre_all, GaussLegendre};
use crate::special_fn::{bessel_i, bessel_k, BesselRow, ComplexArg};
use crate::trace_spaces::{DiagonalNormProfile, FourierTrace, NormLabel, Wavenumber};

pub const MAX_LAYER_MODE: usize = 128;
pub const MIN_LAYER_MODULUS: f64 = 1e-3;
pub const MAX_LAYER_MODULUS: f64 = 1e3;

/// Interior and exterior traces of one side quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidePair {
    pub interior: Complex64,
    pub exterior: Complex64,
}

impl SidePair {
    pub fn jump(&self) -> Complex64 {
        self.interior - self.exterior
    }

    pub fn average(&self) -> Complex64 {
        0.5 * (self.interior + self.exterior)
    }
}

/// Per-mode eigenvalues of the potentials' traces and of the four boundary operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerMode {
    pub s_dirichlet: SidePair,
    pub s_neumann: SidePair,
    pub d_dirichlet: SidePair,
    pub d_neumann: SidePair,
    pub v: Complex64,
    pub k: Complex64,
    pub kdual: Complex64,
    pub w: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    V,
    K,
    KDual,
    W,
}

#[derive(Debug, Clone)]
pub struct LayerSpectrum {
    s: Wavenumber,
    row: BesselRow,
    modes: Vec<LayerMode>,
}

/// Eigenvalues for modes `0..=kmax`; mode `-k` shares the values of `k`.
pub fn layer_spectrum(s: Wavenumber, kmax: usize) -> Result<LayerSpectrum> {
    if kmax > MAX_LAYER_MODE {
        return Err(Error::Domain(format!("mode {kmax} beyond cap {MAX_LAYER_MODE}")));
    }
    let m = s.sigma();
    if !(MIN_LAYER_MODULUS..=MAX_LAYER_MODULUS).contains(&m) {
        return Err(Error::Domain(format!("|s| = {m:e} outside [{MIN_LAYER_MODULUS:e}, {MAX_LAYER_MODULUS:e}]")));
    }
    let sv = s.s();
    let row = BesselRow::new(ComplexArg::new(sv)?, kmax)?;
    let modes = (0..=kmax)
        .map(|k| {
            let c = row.cross(k);
            let s_dirichlet = SidePair { interior: c.ik, exterior: c.ik };
            let s_neumann = SidePair { interior: sv * c.ipk, exterior: sv * c.ikp };
            let d_dirichlet = SidePair { interior: sv * c.ikp, exterior: sv * c.ipk };
            let d_neumann = SidePair { interior: sv * sv * c.ipkp, exterior: sv * sv * c.ipkp };
            LayerMode {
                s_dirichlet,
                s_neumann,
                d_dirichlet,
                d_neumann,
                v: s_dirichlet.average(),
                k: d_dirichlet.average(),
                kdual: s_neumann.average(),
                w: d_neumann.average(),
            }
        })
        .collect();
    Ok(LayerSpectrum { s, row, modes })
}

impl LayerSpectrum {
    pub fn s(&self) -> Wavenumber {
        self.s
    }

    pub fn max_mode(&self) -> usize {
        self.modes.len() - 1
    }

    pub fn mode(&self, k: i64) -> &LayerMode {
        &self.modes[k.unsigned_abs() as usize]
    }

    /// `([S]_D, [∂S]_N, [D]_D, [∂D]_N)` for mode `k`.
    pub fn jumps(&self, k: i64) -> [Complex64; 4] {
        let m = self.mode(k);
        [m.s_dirichlet.jump(), m.s_neumann.jump(), m.d_dirichlet.jump(), m.d_neumann.jump()]
    }

    pub fn eigenvalue(&self, op: Operator, k: i64) -> Complex64 {
        let m = self.mode(k);
        match op {
            Operator::V => m.v,
            Operator::K => m.k,
            Operator::KDual => m.kdual,
            Operator::W => m.w,
        }
    }

    pub fn apply(&self, op: Operator, g: &FourierTrace) -> Result<FourierTrace> {
        if g.max_mode() > self.max_mode() {
            return Err(Error::Precondition(format!(
                "trace has modes up to {}, spectrum only up to {}",
                g.max_mode(),
                self.max_mode()
            )));
        }
        let mut out = FourierTrace::zeros(g.max_mode());
        for (k, c) in g.modes() {
            out.set(k, self.eigenvalue(op, k) * c);
        }
        Ok(out)
    }

    /// Energies `‖·‖²_{H¹(σ=|s|)}` of the normalised interior and exterior mode fields, closed form.
    fn side_energies(&self, k: usize) -> (f64, f64) {
        (
            field_energy_disk_green(&self.row, k, self.s),
            field_energy_exterior_disk_green(&self.row, k, self.s),
        )
    }

    /// Normal-derivative ratio `(2π)²|s I'_k/I_k|² / (h_k E_int)` from the closed-form energy.
    pub fn normal_derivative_ratio(&self, k: usize, h_k: f64) -> f64 {
        let dn = self.s.s() * self.row.log_deriv_i(k);
        (2.0 * PI).powi(2) * dn.norm_sqr() / h_k / self.side_energies(k).0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundName {
    V,
    K,
    KDual,
    W,
    SinglePotential,
    DoublePotential,
}

impl BoundName {
    pub const ALL: [BoundName; 6] = [
        BoundName::V,
        BoundName::K,
        BoundName::KDual,
        BoundName::W,
        BoundName::SinglePotential,
        BoundName::DoublePotential,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundName::V => "V_HN_to_HD",
            BoundName::K => "K_HD_to_HD",
            BoundName::KDual => "Kdual_HN_to_HN",
            BoundName::W => "W_HD_to_HN",
            BoundName::SinglePotential => "S_potential",
            BoundName::DoublePotential => "D_potential",
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundRow {
    pub s: Complex64,
    pub k: usize,
    pub bound: BoundName,
    pub lhs: f64,
    pub rhs: f64,
    /// `1 - lhs/rhs`.
    pub margin: f64,
    pub pass: bool,
}

impl BoundRow {
    fn new(s: Complex64, k: usize, bound: BoundName, lhs: f64, rhs: f64) -> Self {
        let margin = 1.0 - lhs / rhs;
        Self { s, k, bound, lhs, rhs, margin, pass: margin >= -1e-12 }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "re_s,im_s,k,bound_name,lhs,rhs,margin,pass";

    pub fn violations(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn worst(&self) -> Option<&BoundRow> {
        self.rows.iter().min_by(|a, b| a.margin.total_cmp(&b.margin))
    }

    pub fn worst_for(&self, bound: BoundName) -> Option<&BoundRow> {
        self.rows.iter().filter(|r| r.bound == bound).min_by(|a, b| a.margin.total_cmp(&b.margin))
    }

    pub fn csv_rows(&self) -> impl Iterator<Item = String> + '_ {
        self.rows.iter().map(|r| {
            format!(
                "{:.16e},{:.16e},{},{},{:.16e},{:.16e},{:.16e},{}",
                r.s.re, r.s.im, r.k, r.bound, r.lhs, r.rhs, r.margin, r.pass
            )
        })
    }
}

/// The interior-disk `HD` profile at `σ = |s|`.
pub fn disk_profile(s: Wavenumber, kmax: usize) -> Result<DiagonalNormProfile> {
    use crate::extension_spectral::{ExtensionProfile, Variant};
    use crate::trace_spaces::Weight;
    Ok(ExtensionProfile::new(Geometry::DiskInterior, Weight::new(s.sigma())?, Variant::Standard, kmax)?.profile)
}

/// Per-mode operator and potential bounds with `ρ = Re s/|s|`:
/// `‖V‖_{HN→HD}`, `‖W‖_{HD→HN}` and the potentials by `1/ρ`, `‖K‖`, `‖K'‖` by `1/2 + 1/ρ`.
/// `hd` gives the primal weights `h_k`; the dual weights are `(2π)²/h_k`.
pub fn check_continuity_bounds(spec: &LayerSpectrum, hd: &DiagonalNormProfile) -> Result<BoundReport> {
    let s = spec.s;
    if hd.label != NormLabel::HD || hd.geometry != Some(Geometry::DiskInterior) {
        return Err(Error::Precondition("bounds need the interior-disk HD profile".into()));
    }
    if (hd.sigma - s.sigma()).abs() > 1e-12 * s.sigma() {
        return Err(Error::Precondition(format!("profile σ = {:e} differs from |s| = {:e}", hd.sigma, s.sigma())));
    }
    if hd.max_index() < spec.max_mode() {
        return Err(Error::Precondition("profile has fewer modes than the spectrum".into()));
    }
    let inv_rho = 1.0 / s.rho();
    let sv = s.s();
    let mut rows = Vec::with_capacity(6 * (spec.max_mode() + 1));
    for k in 0..=spec.max_mode() {
        let m = &spec.modes[k];
        let h = hd.weight(k);
        let (e_int, e_ext) = spec.side_energies(k);
        rows.push(BoundRow::new(sv, k, BoundName::V, h * m.v.norm() / (2.0 * PI), inv_rho));
        rows.push(BoundRow::new(sv, k, BoundName::K, m.k.norm(), 0.5 + inv_rho));
        rows.push(BoundRow::new(sv, k, BoundName::KDual, m.kdual.norm(), 0.5 + inv_rho));
        rows.push(BoundRow::new(sv, k, BoundName::W, 2.0 * PI * m.w.norm() / h, inv_rho));
        // ‖S g‖ / ‖g‖_HN and ‖D g‖ / ‖g‖_HD for g = e_k
        let s_pot = (m.v.norm_sqr() * (e_int + e_ext)).sqrt() / (2.0 * PI / h.sqrt());
        rows.push(BoundRow::new(sv, k, BoundName::SinglePotential, s_pot, inv_rho));
        let d_pot = (m.d_dirichlet.interior.norm_sqr() * e_int + m.d_dirichlet.exterior.norm_sqr() * e_ext).sqrt()
            / h.sqrt();
        rows.push(BoundRow::new(sv, k, BoundName::DoublePotential, d_pot, inv_rho));
    }
    Ok(BoundReport { rows })
}

/// For `v = (I_k(sr)/I_k(s)) e^{ikθ}`: `‖∂_ν v‖²_{HN} / ‖v‖²_{H¹(disk,|s|)}`, with the
/// energy by radial quadrature. The bound asserts this is at most 1.
pub fn check_normal_derivative_bound(k: i64, s: Wavenumber) -> Result<f64> {
    let ku = k.unsigned_abs() as usize;
    let row = BesselRow::new(ComplexArg::new(s.s())?, ku)?;
    let h = disk_profile(s, ku)?.weight(ku);
    let dn = s.s() * row.log_deriv_i(ku);
    let energy = field_energy_disk(k, s, s.sigma())?;
    Ok((2.0 * PI).powi(2) * dn.norm_sqr() / h / energy)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoercivityReport {
    /// `Re((s̄/|s|) l(v, v))` with `l(v, v) = ∫|∇v|² + s² ∫|v|²`.
    pub lhs: f64,
    /// `(Re s/|s|) ‖v‖²_{H¹(σ=|s|)}`.
    pub rhs: f64,
    pub margin: f64,
}

impl CoercivityReport {
    pub fn from_parts(s: Wavenumber, gradient: f64, mass: f64) -> Self {
        let sv = s.s();
        let form = gradient + sv * sv * mass;
        let lhs = (sv.conj() / s.sigma() * form).re;
        let rhs = s.rho() * (gradient + s.sigma().powi(2) * mass);
        let margin = if rhs > 0.0 { (lhs - rhs) / rhs } else { 0.0 };
        Self { lhs, rhs, margin }
    }

    pub fn holds(&self) -> bool {
        self.margin >= -1e-10
    }
}

/// Coercivity of the sesquilinear form on the mode-`k` single layer field over `ℝ²∖Γ`.
pub fn check_coercivity(k: i64, s: Wavenumber) -> Result<CoercivityReport> {
    let ku = k.unsigned_abs() as usize;
    let row = BesselRow::new(ComplexArg::new(s.s())?, ku)?;
    let amp = row.cross(ku).ik.norm_sqr();
    let inner = radial_parts_disk(k, s)?;
    let outer = radial_parts_exterior_disk(k, s)?;
    Ok(CoercivityReport::from_parts(s, amp * (inner.gradient + outer.gradient), amp * (inner.mass + outer.mass)))
}

// ∫_{-1}^{1} ln(1+x) P_m(x) dx
fn log_moment(m: usize) -> f64 {
    if m == 0 {
        2.0 * std::f64::consts::LN_2 - 2.0
    } else {
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        2.0 * sign / (m * (m + 1)) as f64
    }
}

fn k0_kernel(z: Complex64) -> Result<Complex64> {
    bessel_k(0, ComplexArg::new(z)?)
}

/// `(1/2π) ∫_0^{2π} K_0(2s|sin(φ/2)|) e^{ikφ} dφ` by direct quadrature: near the
/// log singularity `K_0(z) = -ln(z/2) I_0(z) + R(z)` with the log part
/// integrated against Legendre moments, composite Gauss–Legendre elsewhere.
pub fn v_quadrature_oracle(k: i64, s: Wavenumber) -> Result<Complex64> {
    if k.unsigned_abs() > 32 {
        return Err(Error::Domain(format!("oracle mode {k} beyond 32")));
    }
    let sv = s.s();
    let kf = k as f64;
    // the split is only used while |z| ≤ 2, where I_0 and R stay O(1)
    let phi_c = 2.0 * (1.0 / s.sigma()).min(1.0).asin();

    const N: usize = 128;
    let gl = GaussLegendre::new(N);
    let nodes: Vec<(f64, f64)> = gl.on(-1.0, 1.0).collect();
    let mut moments = vec![Complex64::new(0.0, 0.0); N];
    let mut smooth = Complex64::new(0.0, 0.0);
    let ln_s = sv.ln();
    for &(x, w) in &nodes {
        let phi = 0.5 * phi_c * (1.0 + x);
        let half = (0.5 * phi).sin();
        let z = 2.0 * sv * half;
        let arg = ComplexArg::new(z)?;
        let i0 = bessel_i(0, arg)?;
        let ln_half = ln_s + half.ln();
        let rem = bessel_k(0, arg)? + ln_half * i0;
        let a = i0 * (kf * phi).cos();
        let p = legendre_all(N - 1, x);
        for (m, pm) in p.iter().enumerate() {
            moments[m] += w * a * *pm;
        }
        smooth += w * (-(ln_s + (half / (1.0 + x)).ln()) * i0 + rem) * (kf * phi).cos();
    }
    let log_part: Complex64 =
        moments.iter().enumerate().map(|(m, c)| c * (m as f64 + 0.5) * log_moment(m)).sum();
    let near = 0.5 * phi_c * (smooth - log_part);

    let far = if phi_c < PI - 1e-15 {
        let f = |phi: f64| -> Result<Complex64> { Ok(k0_kernel(2.0 * sv * (0.5 * phi).sin())? * (kf * phi).cos()) };
        let panels = 8 + k.unsigned_abs() as usize / 2 + s.sigma().ceil() as usize;
        let coarse = composite(&f, phi_c, PI, panels)?;
        let fine = composite(&f, phi_c, PI, 2 * panels)?;
        let scale = near.norm().max(fine.norm());
        if (fine - coarse).norm() > 1e-12 * scale {
            return Err(Error::Quadrature(format!(
                "far-field panels disagree by {:e} for k = {k}, s = {sv}",
                (fine - coarse).norm()
            )));
        }
        fine
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok((near + far) / PI)
}

fn composite(f: &impl Fn(f64) -> Result<Complex64>, a: f64, b: f64, panels: usize) -> Result<Complex64> {
    let gl = GaussLegendre::new(32);
    let h = (b - a) / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + h * p as f64;
        for (x, w) in gl.on(lo, lo + h) {
            sum += w * f(x)?;
        }
    }
    Ok(sum)
}
