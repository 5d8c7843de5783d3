//! Minimal extension norms on the model geometries, mode by mode.
//!
//! For radial geometries the minimiser of the weighted H¹ energy with trace
//! `e_k` on Γ is separable, and its energy equals the Dirichlet-to-Neumann
//! eigenvalue times `‖e_k‖²`. This module evaluates those eigenvalues, the
//! half-space Fourier norm, and the volume energies of the extensions by
//! radial quadrature (the independent check of the DtN values).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, Tolerance};
use crate::special_fn::scaled::Scaled;
use crate::special_fn::{BesselRow, ComplexArg, SphericalRow, MAX_CYL_ORDER, MAX_SPH_ORDER};
use crate::trace_spaces::{Boundary, BoundaryTrace, DiagonalNormProfile, NormLabel, Wavenumber, Weight};

/// Which of the two annulus circles carries Γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaSide {
    Outer,
    Inner,
}

/// Model extension domains. Γ is always the unit circle or sphere (or ℝ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    DiskInterior,
    DiskExterior,
    Annulus { inner_radius: f64, gamma_on: GammaSide },
    BallInterior,
    BallExterior,
    HalfSpace,
}

impl Geometry {
    pub fn annulus(inner_radius: f64) -> Self {
        Geometry::Annulus { inner_radius, gamma_on: GammaSide::Outer }
    }

    pub fn boundary(&self) -> Option<Boundary> {
        match self {
            Geometry::DiskInterior | Geometry::DiskExterior | Geometry::Annulus { .. } => Some(Boundary::Circle),
            Geometry::BallInterior | Geometry::BallExterior => Some(Boundary::Sphere),
            Geometry::HalfSpace => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Geometry::DiskInterior => "disk",
            Geometry::DiskExterior => "exterior_disk",
            Geometry::Annulus { .. } => "annulus",
            Geometry::BallInterior => "ball",
            Geometry::BallExterior => "exterior_ball",
            Geometry::HalfSpace => "half_space",
        }
    }
}

/// Boundary condition on the part of ∂Ω that is not Γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Natural (Neumann) condition.
    Standard,
    /// Zero Dirichlet data.
    Alternative,
}

fn cyl_row(sigma: f64, kmax: usize) -> Result<BesselRow> {
    if kmax > MAX_CYL_ORDER {
        return Err(Error::Domain(format!("mode {kmax} beyond cap {MAX_CYL_ORDER}")));
    }
    BesselRow::new(ComplexArg::real(sigma)?, kmax)
}

fn sph_row(sigma: f64, lmax: usize) -> Result<SphericalRow> {
    if lmax > MAX_SPH_ORDER {
        return Err(Error::Domain(format!("degree {lmax} beyond cap {MAX_SPH_ORDER}")));
    }
    SphericalRow::new(ComplexArg::real(sigma)?, lmax)
}

/// `σ I'_{|k|}(σ) / I_{|k|}(σ)`; the disk weight is `2π` times this.
pub fn dtn_disk(k: i64, w: Weight) -> Result<f64> {
    let k = k.unsigned_abs() as usize;
    Ok(w.sigma() * cyl_row(w.sigma(), k)?.log_deriv_i(k).re)
}

/// `-σ K'_{|k|}(σ) / K_{|k|}(σ)`.
pub fn dtn_exterior_disk(k: i64, w: Weight) -> Result<f64> {
    let k = k.unsigned_abs() as usize;
    Ok(-w.sigma() * cyl_row(w.sigma(), k)?.log_deriv_k(k).re)
}

/// `σ i'_l(σ) / i_l(σ)`.
pub fn dtn_ball(l: usize, w: Weight) -> Result<f64> {
    Ok(w.sigma() * sph_row(w.sigma(), l)?.log_deriv_i(l).re)
}

/// `-σ k'_l(σ) / k_l(σ)`.
pub fn dtn_exterior_ball(l: usize, w: Weight) -> Result<f64> {
    Ok(-w.sigma() * sph_row(w.sigma(), l)?.log_deriv_k(l).re)
}

fn check_annulus(rho: f64) -> Result<()> {
    if !(0.05..=0.95).contains(&rho) {
        return Err(Error::Domain(format!("inner radius {rho} outside [0.05, 0.95]")));
    }
    Ok(())
}

/// Annulus weight from rows at `σ` (Γ) and `σρ` (the inner circle).
fn annulus_weight(outer: &BesselRow, inner: &BesselRow, k: usize, sigma: f64, variant: Variant) -> Result<f64> {
    // u(r) = a I_k(σr) + b K_k(σr), u(1) = 1. With
    // t = [I_k(σρ)/I_k(σ)] / [K_k(σρ)/K_k(σ)] the Dirichlet condition at ρ gives
    // σu'(1) = σ(LI - t LK)/(1 - t); the Neumann one replaces t by t·LI(σρ)/LK(σρ).
    let ratio: Scaled = (inner.i_scaled(k) / outer.i_scaled(k)) * (outer.k_scaled(k) / inner.k_scaled(k));
    let mut t = ratio.to_complex_flush();
    if variant == Variant::Standard {
        t *= inner.log_deriv_i(k) / inner.log_deriv_k(k);
    }
    let det = Complex64::new(1.0, 0.0) - t;
    if det.norm() < 1e-300 {
        return Err(Error::Singular(format!("annulus system for k = {k}, σ = {sigma:e}")));
    }
    let v = 2.0 * PI * sigma * (outer.log_deriv_i(k) - t * outer.log_deriv_k(k)) / det;
    if v.im.abs() > 1e-12 * v.norm() {
        return Err(Error::Range(format!("annulus weight has imaginary residue {:e}", v.im)));
    }
    Ok(v.re)
}

/// Per-mode weight `2πσ(a I'_k(σ) + b K'_k(σ))` of the annulus `ρ < r < 1` with Γ the outer circle.
pub fn annulus_mode(k: i64, w: Weight, rho: f64, variant: Variant) -> Result<f64> {
    check_annulus(rho)?;
    let k = k.unsigned_abs() as usize;
    let outer = cyl_row(w.sigma(), k)?;
    let inner = cyl_row(w.sigma() * rho, k)?;
    annulus_weight(&outer, &inner, k, w.sigma(), variant)
}

/// A minimal-extension norm on one geometry, as per-mode weights.
#[derive(Debug, Clone)]
pub struct ExtensionProfile {
    pub geometry: Geometry,
    pub weight: Weight,
    pub variant: Variant,
    pub profile: DiagonalNormProfile,
}

impl ExtensionProfile {
    pub fn new(geometry: Geometry, w: Weight, variant: Variant, max_index: usize) -> Result<Self> {
        let s = w.sigma();
        let weights: Vec<f64> = match geometry {
            Geometry::DiskInterior => {
                let row = cyl_row(s, max_index)?;
                (0..=max_index).map(|k| 2.0 * PI * s * row.log_deriv_i(k).re).collect()
            }
            Geometry::DiskExterior => {
                let row = cyl_row(s, max_index)?;
                (0..=max_index).map(|k| -2.0 * PI * s * row.log_deriv_k(k).re).collect()
            }
            Geometry::Annulus { inner_radius, gamma_on } => {
                if gamma_on != GammaSide::Outer {
                    return Err(Error::Precondition("annulus profiles need Γ on the outer circle".into()));
                }
                check_annulus(inner_radius)?;
                let outer = cyl_row(s, max_index)?;
                let inner = cyl_row(s * inner_radius, max_index)?;
                (0..=max_index)
                    .map(|k| annulus_weight(&outer, &inner, k, s, variant))
                    .collect::<Result<_>>()?
            }
            Geometry::BallInterior => {
                let row = sph_row(s, max_index)?;
                (0..=max_index).map(|l| s * row.log_deriv_i(l).re).collect()
            }
            Geometry::BallExterior => {
                let row = sph_row(s, max_index)?;
                (0..=max_index).map(|l| -s * row.log_deriv_k(l).re).collect()
            }
            Geometry::HalfSpace => {
                return Err(Error::Precondition("the half-space norm is not mode-diagonal; use halfspace_norm".into()))
            }
        };
        let label = match variant {
            Variant::Standard => NormLabel::HD,
            Variant::Alternative => NormLabel::HDAlt,
        };
        let boundary = geometry.boundary().expect("checked above");
        let profile = DiagonalNormProfile::new(label, boundary, Some(geometry), s, weights)?;
        Ok(Self { geometry, weight: w, variant, profile })
    }

    pub fn weight_at(&self, n: usize) -> f64 {
        self.profile.weight(n)
    }
}

/// `sqrt(Σ h_k |c_k|²)`.
pub fn min_ext_norm<T: BoundaryTrace>(g: &T, profile: &ExtensionProfile) -> Result<f64> {
    profile.profile.norm(g)
}

/// `sqrt(2π ∫ (σ² + ξ²)^{1/2} |ĝ(ξ)|² dξ)` by the trapezoid rule on the given grid,
/// with `ĝ(ξ) = ∫ g(x) e^{-ixξ} dx`.
pub fn halfspace_norm(xi: &[f64], spectrum: &[f64], sigma: f64) -> Result<f64> {
    if xi.len() != spectrum.len() || xi.len() < 3 {
        return Err(Error::Precondition("grid and spectrum must have equal length ≥ 3".into()));
    }
    if !(sigma >= 0.0) {
        return Err(Error::Domain(format!("σ = {sigma} must be nonnegative")));
    }
    if xi.windows(2).any(|p| !(p[1] > p[0])) {
        return Err(Error::Precondition("ξ-grid must be strictly increasing".into()));
    }
    let peak = spectrum.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Ok(0.0);
    }
    let edge = spectrum[0].abs().max(spectrum[spectrum.len() - 1].abs());
    if edge > 1e-16 * peak {
        return Err(Error::Truncation(format!("spectrum is {:e} of its peak at the grid edge", edge / peak)));
    }
    let f = |i: usize| (sigma * sigma + xi[i] * xi[i]).sqrt() * spectrum[i];
    let integral: f64 = (1..xi.len()).map(|i| 0.5 * (xi[i] - xi[i - 1]) * (f(i) + f(i - 1))).sum();
    Ok((2.0 * PI * integral).sqrt())
}

fn radial_tol() -> Tolerance {
    Tolerance { abs_tol: 0.0, rel_tol: 1e-12, max_intervals: 4000 }
}

fn energy_density(u: Complex64, du: Complex64, k: f64, r: f64, sigma: f64) -> f64 {
    du.norm_sqr() + (k * k / (r * r) + sigma * sigma) * u.norm_sqr()
}

/// Gradient and mass integrals `∫|∇u|²` and `∫|u|²` of one radial mode field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialParts {
    pub gradient: f64,
    pub mass: f64,
}

impl RadialParts {
    pub fn energy(&self, sigma: f64) -> f64 {
        self.gradient + sigma * sigma * self.mass
    }
}

fn interior_integral(k: usize, sv: Complex64, density: impl Fn(Complex64, Complex64, f64) -> f64) -> Result<f64> {
    let i_one = BesselRow::new(ComplexArg::new(sv)?, k)?.i_scaled(k);
    let mut failure = None;
    let integrand = |r: f64| {
        let Ok(arg) = ComplexArg::new(sv * r) else { return 0.0 };
        match BesselRow::new(arg, k) {
            Ok(row) => {
                let u = (row.i_scaled(k) / i_one).to_complex_flush();
                let du = sv * row.log_deriv_i(k) * u;
                density(u, du, r) * r
            }
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let est = integrate(integrand, 0.0, 1.0, radial_tol())?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(2.0 * PI * est.value)
}

fn exterior_integral(k: usize, sv: Complex64, density: impl Fn(Complex64, Complex64, f64) -> f64) -> Result<f64> {
    let k_one = BesselRow::new(ComplexArg::new(sv)?, k)?.k_scaled(k);
    let field = |r: f64| -> Result<(Complex64, Complex64)> {
        let z = sv * r;
        if z.norm() > ComplexArg::MAX_MODULUS {
            return Ok((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)));
        }
        let row = BesselRow::new(ComplexArg::new(z)?, k)?;
        let u = (row.k_scaled(k) / k_one).to_complex_flush();
        Ok((u, sv * row.log_deriv_k(k) * u))
    };
    let mut big_r = 1.0 + (20.0 / sv.re).max(10.0);
    loop {
        let mut failure = None;
        let integrand = |t: f64| {
            let r = t.exp();
            match field(r) {
                Ok((u, du)) => density(u, du, r) * r * r,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        };
        let est = integrate(integrand, 0.0, big_r.ln(), radial_tol())?;
        if let Some(e) = failure {
            return Err(e);
        }
        let value = 2.0 * PI * est.value;
        let (u, du) = field(big_r)?;
        let flux = 2.0 * PI * big_r * u.norm() * du.norm();
        if flux <= 1e-13 * value || value == 0.0 || big_r > 1e12 {
            return Ok(value);
        }
        big_r *= 2.0;
    }
}

/// `‖u‖²_{H¹(disk,σ)}` for `u = (I_k(sr)/I_k(s)) e^{ikθ}`, by adaptive radial quadrature.
pub fn field_energy_disk(k: i64, s: Wavenumber, sigma: f64) -> Result<f64> {
    let kf = k as f64;
    interior_integral(k.unsigned_abs() as usize, s.s(), |u, du, r| energy_density(u, du, kf, r, sigma))
}

/// `‖u‖²_{H¹(ℝ²∖disk,σ)}` for `u = (K_k(sr)/K_k(s)) e^{ikθ}`; radial quadrature in
/// `t = ln r` on `[1, R]`, `R = 1 + max(20/Re s, 10)`, doubled until the
/// boundary flux at `R` is below `1e-13` of the result.
pub fn field_energy_exterior_disk(k: i64, s: Wavenumber, sigma: f64) -> Result<f64> {
    let kf = k as f64;
    exterior_integral(k.unsigned_abs() as usize, s.s(), |u, du, r| energy_density(u, du, kf, r, sigma))
}

/// [`RadialParts`] of the interior field of [`field_energy_disk`].
pub fn radial_parts_disk(k: i64, s: Wavenumber) -> Result<RadialParts> {
    let kf = k as f64;
    let ku = k.unsigned_abs() as usize;
    Ok(RadialParts {
        gradient: interior_integral(ku, s.s(), |u, du, r| energy_density(u, du, kf, r, 0.0))?,
        mass: interior_integral(ku, s.s(), |u, _, _| u.norm_sqr())?,
    })
}

/// [`RadialParts`] of the exterior field of [`field_energy_exterior_disk`].
pub fn radial_parts_exterior_disk(k: i64, s: Wavenumber) -> Result<RadialParts> {
    let kf = k as f64;
    let ku = k.unsigned_abs() as usize;
    Ok(RadialParts {
        gradient: exterior_integral(ku, s.s(), |u, du, r| energy_density(u, du, kf, r, 0.0))?,
        mass: exterior_integral(ku, s.s(), |u, _, _| u.norm_sqr())?,
    })
}

/// Interior energy from the boundary flux: with `F = 2π s I'_k(s)/I_k(s)`,
/// `∫|∇u|² + s²∫|u|² = F`, so `E = Re F + tan(arg s) Im F` for `σ = |s|`.
pub fn field_energy_disk_green(row: &BesselRow, k: usize, s: Wavenumber) -> f64 {
    let flux = 2.0 * PI * s.s() * row.log_deriv_i(k);
    green_energy(flux, s)
}

/// Exterior analogue with `F = -2π s K'_k(s)/K_k(s)`.
pub fn field_energy_exterior_disk_green(row: &BesselRow, k: usize, s: Wavenumber) -> f64 {
    let flux = -2.0 * PI * s.s() * row.log_deriv_k(k);
    green_energy(flux, s)
}

fn green_energy(flux: Complex64, s: Wavenumber) -> f64 {
    // A + s² B = F with A, B ≥ 0 real: B = Im F / Im s², A = Re F - Re(s²) B,
    // and A + |s|² B = Re F + (|s|² - Re s²) Im F / Im s² = Re F + tan θ Im F.
    let sv = s.s();
    flux.re + (sv.im / sv.re) * flux.im
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_k0_at_one() {
        let v = 2.0 * PI * dtn_disk(0, Weight::new(1.0).unwrap()).unwrap();
        assert!((v - 2.0 * PI * 0.565_159_103_992_485_1 / 1.266_065_877_752_008_4).abs() < 1e-13);
    }

    #[test]
    fn halfspace_rejects_untruncated_spectrum() {
        let xi: Vec<f64> = (0..11).map(|i| i as f64 - 5.0).collect();
        let sp = vec![1.0; 11];
        assert!(matches!(halfspace_norm(&xi, &sp, 1.0), Err(Error::Truncation(_))));
    }

    #[test]
    fn inner_gamma_is_rejected() {
        let g = Geometry::Annulus { inner_radius: 0.5, gamma_on: GammaSide::Inner };
        let w = Weight::new(1.0).unwrap();
        assert!(ExtensionProfile::new(g, w, Variant::Standard, 4).is_err());
    }
}
