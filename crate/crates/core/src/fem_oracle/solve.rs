use std::f64::consts::PI;

use num_complex::Complex64;

use super::mesh::{reference_rule, Mesh, Tag};
use crate::error::{Error, Result};
use crate::extension_spectral::Variant;
use crate::trace_spaces::FourierTrace;

/// Nodal P1 values on a mesh.
#[derive(Debug, Clone)]
pub struct FemField<'m> {
    mesh: &'m Mesh,
    values: Vec<Complex64>,
}

impl<'m> FemField<'m> {
    pub fn new(mesh: &'m Mesh, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != mesh.vertices().len() {
            return Err(Error::Precondition(format!(
                "{} nodal values for {} vertices",
                values.len(),
                mesh.vertices().len()
            )));
        }
        Ok(Self { mesh, values })
    }

    pub fn from_fn(mesh: &'m Mesh, f: impl Fn(f64, f64) -> Complex64) -> Self {
        Self { mesh, values: mesh.vertices().iter().map(|v| f(v[0], v[1])).collect() }
    }

    pub fn mesh(&self) -> &Mesh {
        self.mesh
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

const GRAD: [[f64; 2]; 3] = [[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]];

/// Element stiffness and mass matrices in the mesh triangle's vertex order:
/// closed form on straight elements, the collapsed rule on mapped ones.
fn element(mesh: &Mesh, t: usize) -> Result<([[f64; 3]; 3], [[f64; 3]; 3])> {
    let map = mesh.element_map(t);
    let mut k = [[0.0; 3]; 3];
    let mut m = [[0.0; 3]; 3];
    if map.is_affine() {
        let (jac, det) = map.jacobian(0.0, 0.0);
        let area = 0.5 * det;
        let g = physical_gradients(jac, det);
        for i in 0..3 {
            for j in 0..3 {
                k[map.local[i]][map.local[j]] = area * (g[i][0] * g[j][0] + g[i][1] * g[j][1]);
                m[map.local[i]][map.local[j]] = if i == j { area / 6.0 } else { area / 12.0 };
            }
        }
        return Ok((k, m));
    }
    for &(xi, eta, w) in reference_rule() {
        let (jac, det) = map.jacobian(xi, eta);
        if det <= 0.0 {
            return Err(Error::Precondition(format!("element {t} folds over")));
        }
        let g = physical_gradients(jac, det);
        let phi = [1.0 - xi - eta, xi, eta];
        for i in 0..3 {
            for j in 0..3 {
                k[map.local[i]][map.local[j]] += w * det * (g[i][0] * g[j][0] + g[i][1] * g[j][1]);
                m[map.local[i]][map.local[j]] += w * det * phi[i] * phi[j];
            }
        }
    }
    Ok((k, m))
}

// J^{-T} applied to the reference gradients
fn physical_gradients(jac: [[f64; 2]; 2], det: f64) -> [[f64; 2]; 3] {
    let [[a, c], [b, d]] = jac;
    GRAD.map(|[gx, gy]| [(d * gx - c * gy) / det, (-b * gx + a * gy) / det])
}

/// `∫|∇u|² + σ² ∫|u|²`: exact on straight elements, quadrature on mapped ones.
pub fn fem_energy(field: &FemField, sigma: f64) -> Result<f64> {
    let mesh = field.mesh;
    let u = &field.values;
    let s2 = sigma * sigma;
    let mut total = 0.0;
    for t in 0..mesh.triangles().len() {
        let tri = mesh.triangles()[t];
        let (k, m) = element(mesh, t)?;
        for i in 0..3 {
            for j in 0..3 {
                total += (k[i][j] + s2 * m[i][j]) * (u[tri[i]].conj() * u[tri[j]]).re;
            }
        }
    }
    Ok(total)
}

/// Compressed sparse rows of a real symmetric matrix.
struct Csr {
    start: Vec<usize>,
    col: Vec<usize>,
    val: Vec<f64>,
}

impl Csr {
    fn assemble(n: usize, mut entries: Vec<(usize, usize, f64)>) -> Self {
        entries.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut start = vec![0; n + 1];
        let mut col = Vec::with_capacity(entries.len());
        let mut val: Vec<f64> = Vec::with_capacity(entries.len());
        let mut last = None;
        for (i, j, v) in entries {
            if last == Some((i, j)) {
                *val.last_mut().expect("entry exists") += v;
            } else {
                col.push(j);
                val.push(v);
                start[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        Self { start, col, val }
    }

    fn mul(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = (self.start[i]..self.start[i + 1]).map(|p| self.val[p] * x[self.col[p]]).sum();
        }
    }

    fn diagonal(&self) -> Vec<f64> {
        (0..self.start.len() - 1)
            .map(|i| (self.start[i]..self.start[i + 1]).find(|&p| self.col[p] == i).map_or(0.0, |p| self.val[p]))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct FemSolution<'m> {
    pub field: FemField<'m>,
    pub energy: f64,
    /// `‖A_ff u_f - b_f‖ / ‖b_f‖`, recomputed after the solve.
    pub residual: f64,
    pub iterations: usize,
}

pub const CG_TOLERANCE: f64 = 1e-10;

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// How Γ vertex values are taken from Fourier data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryData {
    /// `g(θ_j)`.
    Nodal,
    /// `Σ c_k e^{ikθ_j} / sinc²(kΔ/2)`: the piecewise-linear trace then has exactly the
    /// Fourier coefficients `c_k` of `g` plus aliases at `k + mN`, so its trace norm is at least that of `g`.
    Prefiltered,
}

/// Discrete minimiser of `∫|∇v|² + σ²|v|²` with the trace of `g` on Γ and, for
/// [`Variant::Alternative`], `v = 0` on the inner circle; the inner circle is free otherwise.
/// Boundary edges are exact arcs, so the discrete space is conforming on the exact domain.
pub fn solve_min_extension<'m>(
    mesh: &'m Mesh,
    g: &FourierTrace,
    sigma: f64,
    variant: Variant,
) -> Result<FemSolution<'m>> {
    solve_min_extension_with(mesh, g, sigma, variant, BoundaryData::Prefiltered)
}

pub fn solve_min_extension_with<'m>(
    mesh: &'m Mesh,
    g: &FourierTrace,
    sigma: f64,
    variant: Variant,
    data: BoundaryData,
) -> Result<FemSolution<'m>> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::Domain(format!("σ = {sigma} must be real and nonnegative")));
    }
    let n_gamma = mesh.count(Tag::Gamma);
    if 8 * g.max_mode() > n_gamma {
        return Err(Error::Precondition(format!(
            "data has modes up to {} but Γ carries only {n_gamma} vertices",
            g.max_mode()
        )));
    }
    let n = mesh.vertices().len();
    let fixed: Vec<bool> = mesh
        .tags()
        .iter()
        .map(|t| *t == Tag::Gamma || (*t == Tag::GammaC && variant == Variant::Alternative))
        .collect();
    let mut u = vec![Complex64::new(0.0, 0.0); n];
    let half_step = PI / n_gamma as f64;
    let gain = |k: i64| match data {
        BoundaryData::Nodal => 1.0,
        BoundaryData::Prefiltered if k == 0 => 1.0,
        BoundaryData::Prefiltered => {
            let x = k as f64 * half_step;
            (x / x.sin()).powi(2)
        }
    };
    for (i, v) in mesh.vertices().iter().enumerate() {
        if mesh.tags()[i] == Tag::Gamma {
            let th = v[1].atan2(v[0]);
            u[i] = g.modes().map(|(k, c)| c * gain(k) * Complex64::from_polar(1.0, k as f64 * th)).sum();
        }
    }

    let s2 = sigma * sigma;
    let mut entries = Vec::with_capacity(9 * mesh.triangles().len());
    for t in 0..mesh.triangles().len() {
        let tri = mesh.triangles()[t];
        let (k, m) = element(mesh, t)?;
        for i in 0..3 {
            for j in 0..3 {
                entries.push((tri[i], tri[j], k[i][j] + s2 * m[i][j]));
            }
        }
    }
    let a = Csr::assemble(n, entries);

    // b = -A u_D on the free rows
    let mut b = vec![Complex64::new(0.0, 0.0); n];
    a.mul(&u, &mut b);
    for (bi, &f) in b.iter_mut().zip(&fixed) {
        *bi = if f { Complex64::new(0.0, 0.0) } else { -*bi };
    }
    let b_norm = norm(&b);
    let mut iterations = 0;
    if b_norm > 0.0 {
        let diag = a.diagonal();
        let apply = |x: &[Complex64], y: &mut [Complex64]| {
            a.mul(x, y);
            for (yi, &f) in y.iter_mut().zip(&fixed) {
                if f {
                    *yi = Complex64::new(0.0, 0.0);
                }
            }
        };
        let precond = |r: &[Complex64]| -> Vec<Complex64> {
            r.iter().zip(&diag).zip(&fixed).map(|((ri, d), &f)| if f { *ri * 0.0 } else { ri / d }).collect()
        };
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        let mut r = b.clone();
        let mut z = precond(&r);
        let mut p = z.clone();
        let mut rz = dot(&r, &z);
        let mut ap = vec![Complex64::new(0.0, 0.0); n];
        let max_iter = 20 * n + 100;
        while norm(&r) > CG_TOLERANCE * b_norm {
            if iterations >= max_iter {
                return Err(Error::Solver(format!(
                    "CG stalled at relative residual {:e} after {iterations} iterations",
                    norm(&r) / b_norm
                )));
            }
            apply(&p, &mut ap);
            let alpha = rz / dot(&p, &ap);
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            z = precond(&r);
            let rz_new = dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
            iterations += 1;
        }
        for i in 0..n {
            if !fixed[i] {
                u[i] = x[i];
            }
        }
    }

    // Galerkin residual of the full system on the free rows
    let mut au = vec![Complex64::new(0.0, 0.0); n];
    a.mul(&u, &mut au);
    let res: Vec<Complex64> = au.iter().zip(&fixed).map(|(v, &f)| if f { *v * 0.0 } else { *v }).collect();
    let scale = if b_norm > 0.0 { b_norm } else { 1.0 };
    let residual = norm(&res) / scale;
    let field = FemField { mesh, values: u };
    let energy = fem_energy(&field, sigma)?;
    Ok(FemSolution { field, energy, residual, iterations })
}
