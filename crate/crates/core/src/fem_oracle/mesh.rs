use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    Gamma,
    GammaC,
    Interior,
}

impl Tag {
    fn code(self) -> u8 {
        match self {
            Tag::Interior => 0,
            Tag::Gamma => 1,
            Tag::GammaC => 2,
        }
    }

    fn from_code(c: u8) -> Option<Self> {
        match c {
            0 => Some(Tag::Interior),
            1 => Some(Tag::Gamma),
            2 => Some(Tag::GammaC),
            _ => None,
        }
    }
}

/// Triangulation of the disk or of an annulus by concentric rings.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    vertices: Vec<[f64; 2]>,
    triangles: Vec<[usize; 3]>,
    tags: Vec<Tag>,
    // rings at or above this radius carry as many vertices as Γ
    polar_from: f64,
}

const RING_TOL: f64 = 1e-12;

fn radius(v: [f64; 2]) -> f64 {
    v[0].hypot(v[1])
}

fn full_ring_radius(vertices: &[[f64; 2]], tags: &[Tag]) -> f64 {
    let mut radii: Vec<f64> = vertices.iter().map(|&v| radius(v)).filter(|&r| r > 0.0).collect();
    radii.sort_by(|a, b| b.total_cmp(a));
    let n_gamma = tags.iter().filter(|&&t| t == Tag::Gamma).count();
    let mut from = 1.0;
    let mut i = 0;
    while i < radii.len() {
        let r = radii[i];
        let j = radii[i..].iter().position(|&x| (x - r).abs() > RING_TOL).map_or(radii.len(), |p| i + p);
        if j - i != n_gamma {
            break;
        }
        from = r;
        i = j;
    }
    from
}

pub const MIN_H: f64 = 0.005;
pub const MAX_H: f64 = 0.3;
const GROWTH: f64 = 1.15;

fn check_h(h: f64) -> Result<()> {
    if !(MIN_H..=MAX_H).contains(&h) {
        return Err(Error::Domain(format!("mesh size {h} outside [{MIN_H}, {MAX_H}]")));
    }
    Ok(())
}

fn signed_area(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))
}

/// Ring radii from 1 inwards. Spacing starts at `h·layer` next to Γ and grows
/// geometrically to `h`; the rest of `[stop, 1]` is split uniformly.
fn ring_radii(h: f64, layer: f64, stop: f64) -> Vec<f64> {
    let mut radii = vec![1.0];
    let mut r = 1.0;
    let mut dr = h * layer.min(1.0);
    while dr < h && r - dr > stop + h {
        r -= dr;
        radii.push(r);
        dr *= GROWTH;
    }
    let rest = r - stop;
    let m = (rest / h).ceil().max(1.0) as usize;
    for i in 1..=m {
        radii.push(r - rest * i as f64 / m as f64);
    }
    radii
}

fn sectors(r: f64, h: f64, outer: usize) -> usize {
    ((2.0 * PI * r / h).ceil() as usize).clamp(6, outer)
}

#[derive(Debug, Clone, Copy)]
pub struct Arc {
    pub radius: f64,
    pub start: f64,
    pub sweep: f64,
}

#[derive(Debug, Clone, Copy)]
pub enum MapKind {
    /// Straight triangle.
    Affine,
    /// First reference edge sent onto a circular arc, uniformly in angle.
    Blended(Arc),
    /// `r` and `θ` affine in the reference coordinates, so ring edges are exact arcs.
    Polar { r: [f64; 3], theta: [f64; 3] },
}

/// Map from the reference triangle `(0,0), (1,0), (0,1)` onto one element.
#[derive(Debug, Clone, Copy)]
pub struct ElementMap {
    /// Positions in the mesh triangle of reference vertices 0, 1, 2.
    pub local: [usize; 3],
    p: [[f64; 2]; 3],
    pub kind: MapKind,
}

fn wrap(mut d: f64) -> f64 {
    if d > PI {
        d -= 2.0 * PI;
    } else if d < -PI {
        d += 2.0 * PI;
    }
    d
}

impl ElementMap {
    pub fn is_affine(&self) -> bool {
        matches!(self.kind, MapKind::Affine)
    }

    /// Jacobian `∂F/∂(ξ, η)` as columns and its determinant.
    pub fn jacobian(&self, xi: f64, eta: f64) -> ([[f64; 2]; 2], f64) {
        let [a, b, c] = self.p;
        let mut dxi = [b[0] - a[0], b[1] - a[1]];
        let mut deta = [c[0] - a[0], c[1] - a[1]];
        match self.kind {
            MapKind::Affine => {}
            MapKind::Blended(arc) => {
                // F = affine + (1-η)·D(t), t = ξ/(1-η), D(t) = γ(t) - a - t(b-a)
                let s = 1.0 - eta;
                let t = if s > 0.0 { xi / s } else { 0.0 };
                let th = arc.start + t * arc.sweep;
                let g = [arc.radius * th.cos(), arc.radius * th.sin()];
                let dg = [-arc.radius * arc.sweep * th.sin(), arc.radius * arc.sweep * th.cos()];
                for d in 0..2 {
                    let dd = dg[d] - (b[d] - a[d]);
                    let dv = g[d] - a[d] - t * (b[d] - a[d]);
                    dxi[d] += dd;
                    deta[d] += -dv + t * dd;
                }
            }
            MapKind::Polar { r, theta } => {
                let rr = r[0] + xi * (r[1] - r[0]) + eta * (r[2] - r[0]);
                let th = theta[0] + xi * (theta[1] - theta[0]) + eta * (theta[2] - theta[0]);
                let (sn, cs) = th.sin_cos();
                let col = |dr: f64, dt: f64| [dr * cs - rr * dt * sn, dr * sn + rr * dt * cs];
                dxi = col(r[1] - r[0], theta[1] - theta[0]);
                deta = col(r[2] - r[0], theta[2] - theta[0]);
            }
        }
        let det = dxi[0] * deta[1] - dxi[1] * deta[0];
        ([dxi, deta], det)
    }
}

/// Collapsed Gauss–Legendre rule on the reference triangle: `(ξ, η, weight)`.
pub(crate) fn reference_rule() -> &'static [(f64, f64, f64)] {
    use std::sync::OnceLock;
    static RULE: OnceLock<Vec<(f64, f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let gl = crate::quadrature::GaussLegendre::new(12);
        let pts: Vec<(f64, f64)> = gl.on(0.0, 1.0).collect();
        let mut rule = Vec::with_capacity(pts.len() * pts.len());
        for &(u, wu) in &pts {
            for &(v, wv) in &pts {
                rule.push((u * (1.0 - v), v, wu * wv * (1.0 - v)));
            }
        }
        rule
    })
}

struct Builder {
    vertices: Vec<[f64; 2]>,
    triangles: Vec<[usize; 3]>,
    tags: Vec<Tag>,
}

impl Builder {
    fn ring(&mut self, r: f64, n: usize, tag: Tag) -> Vec<usize> {
        (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                self.vertices.push([r * t.cos(), r * t.sin()]);
                self.tags.push(tag);
                self.vertices.len() - 1
            })
            .collect()
    }

    fn push(&mut self, a: usize, b: usize, c: usize) {
        let area = signed_area(self.vertices[a], self.vertices[b], self.vertices[c]);
        if area > 0.0 {
            self.triangles.push([a, b, c]);
        } else {
            self.triangles.push([a, c, b]);
        }
    }

    // Zip two rings by walking both angle sequences in order.
    fn zip(&mut self, outer: &[usize], inner: &[usize]) {
        let (na, nb) = (outer.len(), inner.len());
        let (mut i, mut j) = (0, 0);
        while i < na || j < nb {
            let next_a = (i + 1) as f64 / na as f64;
            let next_b = (j + 1) as f64 / nb as f64;
            if j == nb || (i < na && next_a <= next_b) {
                self.push(outer[i % na], outer[(i + 1) % na], inner[j % nb]);
                i += 1;
            } else {
                self.push(outer[i % na], inner[(j + 1) % nb], inner[j % nb]);
                j += 1;
            }
        }
    }

    fn finish(self) -> Mesh {
        Mesh::new(self.vertices, self.triangles, self.tags)
    }
}

/// Uniform polar mesh of the unit disk.
pub fn mesh_disk(h: f64) -> Result<Mesh> {
    mesh_disk_graded(h, 1.0)
}

/// Polar mesh of the unit disk whose first ring spacing is `h·layer` (`layer ≤ 1`).
pub fn mesh_disk_graded(h: f64, layer: f64) -> Result<Mesh> {
    check_h(h)?;
    let radii = ring_radii(h, layer, 0.0);
    let outer_n = sectors(1.0, h, usize::MAX).max(8);
    let mut b = Builder { vertices: vec![], triangles: vec![], tags: vec![] };
    let mut prev = b.ring(1.0, outer_n, Tag::Gamma);
    for &r in &radii[1..radii.len() - 1] {
        let cur = b.ring(r, sectors(r, h, prev.len()), Tag::Interior);
        b.zip(&prev, &cur);
        prev = cur;
    }
    b.vertices.push([0.0, 0.0]);
    b.tags.push(Tag::Interior);
    let c = b.vertices.len() - 1;
    for i in 0..prev.len() {
        b.push(prev[i], prev[(i + 1) % prev.len()], c);
    }
    Ok(b.finish())
}

/// Uniform polar mesh of `ρ < r < 1`.
pub fn mesh_annulus(rho: f64, h: f64) -> Result<Mesh> {
    mesh_annulus_graded(rho, h, 1.0)
}

pub fn mesh_annulus_graded(rho: f64, h: f64, layer: f64) -> Result<Mesh> {
    check_h(h)?;
    if !(0.05..=0.95).contains(&rho) {
        return Err(Error::Domain(format!("inner radius {rho} outside [0.05, 0.95]")));
    }
    let radii = ring_radii(h, layer, rho);
    let outer_n = sectors(1.0, h, usize::MAX).max(8);
    let mut b = Builder { vertices: vec![], triangles: vec![], tags: vec![] };
    let mut prev = b.ring(1.0, outer_n, Tag::Gamma);
    let last = radii.len() - 1;
    for (i, &r) in radii.iter().enumerate().skip(1) {
        let tag = if i == last { Tag::GammaC } else { Tag::Interior };
        let r = if i == last { rho } else { r };
        let cur = b.ring(r, sectors(r, h, prev.len()), tag);
        b.zip(&prev, &cur);
        prev = cur;
    }
    Ok(b.finish())
}

impl Mesh {
    pub fn new(vertices: Vec<[f64; 2]>, triangles: Vec<[usize; 3]>, tags: Vec<Tag>) -> Self {
        let polar_from = full_ring_radius(&vertices, &tags);
        Self { vertices, triangles, tags, polar_from }
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn tags(&self) -> &[Tag] {
        &self.tags
    }

    pub fn count(&self, tag: Tag) -> usize {
        self.tags.iter().filter(|&&t| t == tag).count()
    }

    /// Area of the straight triangle through the three vertices.
    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t];
        signed_area(self.vertices[a], self.vertices[b], self.vertices[c])
    }

    /// Local edge `(i, i+1)` of triangle `t` joining two vertices of the same ring, with
    /// the ring radius.
    pub fn ring_edge(&self, t: usize) -> Option<(usize, f64)> {
        let tri = self.triangles[t];
        (0..3).find_map(|i| {
            let (ra, rb) = (radius(self.vertices[tri[i]]), radius(self.vertices[tri[(i + 1) % 3]]));
            (ra > 0.0 && (ra - rb).abs() <= RING_TOL).then_some((i, ra))
        })
    }

    /// Strips between full rings are mapped in polar coordinates; elsewhere elements are
    /// straight except for an arc on Γ, on the inner circle, or on the innermost full ring.
    pub fn element_map(&self, t: usize) -> ElementMap {
        let tri = self.triangles[t];
        let angle = |i: usize| self.vertices[i][1].atan2(self.vertices[i][0]);
        let r = tri.map(|i| radius(self.vertices[i]));
        if self.polar_from < 1.0 && r.iter().all(|&x| x >= self.polar_from - RING_TOL) {
            let t0 = angle(tri[0]);
            let theta = [t0, t0 + wrap(angle(tri[1]) - t0), t0 + wrap(angle(tri[2]) - t0)];
            return ElementMap { local: [0, 1, 2], p: tri.map(|i| self.vertices[i]), kind: MapKind::Polar { r, theta } };
        }
        let curved = self.ring_edge(t).filter(|&(i, rad)| {
            rad >= self.polar_from - RING_TOL || self.tags[tri[i]] == Tag::GammaC
        });
        let (rot, kind) = match curved {
            Some((i, radius)) => {
                let ta = angle(tri[i]);
                let sweep = wrap(angle(tri[(i + 1) % 3]) - ta);
                (i, MapKind::Blended(Arc { radius, start: ta, sweep }))
            }
            None => (0, MapKind::Affine),
        };
        let local = [rot, (rot + 1) % 3, (rot + 2) % 3];
        ElementMap { local, p: local.map(|i| self.vertices[tri[i]]), kind }
    }

    /// Area of the meshed domain, with its curved edges.
    pub fn area(&self) -> f64 {
        (0..self.triangles.len())
            .map(|t| {
                let m = self.element_map(t);
                if m.is_affine() {
                    return self.triangle_area(t);
                }
                reference_rule().iter().map(|&(x, y, w)| w * m.jacobian(x, y).1).sum()
            })
            .sum()
    }

    /// Largest circumscribed-circle diameter.
    pub fn size(&self) -> f64 {
        self.triangles
            .iter()
            .enumerate()
            .map(|(t, &[a, b, c])| {
                let d = |p: usize, q: usize| {
                    let (x, y) = (self.vertices[p], self.vertices[q]);
                    ((x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2)).sqrt()
                };
                d(a, b) * d(b, c) * d(c, a) / (2.0 * self.triangle_area(t))
            })
            .fold(0.0, f64::max)
    }

    /// Largest ratio of longest edge to the height on it.
    pub fn max_aspect(&self) -> f64 {
        self.triangles
            .iter()
            .enumerate()
            .map(|(t, &[a, b, c])| {
                let d = |p: usize, q: usize| {
                    let (x, y) = (self.vertices[p], self.vertices[q]);
                    ((x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2)).sqrt()
                };
                let long = d(a, b).max(d(b, c)).max(d(c, a));
                long * long / (2.0 * self.triangle_area(t))
            })
            .fold(0.0, f64::max)
    }

    /// Checks orientation, index ranges, vertex usage and boundary radii.
    pub fn validate(&self, inner_radius: Option<f64>) -> Result<()> {
        let mut used = vec![false; self.vertices.len()];
        for (t, tri) in self.triangles.iter().enumerate() {
            if tri.iter().any(|&i| i >= self.vertices.len()) {
                return Err(Error::Precondition(format!("triangle {t} indexes past the vertex list")));
            }
            if self.triangle_area(t) <= 0.0 {
                return Err(Error::Precondition(format!("triangle {t} is not positively oriented")));
            }
            tri.iter().for_each(|&i| used[i] = true);
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::Precondition(format!("vertex {i} belongs to no triangle")));
        }
        for (i, (v, tag)) in self.vertices.iter().zip(&self.tags).enumerate() {
            let r = radius(*v);
            let target = match tag {
                Tag::Gamma => 1.0,
                Tag::GammaC => inner_radius.unwrap_or(f64::NAN),
                Tag::Interior => continue,
            };
            if !((r - target).abs() <= 1e-12) {
                return Err(Error::Precondition(format!("boundary vertex {i} at radius {r}")));
            }
        }
        Ok(())
    }

    /// `N M`, then `N` lines `x y tag` (tag 0 interior, 1 Γ, 2 inner circle), then `M` lines `i j k`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertices.len(), self.triangles.len());
        for (v, t) in self.vertices.iter().zip(&self.tags) {
            let _ = writeln!(out, "{:.17e} {:.17e} {}", v[0], v[1], t.code());
        }
        for t in &self.triangles {
            let _ = writeln!(out, "{} {} {}", t[0], t[1], t[2]);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let bad = |line: usize, msg: &str| Error::Parse { line: line + 1, msg: msg.into() };
        let (ln, head) = lines.next().ok_or_else(|| bad(0, "empty mesh file"))?;
        let counts: Vec<usize> = head.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(ln, "expected vertex and triangle counts"))?;
        let [nv, nt] = counts[..] else { return Err(bad(ln, "expected two counts")) };
        let mut vertices = Vec::with_capacity(nv);
        let mut tags = Vec::with_capacity(nv);
        for _ in 0..nv {
            let (ln, l) = lines.next().ok_or_else(|| bad(ln, "missing vertex line"))?;
            let f: Vec<&str> = l.split_whitespace().collect();
            let (Some(x), Some(y), Some(t), 3) = (
                f.first().and_then(|v| v.parse().ok()),
                f.get(1).and_then(|v| v.parse().ok()),
                f.get(2).and_then(|v| v.parse::<u8>().ok()).and_then(Tag::from_code),
                f.len(),
            ) else {
                return Err(bad(ln, "expected `x y tag`"));
            };
            vertices.push([x, y]);
            tags.push(t);
        }
        let mut triangles = Vec::with_capacity(nt);
        for _ in 0..nt {
            let (ln, l) = lines.next().ok_or_else(|| bad(ln, "missing triangle line"))?;
            let idx: Vec<usize> = l.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(ln, "expected `i j k`"))?;
            let [a, b, c] = idx[..] else { return Err(bad(ln, "expected three indices")) };
            triangles.push([a, b, c]);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(bad(ln, "trailing data"));
        }
        if vertices.len() != tags.len() {
            return Err(bad(0, "tag count mismatch"));
        }
        Ok(Self::new(vertices, triangles, tags))
    }
}
