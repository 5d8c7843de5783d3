//! P1 finite elements on structured polar meshes: an independent, real-σ
//! check of the minimal-extension energies.

mod mesh;
mod solve;

pub use mesh::{
    mesh_annulus, mesh_annulus_graded, mesh_disk, mesh_disk_graded, Arc, ElementMap, MapKind, Mesh, Tag, MAX_H, MIN_H,
};
pub use solve::{
    fem_energy, solve_min_extension, solve_min_extension_with, BoundaryData, FemField, FemSolution, CG_TOLERANCE,
};

/// First-ring spacing next to Γ, as a fraction of `h`, that resolves the `e^{-σ(1-r)}` layer.
pub fn boundary_layer_factor(sigma: f64) -> f64 {
    (4.0 / sigma).min(1.0)
}
