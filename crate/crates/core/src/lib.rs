//! Wavenumber-weighted trace norms on model geometries, computed three ways:
//! spectral Dirichlet-to-Neumann formulas, direct Gagliardo quadrature and
//! P1 finite elements, plus the boundary integral operators of the
//! modified Helmholtz equation on the unit circle.

pub mod error;
pub mod extension_spectral;
pub mod fem_oracle;
pub mod gagliardo_quad;
pub mod harness;
pub mod layer_ops;
pub mod quadrature;
pub mod special_fn;
pub mod trace_spaces;

pub use error::{Error, Result};
