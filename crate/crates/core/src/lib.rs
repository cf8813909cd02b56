//! Computational geometry of hypersurfaces in products M²κ₁ × M²κ₂ of
//! 2-dimensional space forms.
//!
//! The crate is layered bottom-up:
//!
//! - [`spaceform`]: the plane, the sphere and the hyperboloid, with closed-form geodesics.
//! - [`ambient`]: the product manifold, its product structure P, the complex
//!   structures J₁, J₂ and the curvature tensor.
//! - [`hypersurface`]: parametrized hypersurfaces, unit normal, product angle
//!   function C = ⟨PN, N⟩, numeric shape operator and the Ricci display.
//! - [`jacobi`]: the parallel-hypersurface flow through the Jacobi matrix Q,
//!   det Q in closed form and as a truncated power series, and the closed forms
//!   of its derivatives at l = 0.
//! - [`classify`]: the three κ₁ ≠ κ₂ case systems that force C to be constant,
//!   the example hypersurfaces, and isoparametric reports.
//! - [`sampling`]: seeded random shape operators, angles, points and tangent vectors.
//! - [`cli`]: the batch verification harness behind the `prodform-geo` binary.

pub mod ambient;
pub mod classify;
pub mod cli;
pub mod error;
pub mod hypersurface;
pub mod jacobi;
pub mod sampling;
pub mod scalar;
pub mod spaceform;

pub use error::{GeoError, Result};
