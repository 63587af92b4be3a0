//! Desk-scale numerical verification of sharp weighted and critical Hardy and
//! Rellich inequalities for radial derivations on rotationally symmetric
//! Cartan-Hadamard model manifolds (constant sectional curvature `-b`).
//!
//! Every inequality is reduced, through geodesic polar coordinates, to
//! one-dimensional weighted radial integrals. The angular factor `|S^{n-1}|`
//! is common to both sides of every inequality and is dropped throughout.
//!
//! Module map:
//!
//! - [`geometry`]: curvature functions `ct_b`, `D_b`, the density `J_b` and the
//!   Poincare-ball coordinate maps.
//! - [`jets`]: truncated Taylor arithmetic and the radial operators
//!   `d/drho`, `Delta_{g,rho}` and their iterates.
//! - [`quadrature`]: adaptive Gauss-Kronrod integration with endpoint
//!   regularising substitutions, plus an independent graded-mesh oracle.
//! - [`constants`]: sharp constants and parameter-range predicates.
//! - [`corpus`]: compactly supported test profiles and extremizer families.
//! - [`functionals`]: both sides of every inequality, exact identities,
//!   curvature improvements and sharpness sweeps.
//! - [`harmonics`]: the mode-wise comparison of the radial and full
//!   Laplacian in hyperbolic space.
//! - [`exec`]: data-parallel batch evaluation (rayon behind the `parallel`
//!   feature, sequential otherwise).

// NaN-rejecting guards are written as `!(x > lo)` on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod functionals;
pub mod geometry;
pub mod harmonics;
pub mod jets;
pub mod quadrature;

pub use error::{Error, Result};
pub use geometry::ModelManifold;
pub use jets::{Jet, RadialFunction};
pub use quadrature::{QuadratureResult, SingularWeight, Tolerance};
