//! Truncated Taylor arithmetic and the radial differential operators built on
//! it.

mod arith;
pub(crate) mod radial;

pub use arith::{Jet, MAX_ORDER};
pub use radial::{
    drho_laplacian_power, radial_derivative, radial_laplacian, radial_laplacian_power,
    radial_laplacian_with, sqrt_even_jet, JetFn, RadialFunction, MAX_LAPLACIAN_POWER,
};
