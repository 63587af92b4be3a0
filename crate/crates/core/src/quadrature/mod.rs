//! One-dimensional integration over `(0, R)` with the endpoint singularities
//! of the radial weights handled by exact substitutions.

mod gauss_kronrod;
mod oracle;
mod weighted;

use serde::Serialize;

use crate::error::{Error, Result};

pub use gauss_kronrod::{integrate, MAX_SUBDIVISIONS};
pub use oracle::oracle_integrate;
pub use weighted::{integrate_weighted, oracle_weighted, RadialIntegrand};

/// Requested accuracy: converged iff `error <= max(rel * |value|, abs)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-10, abs: 1e-13 }
    }
}

impl Tolerance {
    pub fn target(&self, value: f64) -> f64 {
        (self.rel * value.abs()).max(self.abs)
    }
}

/// Value of an integral with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadratureResult {
    pub fn exact(value: f64) -> Self {
        QuadratureResult {
            value,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    /// Sum of two integrals over adjacent pieces.
    pub fn combine(self, other: QuadratureResult) -> Self {
        QuadratureResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    /// `c * self`.
    pub fn scale(self, c: f64) -> Self {
        QuadratureResult {
            value: c * self.value,
            error_estimate: c.abs() * self.error_estimate,
            ..self
        }
    }
}

/// Endpoint weight at the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SingularWeight {
    None,
    /// `rho^alpha`, `alpha > -1`.
    Power(f64),
    /// `rho^-1 (ln 1/rho)^-p`, `p > 1`.
    CriticalLog(f64),
}

impl SingularWeight {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SingularWeight::Power(a) if !(a > -1.0 && a.is_finite()) => Err(Error::domain(
                "SingularWeight",
                format!("power weight exponent {a} must exceed -1"),
            )),
            SingularWeight::CriticalLog(p) if !(p > 1.0 && p.is_finite()) => Err(Error::domain(
                "SingularWeight",
                format!("logarithmic weight exponent {p} must exceed 1"),
            )),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::LN_2;

    #[test]
    fn weighted_examples() {
        let t = Tolerance::default();
        let r = integrate_weighted(|_| 1.0, SingularWeight::Power(-0.5), 1.0, t).unwrap();
        assert_relative_eq!(r.value, 2.0, max_relative = 1e-12);
        let r = integrate_weighted(|_| 1.0, SingularWeight::CriticalLog(2.0), 0.5, t).unwrap();
        assert_relative_eq!(r.value, 1.0 / LN_2, max_relative = 1e-11);
        let r = integrate_weighted(|_| 1.0, SingularWeight::Power(0.0), 0.7, t).unwrap();
        assert_relative_eq!(r.value, 0.7, max_relative = 1e-14);
        assert!(integrate_weighted(|_| 1.0, SingularWeight::Power(-1.0), 1.0, t).is_err());
        assert!(integrate_weighted(|_| 1.0, SingularWeight::CriticalLog(1.0), 0.5, t).is_err());
        assert!(integrate_weighted(|_| 1.0, SingularWeight::CriticalLog(2.0), 1.5, t).is_err());
    }

    #[test]
    fn oracle_agrees_on_weighted_examples() {
        let v = oracle_weighted(|_| 1.0, SingularWeight::CriticalLog(2.0), 0.5);
        assert_relative_eq!(v, 1.0 / LN_2, max_relative = 1e-12);
        let v = oracle_weighted(|_| 1.0, SingularWeight::Power(-0.9), 1.0);
        assert_relative_eq!(v, 10.0, max_relative = 1e-8);
        let t = Tolerance::default();
        let f = |x: f64| (1.0 - x * x).powi(4);
        let a = integrate(f, 0.0, 1.0, t).unwrap().value;
        assert_relative_eq!(a, oracle_integrate(f, 0.0, 1.0), max_relative = 1e-10);
    }

    #[test]
    fn critical_transform_absorbs_weight() {
        // with f == 1 on (0, R] the transformed integral is exactly vmax
        for &p in &[1.05, 1.5, 2.0, 3.0] {
            for &r in &[0.1f64, 0.3, 0.5] {
                let exact = (-r.ln()).powf(1.0 - p) / (p - 1.0);
                let v = integrate_weighted(|_| 1.0, SingularWeight::CriticalLog(p), r, Tolerance::default())
                    .unwrap()
                    .value;
                assert_relative_eq!(v, exact, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn radial_integrand_routes_agree() {
        let t = Tolerance::default();
        // int_0^1 (1 - rho^2)^4 rho^-0.5 drho with a breakpoint
        let ri = RadialIntegrand::new(|r: f64| (1.0 - r * r).powi(4), -0.5, 0.0, 1.0).with_breaks(vec![0.3]);
        let a = ri.integrate(t).unwrap().value;
        assert_relative_eq!(a, ri.oracle().unwrap(), max_relative = 1e-10);
        // int_{1e-6}^{1} rho^-1 drho in log coordinates
        let ri = RadialIntegrand::new(|_| 1.0, -1.0, 1e-6, 1.0);
        assert_relative_eq!(ri.integrate(t).unwrap().value, 6.0 * 10f64.ln(), max_relative = 1e-13);
        // critical weight with a slowly decaying log exponent
        let ri = RadialIntegrand::new(|_| 1.0, -1.0, 0.0, 0.5).with_log_power(-1.04);
        let exact = LN_2.powf(-0.04) / 0.04;
        assert_relative_eq!(ri.integrate(t).unwrap().value, exact, max_relative = 1e-11);
        assert_relative_eq!(ri.oracle().unwrap(), exact, max_relative = 1e-9);
    }

    #[test]
    fn linearity() {
        let t = Tolerance::default();
        let f = |x: f64| (3.0 * x).sin();
        let g = |x: f64| (1.0 - x).powi(3);
        let (a, b) = (2.5, -0.75);
        let rf = integrate_weighted(f, SingularWeight::Power(-0.3), 1.0, t).unwrap();
        let rg = integrate_weighted(g, SingularWeight::Power(-0.3), 1.0, t).unwrap();
        let rs = integrate_weighted(|x| a * f(x) + b * g(x), SingularWeight::Power(-0.3), 1.0, t).unwrap();
        let combined = a.abs() * rf.error_estimate + b.abs() * rg.error_estimate + rs.error_estimate;
        assert!((rs.value - (a * rf.value + b * rg.value)).abs() <= combined + 1e-15);
    }
}
