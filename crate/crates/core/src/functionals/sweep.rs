use serde::Serialize;

use super::cases::sweep_case;
use super::registry::InequalityCase;
use super::report::{evaluate_case_with, EvalOptions, Status};
use crate::constants::CaseParams;
use crate::corpus::{hardy_extremizer, ExtremizerFamily};
use crate::error::{Error, Result};
use crate::exec;
use crate::geometry::{density, ModelManifold};
use crate::jets::RadialFunction;
use crate::quadrature::{RadialIntegrand, Tolerance};

/// One member of an extremizer sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub scale: f64,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs / lhs`, bounded below by the reciprocal sharp constant.
    pub quotient: f64,
    /// `quotient - 1 / constant`.
    pub gap: f64,
    /// `constant * rhs - lhs`.
    pub slack: f64,
    /// Error budget of `gap`.
    pub error: f64,
    pub status: Status,
}

/// Quotients along an extremizer family, for decreasing scales.
pub fn sharpness_sweep(family: &ExtremizerFamily, scales: &[f64]) -> Result<Vec<SweepPoint>> {
    sharpness_sweep_with(family, scales, &EvalOptions::default())
}

pub fn sharpness_sweep_with(family: &ExtremizerFamily, scales: &[f64], opts: &EvalOptions) -> Result<Vec<SweepPoint>> {
    if scales.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Contract("sweep scales must be strictly decreasing".into()));
    }
    let case = InequalityCase::new(sweep_case(family.kind), family.params)?;
    let m = ModelManifold::new(family.params.n, family.params.b)?;
    let members = scales.iter().map(|&s| family.member(s)).collect::<Result<Vec<_>>>()?;
    let reports = exec::map(&members, |f| evaluate_case_with(&case, &m, f.as_ref(), opts));
    scales
        .iter()
        .zip(reports)
        .map(|(&scale, r)| {
            let r = r?;
            let (lhs_err, rhs_err) = (r.integrals[0].error, r.integrals[1].error);
            let quotient = r.rhs / r.lhs;
            let error = quotient.abs() * (lhs_err / r.lhs.abs() + rhs_err / r.rhs.abs());
            Ok(SweepPoint {
                scale,
                lhs: r.lhs,
                rhs: r.rhs,
                quotient,
                gap: quotient - 1.0 / r.constant,
                slack: r.slack,
                error,
                status: r.status,
            })
        })
        .collect()
}

/// The two cutoff-annulus contributions to `rhs - lhs / C` for a Hardy
/// extremizer: integrals of `|f'|^p rho^-beta - k^p |f|^p rho^(-p-beta)` over
/// `[eps, 2 eps]` and `[1, 2]`. On the plateau in between the integrand
/// vanishes identically when `b = 0`, so for flat space these two numbers are
/// the whole gap numerator; they stay bounded as `eps -> 0`.
pub fn hardy_side_terms(params: CaseParams, eps: f64) -> Result<(f64, f64)> {
    let f = hardy_extremizer(&params, eps)?;
    let m = ModelManifold::new(params.n, params.b)?;
    let (p, beta, nf) = (params.p, params.beta, params.nf());
    let kp = ((nf - p - beta) / p).powf(p);
    let g = |rho: f64| -> f64 {
        let j = f.jet(rho, 1);
        let w = density(&m, rho).unwrap_or(f64::NAN);
        (j.coeff(1).abs().powf(p) - kp * j.value().abs().powf(p) / rho.powf(p)) * w
    };
    let annulus = |a: f64, b: f64| -> Result<f64> {
        let ri = RadialIntegrand::new(g, nf - 1.0 - beta, a, b);
        Ok(ri.integrate(Tolerance { rel: 1e-12, abs: 1e-16 })?.value)
    };
    Ok((annulus(eps, 2.0 * eps)?, annulus(1.0, 2.0)?))
}
