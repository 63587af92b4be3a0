use std::fmt;

use serde::{Deserialize, Serialize};

use super::cases::{plan, Plan, Term};
use super::registry::{CaseId, InequalityCase};
use super::sample::Probe;
use crate::constants::CaseParams;
use crate::error::{Error, Result};
use crate::geometry::ModelManifold;
use crate::jets::RadialFunction;
use crate::quadrature::{QuadratureResult, RadialIntegrand, Tolerance};

/// Radius where both the sampling regime and the critical weight split.
const SPLIT: f64 = 0.5;

/// Absolute tolerance as a fraction of `rel * max(|lhs|, |C rhs|)` for cases
/// too small for the default floor.
const ABS_FRACTION: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NumericalFailure,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NumericalFailure => "numerical-failure",
        })
    }
}

/// One radial integral as computed, before its coefficient is applied.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralRecord {
    pub name: String,
    pub coefficient: f64,
    pub value: f64,
    pub error: f64,
    pub converged: bool,
    /// Independent graded-mesh value, when requested.
    pub oracle: Option<f64>,
}

/// Outcome of checking one case on one profile, oriented as `LHS <= C * RHS`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub case: CaseId,
    pub params: CaseParams,
    pub corpus_id: String,
    /// Left-hand side including any curvature improvement terms.
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    /// `constant * rhs - lhs`.
    pub slack: f64,
    /// Improvement terms (with `base_lhs`) or identity remainders, coefficients applied.
    pub remainder_terms: Vec<(String, f64)>,
    /// Signed `lhs - (constant * rhs - remainders)` for identity cases.
    pub identity_residual: Option<f64>,
    pub quad_error_budget: f64,
    pub status: Status,
    pub integrals: Vec<IntegralRecord>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// `max(|lhs|, |constant * rhs|)`, the magnitude relative tolerances refer to.
    pub fn scale(&self) -> f64 {
        self.lhs.abs().max((self.constant * self.rhs).abs())
    }

    /// `|identity_residual| / scale`, zero for a vanishing profile.
    pub fn relative_residual(&self) -> Option<f64> {
        self.identity_residual.map(|r| {
            let s = self.scale();
            if s == 0.0 {
                r.abs()
            } else {
                r.abs() / s
            }
        })
    }

    /// `slack / scale`.
    pub fn relative_slack(&self) -> f64 {
        let s = self.scale();
        if s == 0.0 {
            self.slack
        } else {
            self.slack / s
        }
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.remainder_terms.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalOptions {
    pub tol: Tolerance,
    /// Also evaluate every integral with the independent oracle.
    pub oracle: bool,
    /// Multiplies the sharp constant; values below 1 probe the failure path.
    pub constant_factor: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            tol: Tolerance { rel: 1e-12, abs: 1e-16 },
            oracle: false,
            constant_factor: 1.0,
        }
    }
}

struct Evaluator<'a> {
    m: ModelManifold,
    f: &'a dyn RadialFunction,
    critical: bool,
    breaks: Vec<f64>,
    opts: EvalOptions,
}

impl Evaluator<'_> {
    fn run(&self, term: &Term, coefficient: f64) -> IntegralRecord {
        let probe = Probe { m: self.m, f: self.f, need: term.need, critical: self.critical };
        let g = |rho: f64| probe.sample(rho).map(|s| (term.g)(&s) * s.j).unwrap_or(f64::NAN);
        let ri = RadialIntegrand::new(g, term.alpha, self.f.inner_radius(), self.f.support_radius())
            .with_log_power(term.log)
            .with_breaks(self.breaks.clone());
        let r = match ri.integrate(self.opts.tol) {
            Ok(r) => r,
            Err(Error::NonConvergence { best }) => best,
            Err(_) => QuadratureResult { value: f64::NAN, error_estimate: f64::NAN, evaluations: 0, converged: false },
        };
        let oracle = if self.opts.oracle { Some(ri.oracle().unwrap_or(f64::NAN)) } else { None };
        IntegralRecord {
            name: term.name.to_string(),
            coefficient,
            value: r.value,
            error: r.error_estimate,
            converged: r.converged && r.value.is_finite() && r.error_estimate.is_finite(),
            oracle,
        }
    }
}

/// Evaluates both sides of `case` on `f` with default options.
pub fn evaluate_case(case: &InequalityCase, m: &ModelManifold, f: &dyn RadialFunction) -> Result<VerificationReport> {
    evaluate_case_with(case, m, f, &EvalOptions::default())
}

/// Evaluates both sides of `case` on `f`, plus remainder or improvement terms.
///
/// Invalid parameters, a manifold that disagrees with the case, or a profile
/// that is not admissible for the case are errors; quadrature trouble is
/// reported as [`Status::NumericalFailure`].
pub fn evaluate_case_with(
    case: &InequalityCase,
    m: &ModelManifold,
    f: &dyn RadialFunction,
    opts: &EvalOptions,
) -> Result<VerificationReport> {
    case.id.check(&case.params)?;
    if m.n != case.params.n || m.b != case.params.b {
        return Err(Error::Contract(format!(
            "manifold (n = {}, b = {}) does not match case parameters (n = {}, b = {})",
            m.n, m.b, case.params.n, case.params.b
        )));
    }
    if !f.support_radius().is_finite() {
        return Err(Error::Contract(format!("`{}` is not compactly supported", f.id())));
    }
    let Plan { constant, lhs, rhs, improvements, remainders, critical, notes } = plan(case, f)?;
    let mut breaks = f.breakpoints();
    breaks.push(SPLIT);
    let mut ev = Evaluator { m: *m, f, critical, breaks, opts: *opts };

    let constant = constant * opts.constant_factor;
    let mut lhs_rec = ev.run(&lhs, 1.0);
    let mut rhs_rec = ev.run(&rhs, constant);
    // an absolute floor above the size of the case would swamp every term
    let size = lhs_rec.value.abs().max((constant * rhs_rec.value).abs());
    let abs = opts.tol.abs.min(ABS_FRACTION * opts.tol.rel * size);
    if size.is_finite() && abs > 0.0 && abs < opts.tol.abs {
        ev.opts.tol.abs = abs;
        lhs_rec = ev.run(&lhs, 1.0);
        rhs_rec = ev.run(&rhs, constant);
    }
    let extra: Vec<IntegralRecord> = improvements
        .iter()
        .chain(remainders.iter())
        .map(|(c, t)| ev.run(t, *c))
        .collect();

    let (n_imp, identity) = (improvements.len(), !remainders.is_empty());
    let mut lhs_total = lhs_rec.value;
    let mut terms = Vec::new();
    if n_imp > 0 {
        terms.push(("base_lhs".to_string(), lhs_rec.value));
    }
    let mut removed = 0.0;
    for (i, r) in extra.iter().enumerate() {
        let v = r.coefficient * r.value;
        terms.push((r.name.clone(), v));
        if i < n_imp {
            lhs_total += v;
        } else {
            removed += v;
        }
    }
    let rhs_value = rhs_rec.value;
    let rhs_scaled = constant * rhs_value;
    let slack = rhs_scaled - lhs_total;
    let residual = identity.then_some(lhs_rec.value - (rhs_scaled - removed));

    let mut integrals = vec![lhs_rec, rhs_rec];
    integrals.extend(extra);
    let budget: f64 = integrals.iter().map(|r| r.coefficient.abs() * r.error).sum();
    let converged = integrals.iter().all(|r| r.converged);
    let scale = lhs_total.abs().max(rhs_scaled.abs());
    let threshold = 10.0 * budget + 1e-12 * scale;
    let status = if !converged || !slack.is_finite() {
        Status::NumericalFailure
    } else if slack >= -threshold && residual.is_none_or(|r| r.abs() <= threshold) {
        Status::Pass
    } else {
        Status::Fail
    };

    Ok(VerificationReport {
        case: case.id,
        params: case.params,
        corpus_id: f.id(),
        lhs: lhs_total,
        rhs: rhs_value,
        constant,
        slack,
        remainder_terms: terms,
        identity_residual: residual,
        quad_error_budget: budget,
        status,
        integrals,
        notes,
    })
}

/// Signed residual of the exact identity behind `case`.
pub fn identity_residual(case: &InequalityCase, m: &ModelManifold, f: &dyn RadialFunction) -> Result<f64> {
    if !case.id.has_identity() {
        return Err(Error::Contract(format!("{} carries no exact identity", case.id)));
    }
    let r = evaluate_case(case, m, f)?;
    if r.status == Status::NumericalFailure {
        return Err(Error::NonConvergence { best: QuadratureResult::exact(r.identity_residual.unwrap_or(f64::NAN)) });
    }
    Ok(r.identity_residual.expect("identity cases report a residual"))
}

/// Evaluates a curvature-improved case.
pub fn quantitative_case(case: &InequalityCase, m: &ModelManifold, f: &dyn RadialFunction) -> Result<VerificationReport> {
    if !case.id.is_quantitative() {
        return Err(Error::Contract(format!("{} is not a curvature-improved case", case.id)));
    }
    evaluate_case(case, m, f)
}

/// The two-step structure of the second-order Rellich inequality: a Hardy
/// step at weight `beta + p` followed by the first-to-second order step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RellichChain {
    pub rellich2_slack: f64,
    pub hardy_slack: f64,
    pub rellich12_slack: f64,
    /// `((n - 2p - beta)/p)^p`, the reciprocal Hardy constant at weight `beta + p`.
    pub hardy_factor: f64,
    /// `rellich2_slack - (rellich12_slack / hardy_factor + hardy_slack)`.
    pub defect: f64,
    pub error_budget: f64,
}

pub fn rellich2_chain(params: CaseParams, m: &ModelManifold, f: &dyn RadialFunction) -> Result<RellichChain> {
    let r2 = evaluate_case(&InequalityCase::new(CaseId::RELLICH_2, params)?, m, f)?;
    let r12 = evaluate_case(&InequalityCase::new(CaseId::RELLICH_12, params)?, m, f)?;
    let hp = CaseParams { beta: params.beta + params.p, ..params };
    let h = evaluate_case(&InequalityCase::new(CaseId::HARDY_SUB, hp)?, m, f)?;
    let k0 = ((params.nf() - 2.0 * params.p - params.beta) / params.p).powf(params.p);
    Ok(RellichChain {
        rellich2_slack: r2.slack,
        hardy_slack: h.slack,
        rellich12_slack: r12.slack,
        hardy_factor: k0,
        defect: r2.slack - (r12.slack / k0 + h.slack),
        error_budget: r2.quad_error_budget + h.quad_error_budget + r12.quad_error_budget / k0,
    })
}
