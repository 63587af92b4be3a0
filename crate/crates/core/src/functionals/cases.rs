//! Each registry case as a list of one-dimensional radial integrals.
//!
//! Every case is normalized to `LHS <= C * RHS`. Integrands are written as
//! `g(rho) rho^alpha (ln 1/rho)^log J_b(rho)` with `alpha` including the polar
//! factor `rho^(n-1)`; the angular measure is common to all terms and dropped.

use super::hyperbolic::hyperbolic_weight_constant;
use super::registry::{CaseId, CaseId::*, InequalityCase};
use super::remainder::remainder_rp;
use super::sample::{Need, Sample};
use crate::constants::{
    c_even, c_odd, critical_even_constant, critical_odd_constant, critical_rellich2_constant,
};
use crate::error::{Error, Result};
use crate::jets::{RadialFunction, MAX_LAPLACIAN_POWER};

type Integrand = dyn Fn(&Sample) -> f64 + Send + Sync;

pub(crate) struct Term {
    pub name: &'static str,
    pub need: Need,
    pub alpha: f64,
    pub log: f64,
    pub g: Box<Integrand>,
}

fn term(name: &'static str, need: Need, alpha: f64, log: f64, g: impl Fn(&Sample) -> f64 + Send + Sync + 'static) -> Term {
    Term { name, need, alpha, log, g: Box::new(g) }
}

/// A case reduced to integrals: `lhs + sum(improvements) <= constant * rhs`,
/// and for identity cases `lhs = constant * rhs - sum(remainders)`.
pub(crate) struct Plan {
    pub constant: f64,
    pub lhs: Term,
    pub rhs: Term,
    pub improvements: Vec<(f64, Term)>,
    pub remainders: Vec<(f64, Term)>,
    pub critical: bool,
    pub notes: Vec<String>,
}

/// `2^n C(n)`: the Lebesgue-measure constant `c` of the hyperbolic displays.
pub fn hyperbolic_dx_constant(n: u32) -> f64 {
    2f64.powi(n as i32) * hyperbolic_weight_constant(n)
}

pub(crate) fn plan(case: &InequalityCase, f: &dyn RadialFunction) -> Result<Plan> {
    let id = case.id;
    let c = case.params;
    let (nn, p, beta, b, l) = (c.nf(), c.p, c.beta, c.b, c.l);
    let lf = l as f64;
    let critical = id.is_critical();
    let gamma = f.log_growth();

    if gamma != 0.0 && !critical {
        return Err(Error::Contract(format!(
            "`{}` grows logarithmically at the origin; only critical cases accept it",
            f.id()
        )));
    }
    if critical && f.support_radius() > 1.0 {
        return Err(Error::Contract(format!(
            "critical cases need support in the unit ball; `{}` reaches {}",
            f.id(),
            f.support_radius()
        )));
    }
    let order = id.derivative_order(l);
    // W^{k,inf} suffices: the k-th derivative may jump at the support edge
    if order > f.min_smoothness() + 1 {
        return Err(Error::Contract(format!(
            "{id} applies {order} derivatives but `{}` is only C^{}",
            f.id(),
            f.min_smoothness()
        )));
    }
    if l > MAX_LAPLACIAN_POWER {
        return Err(Error::Contract(format!("Laplacian power {l} exceeds {MAX_LAPLACIAN_POWER}")));
    }

    let pw = move |x: f64| if p == 2.0 { x * x } else { x.abs().powf(p) };
    // plain exponents include the polar factor rho^(n-1)
    let a = |e: f64| e + nn - 1.0;
    // critical exponents for a quantity of derivative order k (see Sample)
    let ca = |e: f64, k: usize| e + nn - 1.0 - k as f64 * p;
    let cl = |e: f64, k: usize| e + p * if k == 0 { gamma } else { gamma - 1.0 };
    let mut notes = Vec::new();
    let hyp_c = if id.is_hyperbolic() {
        let cc = hyperbolic_dx_constant(c.n);
        notes.push(format!(
            "Lebesgue-measure constant c = 2^n C(n) = {cc} with C(n) = {}",
            hyperbolic_weight_constant(c.n)
        ));
        cc
    } else {
        0.0
    };

    let mut improvements = Vec::new();
    let mut remainders = Vec::new();
    let (constant, lhs, rhs);

    match id {
        HARDY_SUB | HARDY_QUANT_D | HARDY_QUANT_PI | HYP_HARDY => {
            let k = (nn - p - beta) / p;
            constant = k.powf(-p);
            lhs = term("lhs", Need::F, a(-p - beta), 0.0, move |s| pw(s.f));
            rhs = term("rhs", Need::D, a(-beta), 0.0, move |s| pw(s.d));
            match id {
                HARDY_SUB => {
                    remainders.push((
                        p,
                        term("rp", Need::D, a(-beta - p), 0.0, move |s| {
                            remainder_rp(s.f, -s.rho * s.d / k, p)
                        }),
                    ));
                    remainders.push((
                        (nn - 1.0) / k,
                        term("jterm", Need::F, a(-p - beta), 0.0, move |s| pw(s.f) * s.dd),
                    ));
                }
                HARDY_QUANT_D => improvements.push((
                    (nn - 1.0) / k,
                    term("improvement", Need::F, a(-p - beta), 0.0, move |s| pw(s.f) * s.dd),
                )),
                HARDY_QUANT_PI => improvements.push((
                    3.0 * b * (nn - 1.0) / k,
                    term("improvement", Need::F, a(2.0 - p - beta), 0.0, move |s| pw(s.f) * s.pw),
                )),
                _ => improvements.push((
                    3.0 * hyp_c * (nn - 1.0) / k,
                    term("improvement_dx", Need::F, a(2.0 - p - beta), 0.0, move |s| pw(s.f) * s.dx),
                )),
            }
        }
        CRIT_HARDY | CRIT_QUANT_D | CRIT_QUANT_PI | CRIT_N | HYP_CRIT => {
            let pc = p / (p - 1.0);
            constant = pc.powf(p);
            lhs = term("lhs", Need::F, ca(-nn, 0), cl(-p, 0), move |s| pw(s.f));
            rhs = term("rhs", Need::D, ca(p - nn, 1), cl(0.0, 1), move |s| pw(s.d));
            let weight_d = move |s: &Sample| pw(s.f) * s.dq;
            match id {
                CRIT_HARDY => {
                    remainders.push((
                        p,
                        term("rp", Need::D, ca(p - nn, 1), cl(0.0, 1), move |s| {
                            remainder_rp(s.f, -pc * s.d, p)
                        }),
                    ));
                    remainders.push((
                        pc * (nn - 1.0),
                        term("jterm", Need::F, ca(2.0 - nn, 0), cl(1.0 - p, 0), weight_d),
                    ));
                }
                CRIT_QUANT_D => improvements.push((
                    pc * (nn - 1.0),
                    term("improvement", Need::F, ca(2.0 - nn, 0), cl(1.0 - p, 0), weight_d),
                )),
                CRIT_QUANT_PI => improvements.push((
                    3.0 * b * (nn - 1.0) * pc,
                    term("improvement", Need::F, ca(2.0 - nn, 0), cl(1.0 - p, 0), move |s| pw(s.f) * s.pw),
                )),
                HYP_CRIT => improvements.push((
                    3.0 * hyp_c * (nn - 1.0) * pc,
                    term("improvement_dx", Need::F, ca(2.0 - nn, 0), cl(1.0 - p, 0), move |s| pw(s.f) * s.dx),
                )),
                _ => {}
            }
        }
        ONETWO | ONETWO_QUANT => {
            let k = (nn * (p - 1.0) + beta) / p;
            constant = k.powf(-p);
            // rho (f' + (n-1) ct_b f), with rho ct_b = 1 + D_b
            let rt = move |s: &Sample| s.rho * s.d + (nn - 1.0) * (1.0 + s.dd) * s.f;
            lhs = term("lhs", Need::F, a(-p - beta), 0.0, move |s| pw(s.f));
            rhs = term("rhs", Need::D, a(-beta - p), 0.0, move |s| pw(rt(s)));
            if id == ONETWO {
                remainders.push((
                    p,
                    term("rp", Need::D, a(-beta - p), 0.0, move |s| remainder_rp(s.f, rt(s) / k, p)),
                ));
                remainders.push((
                    (p - 1.0) * (nn - 1.0) / k,
                    term("jterm", Need::F, a(-p - beta), 0.0, move |s| pw(s.f) * s.dd),
                ));
            } else {
                improvements.push((
                    3.0 * b * (nn - 1.0) * (p - 1.0) / k,
                    term("improvement", Need::F, a(2.0 - p - beta), 0.0, move |s| pw(s.f) * s.pw),
                ));
            }
        }
        RELLICH_12 | RELLICH_12_QUANT => {
            let k = (nn * (p - 1.0) + beta) / p;
            constant = k.powf(-p);
            lhs = term("lhs", Need::D, a(-p - beta), 0.0, move |s| pw(s.d));
            rhs = term("rhs", Need::lap(1), a(-beta), 0.0, move |s| pw(s.lap));
            if id == RELLICH_12_QUANT {
                improvements.push((
                    3.0 * b * (nn - 1.0) * (p - 1.0) / k,
                    term("improvement", Need::D, a(2.0 - p - beta), 0.0, move |s| pw(s.d) * s.pw),
                ));
            }
        }
        RELLICH_2 | RELLICH_2_QUANT => {
            let k12 = (nn * (p - 1.0) + beta) / p;
            let kh = (nn - 2.0 * p - beta) / p;
            let kk = (k12 * kh).powf(p);
            constant = 1.0 / kk;
            lhs = term("lhs", Need::F, a(-2.0 * p - beta), 0.0, move |s| pw(s.f));
            rhs = term("rhs", Need::lap(1), a(-beta), 0.0, move |s| pw(s.lap));
            if id == RELLICH_2_QUANT {
                improvements.push((
                    3.0 * b * (nn - 1.0) * (p - 1.0) * k12.powf(p - 1.0) / kk,
                    term("improvement_d", Need::D, a(2.0 - p - beta), 0.0, move |s| pw(s.d) * s.pw),
                ));
                improvements.push((
                    3.0 * b * (nn - 1.0) * kh.powf(p - 1.0) * k12.powf(p) / kk,
                    term("improvement_f", Need::F, a(2.0 - 2.0 * p - beta), 0.0, move |s| pw(s.f) * s.pw),
                ));
            }
        }
        CRIT_RELLICH_2 | CRIT_RELLICH_2_QUANT => {
            constant = critical_rellich2_constant(c.n, p)?;
            let kk = 1.0 / constant;
            lhs = term("lhs", Need::F, ca(-nn, 0), cl(-p, 0), move |s| pw(s.f));
            rhs = term("rhs", Need::lap(1), ca(2.0 * p - nn, 2), cl(0.0, 2), move |s| pw(s.lap));
            if id == CRIT_RELLICH_2_QUANT {
                improvements.push((
                    3.0 * b * (nn - 1.0) * (p - 1.0) * (nn - 2.0).powf(p - 1.0) / kk,
                    term("improvement_d", Need::D, ca(p + 2.0 - nn, 1), cl(0.0, 1), move |s| pw(s.d) * s.pw),
                ));
                improvements.push((
                    3.0 * b * (nn - 1.0) * (nn - 2.0).powf(p) * ((p - 1.0) / p).powf(p - 1.0) / kk,
                    term("improvement_f", Need::F, ca(2.0 - nn, 0), cl(1.0 - p, 0), move |s| pw(s.f) * s.pw),
                ));
            }
        }
        RELLICH_EVEN | RELLICH_EVEN_QUANT => {
            constant = c_even(c.n, l, beta, p)?;
            lhs = term("lhs", Need::F, a(-2.0 * lf * p - beta), 0.0, move |s| pw(s.f));
            rhs = term("rhs", Need::lap(l), a(-beta), 0.0, move |s| pw(s.lap));
            if id == RELLICH_EVEN_QUANT {
                improvements.push((
                    3.0 * b * (nn - 1.0) * p / (nn - 2.0 * lf * p - beta),
                    term("improvement", Need::F, a(2.0 - 2.0 * lf * p - beta), 0.0, move |s| pw(s.f) * s.pw),
                ));
            }
        }
        RELLICH_ODD | RELLICH_ODD_QUANT => {
            constant = c_odd(c.n, l, beta, p)?;
            let k = 2.0 * lf + 1.0;
            lhs = term("lhs", Need::F, a(-k * p - beta), 0.0, move |s| pw(s.f));
            rhs = term("rhs", Need::dlap(l), a(-beta), 0.0, move |s| pw(s.dlap));
            if id == RELLICH_ODD_QUANT {
                improvements.push((
                    3.0 * b * (nn - 1.0) * p / (nn - k * p - beta),
                    term("improvement", Need::F, a(2.0 - k * p - beta), 0.0, move |s| pw(s.f) * s.pw),
                ));
            }
        }
        CRIT_EVEN | CRIT_EVEN_QUANT | CRIT_ODD | CRIT_ODD_QUANT => {
            let even = matches!(id, CRIT_EVEN | CRIT_EVEN_QUANT);
            let k = if even { 2 * l } else { 2 * l + 1 };
            constant = if even { critical_even_constant(c.n, l, p)? } else { critical_odd_constant(c.n, l, p)? };
            lhs = term("lhs", Need::F, ca(-nn, 0), cl(-p, 0), move |s| pw(s.f));
            let kp = k as f64 * p;
            rhs = if even {
                term("rhs", Need::lap(l), ca(kp - nn, k), cl(0.0, k), move |s| pw(s.lap))
            } else {
                term("rhs", Need::dlap(l), ca(kp - nn, k), cl(0.0, k), move |s| pw(s.dlap))
            };
            if id.is_quantitative() {
                improvements.push((
                    3.0 * b * (nn - 1.0) * p / (p - 1.0),
                    term("improvement", Need::F, ca(2.0 - nn, 0), cl(1.0 - p, 0), move |s| pw(s.f) * s.pw),
                ));
            }
            if !even {
                notes.push("left-hand measure of the odd critical display read as dV_g".to_string());
            }
        }
        KO_RELLICH | HYP_IMPROVE | HYP_IMPROVE_SAO | HYP_IMPROVED_R => {
            let kk = ((nn + beta) * (nn - 4.0 - beta) / 4.0).powi(2);
            constant = 1.0 / kk;
            lhs = term("lhs", Need::F, a(-beta - 4.0), 0.0, |s| s.f * s.f);
            rhs = term("rhs", Need::lap(1), a(-beta), 0.0, |s| s.lap * s.lap);
            let sao = 3.0 * (nn - 1.0) * (nn - 2.0) * (nn + beta) * (nn - 4.0 - beta) / 4.0 / kk;
            match id {
                HYP_IMPROVE => {
                    improvements.push((
                        3.0 * (nn - 1.0) * (nn + beta) / 2.0 / kk,
                        term("improvement_d", Need::D, a(-beta), 0.0, |s| s.d * s.d * s.pw),
                    ));
                    improvements.push((
                        3.0 * (nn - 1.0) * (nn - 4.0 - beta) * (nn + beta).powi(2) / 8.0 / kk,
                        term("improvement_f", Need::F, a(-beta - 2.0), 0.0, |s| s.f * s.f * s.pw),
                    ));
                }
                HYP_IMPROVE_SAO => improvements.push((
                    sao,
                    term("improvement", Need::F, a(-beta - 2.0), 0.0, |s| s.f * s.f * s.pw),
                )),
                HYP_IMPROVED_R => improvements.push((
                    sao * hyp_c,
                    term("improvement_dx", Need::F, a(-beta - 2.0), 0.0, |s| s.f * s.f * s.dx),
                )),
                _ => {}
            }
        }
        AQ => {
            constant = 4.0 / (nn - beta - 4.0).powi(2);
            lhs = term("lhs", Need::F, a(-beta - 2.0), 0.0, |s| s.f * s.f * s.pw);
            rhs = term("rhs", Need::D, a(-beta), 0.0, |s| s.d * s.d * s.pw);
        }
        HYP_HIGH_EVEN => {
            constant = c_even(c.n, l, beta, 2.0)?;
            lhs = term("lhs", Need::F, a(-beta - 4.0 * lf), 0.0, |s| s.f * s.f);
            rhs = term("rhs", Need::lap(l), a(-beta), 0.0, |s| s.lap * s.lap);
            improvements.push((
                6.0 * hyp_c * (nn - 1.0) / (nn - 4.0 * lf - beta),
                term("improvement_dx", Need::F, a(2.0 - 4.0 * lf - beta), 0.0, |s| s.f * s.f * s.dx),
            ));
        }
        HYP_HIGH_ODD => {
            constant = c_odd(c.n, l, beta, 2.0)?;
            let k = 2.0 * (2.0 * lf + 1.0);
            lhs = term("lhs", Need::F, a(-beta - k), 0.0, |s| s.f * s.f);
            rhs = term("rhs", Need::dlap(l), a(-beta), 0.0, |s| s.dlap * s.dlap);
            improvements.push((
                6.0 * hyp_c * (nn - 1.0) / (nn - k - beta),
                term("improvement_dx", Need::F, a(-beta - 4.0 * lf), 0.0, |s| s.f * s.f * s.dx),
            ));
        }
    }
    Ok(Plan { constant, lhs, rhs, improvements, remainders, critical, notes })
}

/// The base case whose right-to-left quotient a sharpness family drives to
/// the sharp constant.
pub(crate) fn sweep_case(kind: crate::corpus::FamilyKind) -> CaseId {
    use crate::corpus::FamilyKind;
    match kind {
        FamilyKind::Hardy => HARDY_SUB,
        FamilyKind::Critical => CRIT_HARDY,
        FamilyKind::OneTwo => ONETWO,
        FamilyKind::Rellich2 => RELLICH_2,
    }
}
