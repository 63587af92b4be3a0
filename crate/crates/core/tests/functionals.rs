use std::sync::Arc;

use approx::assert_relative_eq;
use hardylab::constants::{rellich2_constant, CaseParams};
use hardylab::corpus::*;
use hardylab::functionals::*;
use hardylab::jets::JetFn;
use hardylab::{Error, Jet, ModelManifold, RadialFunction};

// exact polynomial arithmetic on [0, 1]
fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn integral01(a: &[f64]) -> f64 {
    a.iter().enumerate().map(|(k, c)| c / (k + 1) as f64).sum()
}

fn case(id: CaseId, n: u32, p: f64, beta: f64, b: f64, l: usize) -> (InequalityCase, ModelManifold) {
    let c = InequalityCase::new(id, CaseParams::new(n, p, beta, b, l)).unwrap();
    (c, ModelManifold::new(n, b).unwrap())
}

fn eval(id: CaseId, n: u32, p: f64, beta: f64, b: f64, l: usize, f: &dyn RadialFunction) -> VerificationReport {
    let (c, m) = case(id, n, p, beta, b, l);
    evaluate_case(&c, &m, f).unwrap()
}

fn zero_profile() -> JetFn {
    JetFn::new("zero", 1.0, 20, |x: Jet| Jet::zero(x.center(), x.order()))
}

#[test]
fn remainder_examples() {
    assert_eq!(remainder_rp(1.7, 1.7, 3.0), 0.0);
    assert_relative_eq!(remainder_rp(1.0, 3.0, 2.0), 2.0, max_relative = 1e-15);
    assert_relative_eq!(remainder_rp(1.0, 0.0, 3.0), 2.0 / 3.0, max_relative = 1e-15);
    assert_relative_eq!(remainder_rp_integral_form(1.0, 3.0, 2.0).unwrap(), 2.0, max_relative = 1e-12);
    assert!((remainder_rp_integral_form(1.0, 0.0, 3.0).unwrap() - 2.0 / 3.0).abs() < 1e-10);
    let (a, b) = (remainder_rp(2.0, -1.0, 2.5), remainder_rp_integral_form(2.0, -1.0, 2.5).unwrap());
    assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
    assert!(remainder_rp_integral_form(1.0, 2.0, 1.0).is_err());
}

#[test]
fn hardy_identity_on_bump() {
    let f = polynomial_bump(1.0, 2).unwrap();
    let r = eval(CaseId::HARDY_SUB, 3, 2.0, 0.0, 0.0, 0, &f);
    // f = (1 - x^2)^2, x f' = -4 x^2 (1 - x^2), f + 2 x f' = (1 - x^2)(1 - 9 x^2)
    let fpoly = [1.0, 0.0, -2.0, 0.0, 1.0];
    let xd = [0.0, 0.0, -4.0, 0.0, 4.0];
    let lhs = integral01(&mul(&fpoly, &fpoly));
    let rhs = integral01(&mul(&xd, &xd));
    let combo = mul(&[1.0, 0.0, -1.0], &[1.0, 0.0, -9.0]);
    let rp = integral01(&mul(&combo, &combo));
    assert_relative_eq!(lhs, 128.0 / 315.0, max_relative = 1e-14);
    assert_relative_eq!(rhs, 128.0 / 315.0, max_relative = 1e-14);

    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.constant, 4.0);
    assert!((r.lhs - lhs).abs() < 1e-11);
    assert!((r.rhs - rhs).abs() < 1e-11);
    assert!((r.slack - 3.0 * 128.0 / 315.0).abs() < 1e-10);
    assert!((r.term("rp").unwrap() - rp).abs() < 1e-10);
    assert_eq!(r.term("jterm").unwrap(), 0.0);
    assert!(r.relative_residual().unwrap() < 1e-10);
    assert_eq!(r.corpus_id, "bump:R=1,m=2");
}

#[test]
fn critical_hardy_on_extremizer() {
    let c = CaseParams::new(3, 2.0, 0.0, 0.0, 0);
    let f = critical_extremizer(&c, 0.2).unwrap();
    let r = eval(CaseId::CRIT_HARDY, 3, 2.0, 0.0, 0.0, 0, &f);
    assert_eq!(r.status, Status::Pass);
    assert!(r.slack >= 0.0);
    assert!(r.relative_residual().unwrap() < 1e-8);
    let r1 = eval(CaseId::CRIT_HARDY, 3, 2.0, 0.0, 1.0, 0, &f);
    assert_eq!(r1.status, Status::Pass);
    assert!(r1.term("jterm").unwrap() > 0.0);
}

#[test]
fn rellich2_orientation() {
    let f = polynomial_bump(1.0, 4).unwrap();
    let r = eval(CaseId::RELLICH_2, 5, 2.0, 0.0, 0.0, 0, &f);
    assert_relative_eq!(r.constant, 16.0 / 25.0, max_relative = 1e-15);
    assert_relative_eq!(r.constant * rellich2_constant(5, 2.0, 0.0).unwrap(), 1.0, max_relative = 1e-15);
    assert!(r.slack >= 0.0 && r.status == Status::Pass);
    // lhs = int f^2 rho^-4 rho^4 = int (1 - x^2)^8 = 32768/109395
    assert!((r.lhs - 32768.0 / 109395.0).abs() < 1e-11);
}

#[test]
fn identities_hold() {
    let profiles: Vec<Arc<dyn RadialFunction>> = vec![
        Arc::new(polynomial_bump(1.0, 4).unwrap()),
        Arc::new(polynomial_bump(1.0, 6).unwrap()),
        Arc::new(default_composite()),
    ];
    for f in &profiles {
        let r = eval(CaseId::ONETWO, 4, 2.0, 0.0, 0.0, 0, f.as_ref());
        assert_eq!(r.term("jterm"), Some(0.0));
        assert!(r.relative_residual().unwrap() < 1e-10, "{}", f.id());

        let r = eval(CaseId::HARDY_SUB, 4, 2.0, 0.5, 1.0, 0, f.as_ref());
        assert!(r.relative_residual().unwrap() < 1e-10, "{}", f.id());
        assert!(r.term("rp").unwrap() > 0.0 && r.term("jterm").unwrap() > 0.0);

        let (c, m) = case(CaseId::CRIT_HARDY, 5, 3.0, 0.0, 1.0, 0);
        let res = identity_residual(&c, &m, f.as_ref()).unwrap();
        let r = evaluate_case(&c, &m, f.as_ref()).unwrap();
        assert_eq!(Some(res), r.identity_residual);
        assert!(res.abs() < 1e-10 * r.scale());
    }
}

#[test]
fn zero_profile_is_trivially_fine() {
    let z = zero_profile();
    for id in [CaseId::HARDY_SUB, CaseId::ONETWO, CaseId::RELLICH_2, CaseId::HARDY_QUANT_PI] {
        let r = eval(id, 5, 2.0, 0.0, 1.0, 0, &z);
        assert_eq!(r.status, Status::Pass);
        assert_eq!((r.lhs, r.rhs, r.slack), (0.0, 0.0, 0.0));
        assert!(r.remainder_terms.iter().all(|(_, v)| *v == 0.0));
        assert!(r.identity_residual.is_none_or(|v| v == 0.0));
        assert_eq!(r.relative_slack(), 0.0);
    }
}

#[test]
fn quantitative_cases() {
    let f = polynomial_bump(1.0, 4).unwrap();
    for (id, base) in [
        (CaseId::HARDY_QUANT_PI, CaseId::HARDY_SUB),
        (CaseId::HARDY_QUANT_D, CaseId::HARDY_SUB),
        (CaseId::ONETWO_QUANT, CaseId::ONETWO),
        (CaseId::RELLICH_12_QUANT, CaseId::RELLICH_12),
        (CaseId::RELLICH_2_QUANT, CaseId::RELLICH_2),
    ] {
        let (c, m) = case(id, 5, 2.0, 0.0, 0.0, 0);
        let q = quantitative_case(&c, &m, &f).unwrap();
        let b = eval(base, 5, 2.0, 0.0, 0.0, 0, &f);
        assert_eq!(q.lhs, b.lhs, "{id}");
        assert_eq!(q.slack, b.slack, "{id}");
        assert_eq!(q.term("base_lhs"), Some(b.lhs));
        assert!(q.remainder_terms.iter().filter(|(n, _)| n != "base_lhs").all(|(_, v)| *v == 0.0));
    }
    let r = eval(CaseId::HARDY_QUANT_PI, 4, 2.0, 0.0, 1.0, 0, &f);
    assert!(r.slack >= 0.0 && r.status == Status::Pass);
    let r = eval(CaseId::RELLICH_12_QUANT, 5, 2.0, 1.0, 1.0, 0, &f);
    assert!(r.slack >= 0.0 && r.status == Status::Pass);

    let (c, m) = case(CaseId::HARDY_SUB, 4, 2.0, 0.0, 1.0, 0);
    assert!(matches!(quantitative_case(&c, &m, &f), Err(Error::Contract(_))));
}

#[test]
fn improvement_grows_with_curvature() {
    let f = default_composite();
    let terms: Vec<f64> = [0.0, 0.5, 1.0]
        .iter()
        .map(|&b| eval(CaseId::HARDY_QUANT_PI, 4, 2.0, 0.0, b, 0, &f).term("improvement").unwrap())
        .collect();
    assert_eq!(terms[0], 0.0);
    assert!(terms.windows(2).all(|w| w[1] >= w[0]), "{terms:?}");
}

#[test]
fn rellich_chain_decomposes() {
    for &(n, beta) in &[(5u32, 0.0), (6, 0.5), (8, -1.0)] {
        for &b in &[0.0, 1.0] {
            let params = CaseParams::new(n, 2.0, beta, b, 0);
            let m = ModelManifold::new(n, b).unwrap();
            let f = polynomial_bump(1.0, 5).unwrap();
            let chain = rellich2_chain(params, &m, &f).unwrap();
            assert_relative_eq!(chain.hardy_factor, ((n as f64 - 4.0 - beta) / 2.0).powi(2), max_relative = 1e-14);
            assert!(chain.hardy_slack >= 0.0 && chain.rellich12_slack >= 0.0);
            let tol = 10.0 * chain.error_budget + 1e-10 * chain.rellich2_slack.abs();
            assert!(chain.defect.abs() <= tol, "({n},{beta},{b}): {}", chain.defect);
        }
    }
}

#[test]
fn remainders_are_nonnegative() {
    let profiles: Vec<Arc<dyn RadialFunction>> = vec![
        Arc::new(polynomial_bump(1.0, 4).unwrap()),
        Arc::new(default_composite()),
        Arc::new(smooth_cutoff(0.3, 0.8).unwrap()),
    ];
    for f in &profiles {
        for &(n, p, beta) in &[(3u32, 2.0, 0.0), (4, 1.5, 1.0), (6, 3.0, -1.0)] {
            for &b in &[0.0, 0.5, 1.0] {
                for id in CaseId::IDENTITY {
                    let r = eval(id, n, p, beta, b, 0, f.as_ref());
                    for rec in r.integrals.iter().skip(2) {
                        assert!(rec.value >= -rec.error, "{id} {}: {} = {}", f.id(), rec.name, rec.value);
                    }
                    assert_eq!(r.status, Status::Pass, "{id} {} ({n},{p},{beta},{b})", f.id());
                }
            }
        }
    }
}

#[test]
fn aq_holds_on_radial_profiles() {
    for f in [polynomial_bump(1.0, 4).unwrap(), polynomial_bump(2.5, 6).unwrap()] {
        for &(n, beta) in &[(5u32, 0.0), (7, 1.5)] {
            let r = eval(CaseId::AQ, n, 2.0, beta, 1.0, 0, &f);
            assert!(r.slack >= 0.0 && r.status == Status::Pass, "({n},{beta}) {}", f.id());
        }
    }
}

#[test]
fn hyperbolic_constant() {
    let top = 1.0 / std::f64::consts::PI.powi(2);
    for n in 3..=8 {
        let c = hyperbolic_weight_constant(n);
        assert!(c > 0.0 && c <= top * (1.0 + 1e-15));
        // grid oracle on the defining ratio
        let min = (0..20000)
            .map(|i| {
                let rho = i as f64 * 1e-3;
                ((1.0 + rho.exp()).powi(2) / (4.0 * rho.exp())).powi(n as i32) / (top.recip() + rho * rho)
            })
            .fold(f64::INFINITY, f64::min);
        assert!(c <= min * (1.0 + 1e-12) && c >= min * (1.0 - 1e-6), "n = {n}: {c} vs {min}");
        assert_relative_eq!(hyperbolic_dx_constant(n), 2f64.powi(n as i32) * c, max_relative = 1e-15);
    }
    assert!(hyperbolic_weight_constant(3) <= hyperbolic_weight_constant(4));
    let r = eval(CaseId::HYP_HARDY, 4, 2.0, 0.0, 1.0, 0, &polynomial_bump(1.0, 4).unwrap());
    assert!(r.slack >= 0.0 && r.status == Status::Pass);
    assert!(!r.notes.is_empty());
}

#[test]
fn sharpness_sweeps() {
    let fam = ExtremizerFamily::new(FamilyKind::Hardy, CaseParams::new(4, 2.0, 0.0, 0.0, 0)).unwrap();
    let pts = sharpness_sweep(&fam, &[1e-2, 1e-4, 1e-6]).unwrap();
    assert!(pts.iter().all(|p| p.gap > p.error && p.status == Status::Pass));
    assert!(pts.windows(2).all(|w| w[1].gap < w[0].gap));

    let fam1 = ExtremizerFamily::new(FamilyKind::Hardy, CaseParams::new(4, 2.0, 0.0, 1.0, 0)).unwrap();
    let pts1 = sharpness_sweep(&fam1, &[1e-2, 1e-4, 1e-6]).unwrap();
    assert!(pts1.windows(2).all(|w| w[1].gap < w[0].gap));
    // the curvature contribution to the slack stays bounded while lhs diverges
    let extra: Vec<f64> = pts1.iter().zip(&pts).map(|(a, b)| a.slack - b.slack).collect();
    assert!(extra.iter().all(|&e| e > 0.0));
    assert!((extra[2] - extra[1]).abs() < 0.05 * extra[1], "{extra:?}");
    assert!(pts1[2].lhs - pts1[1].lhs > 4.0);

    let crit = ExtremizerFamily::new(FamilyKind::Critical, CaseParams::new(3, 2.0, 0.0, 0.0, 0)).unwrap();
    let pts = sharpness_sweep(&crit, &[0.2, 0.1, 0.05]).unwrap();
    assert!(pts.iter().all(|p| p.gap > 0.0));
    assert!(pts.windows(2).all(|w| w[1].gap < w[0].gap));
    assert!(pts[2].quotient - 0.25 < 0.5 * (pts[0].quotient - 0.25));

    assert!(matches!(sharpness_sweep(&fam, &[1e-4, 1e-2]), Err(Error::Contract(_))));
}

#[test]
fn hardy_side_terms_stay_bounded() {
    let params = CaseParams::new(4, 2.0, 0.0, 0.0, 0);
    let (inner0, outer0) = hardy_side_terms(params, 1e-2).unwrap();
    let bound = 2.0 * inner0.abs().max(outer0.abs());
    for &eps in &[1e-3, 1e-4, 1e-5, 1e-6] {
        let (inner, outer) = hardy_side_terms(params, eps).unwrap();
        assert!(inner.abs() <= bound && outer.abs() <= bound, "eps = {eps}: {inner}, {outer}");
        assert!((outer - outer0).abs() < 1e-10 * outer0.abs().max(1.0));
    }
}

#[test]
fn contract_errors() {
    let f = polynomial_bump(1.0, 2).unwrap();
    let (c, _) = case(CaseId::HARDY_SUB, 4, 2.0, 0.0, 0.0, 0);
    assert!(matches!(evaluate_case(&c, &ModelManifold::new(4, 1.0).unwrap(), &f), Err(Error::Contract(_))));
    assert!(matches!(evaluate_case(&c, &ModelManifold::euclidean(5), &f), Err(Error::Contract(_))));

    let wide = JetFn::new("exp", f64::INFINITY, 20, |x: Jet| (-x).exp());
    assert!(matches!(evaluate_case(&c, &ModelManifold::euclidean(4), &wide), Err(Error::Contract(_))));

    let (even, m9) = case(CaseId::RELLICH_EVEN, 9, 2.0, 0.0, 0.0, 2);
    assert!(matches!(evaluate_case(&even, &m9, &f), Err(Error::Contract(_))));
    assert!(evaluate_case(&even, &m9, &polynomial_bump(1.0, 4).unwrap()).is_ok());

    let (r2, m5) = case(CaseId::RELLICH_2, 5, 2.0, 0.0, 0.0, 0);
    assert!(matches!(identity_residual(&r2, &m5, &f), Err(Error::Contract(_))));

    assert!(matches!(
        InequalityCase::new(CaseId::HARDY_SUB, CaseParams::new(4, 2.0, 2.0, 0.0, 0)),
        Err(Error::Validity { .. })
    ));
    assert!(InequalityCase::new(CaseId::AQ, CaseParams::new(5, 2.0, 0.0, 0.0, 0)).is_err());
    assert!(InequalityCase::new(CaseId::KO_RELLICH, CaseParams::new(5, 3.0, 0.0, 1.0, 0)).is_err());
}

#[test]
fn forced_failure_and_oracle() {
    let f = polynomial_bump(1.0, 4).unwrap();
    let (c, m) = case(CaseId::HARDY_SUB, 4, 2.0, 0.0, 0.0, 0);
    let opts = EvalOptions { constant_factor: 0.5, ..EvalOptions::default() };
    let r = evaluate_case_with(&c, &m, &f, &opts).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.status.to_string(), "fail");

    let opts = EvalOptions { oracle: true, ..EvalOptions::default() };
    let r = evaluate_case_with(&c, &m, &f, &opts).unwrap();
    for rec in &r.integrals {
        let o = rec.oracle.unwrap();
        assert!((o - rec.value).abs() <= 1e-9 * rec.value.abs().max(1e-300), "{}: {} vs {o}", rec.name, rec.value);
    }
}
