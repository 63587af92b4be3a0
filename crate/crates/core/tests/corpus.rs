use std::sync::Arc;

use approx::assert_relative_eq;
use hardylab::constants::CaseParams;
use hardylab::corpus::*;
use hardylab::functionals::{evaluate_case, CaseId, InequalityCase, Status};
use hardylab::quadrature::integrate;
use hardylab::{ModelManifold, RadialFunction, Tolerance};

const TIGHT: Tolerance = Tolerance { rel: 1e-13, abs: 1e-16 };

// Richardson-extrapolated centered differences of the zeroth jet coefficient
fn fd1(f: &dyn RadialFunction, x: f64, h: f64) -> f64 {
    let v = |x: f64| f.jet(x, 0).value();
    let d = |h: f64| (v(x + h) - v(x - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

fn fd2(f: &dyn RadialFunction, x: f64, h: f64) -> f64 {
    let v = |x: f64| f.jet(x, 0).value();
    let d = |h: f64| (v(x + h) - 2.0 * v(x) + v(x - h)) / (h * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

fn check_jet(f: &dyn RadialFunction, xs: &[f64]) {
    for &x in xs {
        let j = f.jet(x, 2);
        let h = 1e-3 * x.min(0.05);
        let scale = j.value().abs().max(1.0) / x.min(1.0).powi(2);
        assert!((j.derivative(1) - fd1(f, x, h)).abs() < 1e-7 * scale, "{} at {x}", f.id());
        assert!((j.derivative(2) - fd2(f, x, h)).abs() < 1e-4 * scale, "{} at {x}", f.id());
    }
}

#[test]
fn cutoff_examples() {
    let phi = smooth_cutoff(1.0, 2.0).unwrap();
    assert_eq!(phi.value(0.5), 1.0);
    assert_eq!(phi.value(3.0), 0.0);
    assert!(phi.jet(3.0, 6).coeffs().iter().all(|&c| c == 0.0));
    assert!(phi.jet(0.5, 6).coeffs()[1..].iter().all(|&c| c == 0.0));
    assert_relative_eq!(phi.value(1.5), 0.5, max_relative = 1e-15);
    // H(b - t) / (H(b - t) + H(t - a)) evaluated directly
    let h = |s: f64| if s > 0.0 { (-1.0 / s).exp() } else { 0.0 };
    for &t in &[1.1, 1.3, 1.77, 1.95] {
        assert_relative_eq!(phi.value(t), h(2.0 - t) / (h(2.0 - t) + h(t - 1.0)), max_relative = 1e-13);
    }
    let mut prev = 1.0;
    for i in 0..=2000 {
        let v = phi.value(1.0 + i as f64 / 2000.0);
        assert!(v <= prev && (0.0..=1.0).contains(&v));
        prev = v;
    }
    assert!(smooth_cutoff(2.0, 1.0).is_err());
    assert!(smooth_cutoff(1.0, 1.0).is_err());
}

#[test]
fn bump_examples() {
    let f = polynomial_bump(1.0, 2).unwrap();
    assert_eq!(f.jet(0.0, 0).value(), 1.0);
    assert_eq!(f.min_smoothness(), 1);
    assert!(polynomial_bump(1.0, 1).is_err());
    assert!(polynomial_bump(-1.0, 3).is_err());

    // (1 - x^2)^4 and 16 x^4 (1 - x^2)^2 expanded and integrated term by term
    let binom4 = [1.0, 4.0, 6.0, 4.0, 1.0];
    let f2: f64 = (0..5).map(|k| binom4[k] * (-1f64).powi(k as i32) / (2 * k + 1) as f64).sum();
    let binom2 = [1.0, 2.0, 1.0];
    let d2: f64 = 16.0 * (0..3).map(|k| binom2[k] * (-1f64).powi(k as i32) / (2 * k + 5) as f64).sum::<f64>();
    assert_relative_eq!(f2, 128.0 / 315.0, max_relative = 1e-15);
    assert_relative_eq!(d2, 128.0 / 315.0, max_relative = 1e-15);

    let lhs = integrate(|x| f.jet(x, 0).value().powi(2), 0.0, 1.0, TIGHT).unwrap();
    let rhs = integrate(|x| f.jet(x, 1).coeff(1).powi(2) * x * x, 0.0, 1.0, TIGHT).unwrap();
    assert!((lhs.value - f2).abs() < 1e-13);
    assert!((rhs.value - d2).abs() < 1e-13);
    assert!(rhs.value / lhs.value >= 0.25);
}

#[test]
fn corpus_members_have_consistent_jets() {
    let c = CaseParams::new(4, 2.0, 0.0, 0.0, 0);
    let xs = [0.13, 0.41, 0.66, 0.87];
    let members: Vec<Arc<dyn RadialFunction>> = vec![
        Arc::new(polynomial_bump(1.0, 4).unwrap()),
        Arc::new(polynomial_bump(1.3, 6).unwrap()),
        Arc::new(smooth_cutoff(0.3, 0.9).unwrap()),
        Arc::new(default_composite()),
        Arc::new(mode_profile(2, 0.6, 4).unwrap()),
        Arc::new(critical_extremizer(&c, 0.1).unwrap()),
    ];
    for f in &members {
        check_jet(f.as_ref(), &xs);
    }
    let h = hardy_extremizer(&c, 0.05).unwrap();
    check_jet(&h, &[0.07, 0.093, 0.3, 1.2, 1.6]);
    let o = onetwo_extremizer(&c, 0.05).unwrap();
    check_jet(&o, &[0.07, 0.3, 0.7, 0.9]);
    let r = rellich2_extremizer(&CaseParams::new(5, 2.0, 0.0, 0.0, 0), 0.05).unwrap();
    check_jet(&r, &[0.07, 0.3, 0.7, 0.9]);
}

#[test]
fn power_law_regions_are_exact() {
    let c = CaseParams::new(4, 2.0, 0.0, 0.0, 0);
    let eps = 1e-3;
    let f = hardy_extremizer(&c, eps).unwrap();
    assert_relative_eq!(f.exponent(), 1.0);
    for i in 0..=50 {
        let rho = 2.0 * eps * (0.5 / eps).powf(i as f64 / 50.0);
        assert_relative_eq!(f.jet(rho, 0).value(), 1.0 / rho, max_relative = 1e-14);
    }
    let c3 = CaseParams::new(3, 2.0, 0.0, 0.0, 0);
    let g = onetwo_extremizer(&c3, 0.01).unwrap();
    let r = rellich2_extremizer(&CaseParams::new(5, 2.0, 0.0, 0.0, 0), 0.01).unwrap();
    assert_relative_eq!(g.exponent(), 0.5);
    assert_relative_eq!(r.exponent(), 0.5);
    for &rho in &[0.02, 0.1, 0.5] {
        assert_relative_eq!(g.jet(rho, 0).value(), rho.powf(-0.5), max_relative = 1e-14);
    }
    assert!(rellich2_extremizer(&c, 0.01).is_err());
    assert!(onetwo_extremizer(&c3, 0.3).is_err());
}

fn lhs_integral(id: CaseId, params: CaseParams, f: &dyn RadialFunction) -> f64 {
    let m = ModelManifold::new(params.n, params.b).unwrap();
    let r = evaluate_case(&InequalityCase::new(id, params).unwrap(), &m, f).unwrap();
    assert_ne!(r.status, Status::NumericalFailure, "{}", f.id());
    r.integrals[0].value
}

#[test]
fn extremizer_lower_bounds() {
    let c = CaseParams::new(4, 2.0, 0.0, 0.0, 0);
    for &eps in &[1e-2, 1e-3, 1e-5] {
        let f = hardy_extremizer(&c, eps).unwrap();
        let v = lhs_integral(CaseId::HARDY_SUB, c, &f);
        assert!(v >= (1.0 / (2.0 * eps)).ln(), "eps = {eps}: {v}");
    }
    for &(n, p) in &[(3, 2.0), (4, 3.0)] {
        let c = CaseParams::new(n, p, 0.0, 0.0, 0);
        for &delta in &[0.2, 0.1, 0.05] {
            if delta > (p - 1.0) / (2.0 * p) {
                continue;
            }
            let f = critical_extremizer(&c, delta).unwrap();
            let v = lhs_integral(CaseId::CRIT_HARDY, c, &f);
            let bound = std::f64::consts::LN_2.powf(-p * delta) / (p * delta);
            assert!(v >= bound, "({n},{p}) delta = {delta}: {v} < {bound}");
        }
    }
}

#[test]
fn critical_extremizer_converges_at_largest_scale() {
    for &p in &[1.5, 2.0, 4.0] {
        let c = CaseParams::new(4, p, 0.0, 0.0, 0);
        let delta = (p - 1.0) / (2.0 * p);
        let f = critical_extremizer(&c, delta).unwrap();
        let m = ModelManifold::euclidean(4);
        let r = evaluate_case(&InequalityCase::new(CaseId::CRIT_HARDY, c).unwrap(), &m, &f).unwrap();
        assert!(r.integrals.iter().all(|i| i.converged), "p = {p}");
    }
}

#[test]
fn extremizer_integrals_diverge() {
    let cases = [
        (FamilyKind::Hardy, CaseParams::new(4, 2.0, 0.0, 0.0, 0)),
        (FamilyKind::OneTwo, CaseParams::new(3, 2.0, 0.0, 0.0, 0)),
        (FamilyKind::Rellich2, CaseParams::new(5, 2.0, 0.0, 0.0, 0)),
        (FamilyKind::Critical, CaseParams::new(3, 2.0, 0.0, 0.0, 0)),
    ];
    for (kind, c) in cases {
        let fam = ExtremizerFamily::new(kind, c).unwrap();
        let scales: &[f64] = match kind {
            FamilyKind::Critical => &[0.2, 0.02, 0.002],
            _ => &[1e-1, 1e-2, 1e-3, 1e-4],
        };
        let id = match kind {
            FamilyKind::Hardy => CaseId::HARDY_SUB,
            FamilyKind::OneTwo => CaseId::ONETWO,
            FamilyKind::Rellich2 => CaseId::RELLICH_2,
            FamilyKind::Critical => CaseId::CRIT_HARDY,
        };
        let values: Vec<f64> = scales
            .iter()
            .map(|&s| lhs_integral(id, c, fam.member(s).unwrap().as_ref()))
            .collect();
        assert!(values.windows(2).all(|w| w[1] > w[0]), "{kind:?}: {values:?}");
    }
}

#[test]
fn scale_ranges() {
    let c = CaseParams::new(4, 2.0, 0.0, 0.0, 0);
    let fam = ExtremizerFamily::new(FamilyKind::Hardy, c).unwrap();
    assert!(fam.member(SCALE_FLOOR).is_ok());
    assert!(fam.member(SCALE_FLOOR / 2.0).is_err());
    assert!(fam.member(0.25).is_ok() && fam.member(0.26).is_err());
    assert_eq!(FamilyKind::Critical.scale_range(3.0).1, 1.0 / 3.0);
    assert!(ExtremizerFamily::new(FamilyKind::Hardy, CaseParams::new(4, 2.0, 2.0, 0.0, 0)).is_err());
}

#[test]
fn ids_round_trip() {
    let c = CaseParams::new(5, 2.0, 0.0, 0.0, 0);
    for id in [
        "bump:R=1,m=4",
        "cutoff:a=1,b=2",
        "composite:a=0.25,b=1,m=2",
        "hardy_ext:eps=0.0001",
        "critical_ext:delta=0.02",
        "onetwo_ext:delta=0.01",
        "rellich2_ext:delta=0.01",
        "mode:k=3,R=0.9,m=3",
    ] {
        let spec = CorpusSpec::parse(id).unwrap();
        assert_eq!(spec.to_string(), id);
        assert_eq!(spec.instantiate(&c).unwrap().id(), id);
    }
    assert_eq!(CorpusSpec::parse("hardy_ext:eps=1e-4").unwrap().to_string(), "hardy_ext:eps=0.0001");
    for bad in ["bump:R=1", "bump:R=1,m=4,x=2", "blob:R=1", "bump:R=1,m=2.5", "bump:R=x,m=2", "bump:R"] {
        assert!(CorpusSpec::parse(bad).is_err(), "{bad}");
    }
    assert_eq!(default_corpus().len(), 3);
}
