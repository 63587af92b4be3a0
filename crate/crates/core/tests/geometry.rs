use std::f64::consts::PI;

use approx::assert_relative_eq;
use hardylab::geometry::*;
use hardylab::ModelManifold;
use proptest::prelude::*;

// coth through exponentials only, independent of the library's series switch
fn coth_oracle(x: f64) -> f64 {
    let e = (-2.0 * x).exp();
    (1.0 + e) / (1.0 - e)
}

fn sinh_oracle(x: f64) -> f64 {
    (x.exp() - (-x).exp()) / 2.0
}

#[test]
fn ct_examples() {
    assert_eq!(ct(0.0, 2.0).unwrap(), 0.5);
    assert_relative_eq!(ct(1.0, 1.0).unwrap(), coth_oracle(1.0), max_relative = 1e-15);
    assert_relative_eq!(ct(4.0, 0.5).unwrap(), 2.0 * coth_oracle(1.0), max_relative = 1e-15);
    assert_relative_eq!(ct(1.0, 1.0).unwrap(), 1.3130352855, epsilon = 1e-10);
    assert!(ct(1.0, 0.0).is_err());
    assert!(ct(1.0, -1.0).is_err());
}

#[test]
fn ct_is_continuous_in_b() {
    for &t in &[0.1, 1.0, 5.0] {
        assert_relative_eq!(ct(1e-14, t).unwrap(), 1.0 / t, max_relative = 1e-12);
    }
}

#[test]
fn dd_examples() {
    assert_eq!(dd(0.0, 7.3).unwrap(), 0.0);
    assert_eq!(dd(1.0, 0.0).unwrap(), 0.0);
    assert_relative_eq!(dd(1.0, 1.0).unwrap(), coth_oracle(1.0) - 1.0, max_relative = 1e-14);
}

#[test]
fn density_examples() {
    let s1 = sinh_oracle(1.0);
    assert_eq!(density(&ModelManifold::new(5, 0.0).unwrap(), 3.2).unwrap(), 1.0);
    assert_relative_eq!(density(&ModelManifold::new(2, 1.0).unwrap(), 1.0).unwrap(), s1, max_relative = 1e-15);
    assert_relative_eq!(density(&ModelManifold::new(3, 1.0).unwrap(), 1.0).unwrap(), s1 * s1, max_relative = 1e-15);
    assert!(density(&ModelManifold::hyperbolic(3), 0.0).is_err());
    // sinh(t)^(n-1) / t^(n-1) leaves f64 range long before t = 1e4
    assert!(density(&ModelManifold::hyperbolic(8), 1e4).is_err());
}

#[test]
fn log_deriv_examples() {
    let c = coth_oracle(1.0) - 1.0;
    assert_eq!(density_log_deriv(&ModelManifold::new(4, 0.0).unwrap(), 1.5).unwrap(), 0.0);
    assert_relative_eq!(density_log_deriv(&ModelManifold::new(2, 1.0).unwrap(), 1.0).unwrap(), c, max_relative = 1e-14);
    assert_relative_eq!(density_log_deriv(&ModelManifold::new(3, 1.0).unwrap(), 1.0).unwrap(), 2.0 * c, max_relative = 1e-14);
}

#[test]
fn measure_weight_examples() {
    assert_eq!(measure_weight(&ModelManifold::new(3, 0.0).unwrap(), 2.0).unwrap(), 4.0);
    assert_relative_eq!(measure_weight(&ModelManifold::new(2, 1.0).unwrap(), 1.0).unwrap(), sinh_oracle(1.0), max_relative = 1e-15);
    assert!(measure_weight(&ModelManifold::new(3, 1.0).unwrap(), 1e-9).unwrap() < 1e-17);
}

#[test]
fn ball_coordinates() {
    assert_eq!(rho_from_r(0.0).unwrap(), 0.0);
    assert_relative_eq!(rho_from_r(0.5).unwrap(), 3f64.ln(), max_relative = 1e-15);
    assert_relative_eq!(rho_from_r(1f64.tanh()).unwrap(), 2.0, max_relative = 1e-14);
    assert!(rho_from_r(1.0).is_err());
    assert!(rho_from_r(-0.1).is_err());
    assert_eq!(r_from_rho(0.0).unwrap(), 0.0);
    assert_relative_eq!(r_from_rho(3f64.ln()).unwrap(), 0.5, max_relative = 1e-15);
    // 1 - r = 2 e^-rho / (1 + e^-rho)
    let gap = one_minus_r_from_rho(50.0).unwrap();
    let e = (-50f64).exp();
    assert_relative_eq!(gap, 2.0 * e / (1.0 + e), max_relative = 1e-14);
    assert!(r_from_rho(50.0).unwrap() <= 1.0);
}

#[test]
fn coth_gap_examples() {
    let (l, r) = coth_gap_lower_bound(PI).unwrap();
    assert_relative_eq!(l, PI * coth_oracle(PI) - 1.0, max_relative = 1e-14);
    assert_relative_eq!(r, 1.5, max_relative = 1e-15);
    let (l, r) = coth_gap_lower_bound(1.0).unwrap();
    assert_relative_eq!(l, 0.3130352855, epsilon = 1e-10);
    assert_relative_eq!(r, 3.0 / (PI * PI + 1.0), max_relative = 1e-15);
    // t -> 0: t coth t - 1 ~ t^2/3 against 3 t^2 / pi^2
    let (l, r) = coth_gap_lower_bound(1e-5).unwrap();
    assert_relative_eq!(l / r, PI * PI / 9.0, max_relative = 1e-8);
}

#[test]
fn dd_dominates_scaled_bound() {
    for &b in &[0.0, 0.25, 1.0, 4.0] {
        for i in 1..=5000 {
            let t = 50.0 * i as f64 / 5000.0;
            let d = dd(b, t).unwrap();
            assert!(d >= 0.0);
            assert!(d >= 3.0 * b * t * t / (PI * PI + b * t * t) - 1e-15, "b = {b}, t = {t}");
        }
    }
}

#[test]
fn density_small_radius_expansion() {
    // (sinh x / x)^(n-1) = 1 + (n-1) x^2/6 + ((n-1)/120 + (n-1)(n-2)/72) x^4 + ...
    for n in [2u32, 3, 5, 8] {
        let m = ModelManifold::hyperbolic(n);
        let nf = n as f64;
        let c4 = (nf - 1.0) / 120.0 + (nf - 1.0) * (nf - 2.0) / 72.0;
        for i in 1..=100 {
            let t = 0.1 * i as f64 / 100.0;
            let rem = density(&m, t).unwrap() - 1.0 - (nf - 1.0) * t * t / 6.0;
            assert!(rem.abs() <= 1.1 * c4 * t.powi(4) + 1e-16, "n = {n}, t = {t}");
        }
    }
}

#[test]
fn log_deriv_matches_finite_difference() {
    for (n, b) in [(3u32, 1.0), (6, 0.25), (4, 4.0)] {
        let m = ModelManifold::new(n, b).unwrap();
        for &t in &[0.05, 0.3, 1.0, 2.5, 7.0] {
            let h = 1e-4 * t;
            let lnj = |x: f64| density(&m, x).unwrap().ln();
            // Richardson on centered differences
            let d1 = (lnj(t + h) - lnj(t - h)) / (2.0 * h);
            let d2 = (lnj(t + h / 2.0) - lnj(t - h / 2.0)) / h;
            let fd = (4.0 * d2 - d1) / 3.0;
            assert_relative_eq!(density_log_deriv(&m, t).unwrap(), fd, max_relative = 1e-8);
        }
    }
}

#[test]
fn density_is_monotone() {
    for (n, b) in [(3u32, 1.0), (8, 0.25)] {
        let m = ModelManifold::new(n, b).unwrap();
        let mut prev = 1.0;
        for i in 1..=10_000 {
            let j = density(&m, 10.0 * i as f64 / 10_000.0).unwrap();
            assert!(j >= prev);
            prev = j;
        }
    }
}

#[test]
fn custom_density_check() {
    // J = (sinh t / t)^2, J' = 2 J (coth t - 1/t)
    let model = CustomDensity {
        n: 3,
        bound: 1.0,
        eval: |t: f64| {
            let j = (t.sinh() / t).powi(2);
            (j, 2.0 * j * (coth_oracle(t) - 1.0 / t))
        },
    };
    let grid: Vec<f64> = (1..200).map(|i| i as f64 * 0.05).collect();
    assert!(check_density_profile(&model, &grid).is_ok());
    let flat = CustomDensity { n: 3, bound: 1.0, eval: |_t: f64| (1.0, 0.0) };
    assert!(check_density_profile(&flat, &grid).is_err());
}

proptest! {
    #[test]
    fn ball_round_trip(rho in 0.0f64..30.0) {
        let r = r_from_rho(rho).unwrap();
        let back = rho_from_r(r).unwrap();
        // d rho / d r = 2 / (1 - r^2): rounding r costs 2 eps / (1 - r) in rho
        let cond = 4.0 * f64::EPSILON / (1.0 - r);
        prop_assert!((back - rho).abs() <= 1e-12 * rho + cond, "rho = {}, back = {}", rho, back);
    }

    #[test]
    fn ct_matches_oracle(b in 0.01f64..9.0, t in 1e-3f64..20.0) {
        let x = b.sqrt() * t;
        prop_assert!((ct(b, t).unwrap() / (b.sqrt() * coth_oracle(x)) - 1.0).abs() < 1e-12);
    }
}
