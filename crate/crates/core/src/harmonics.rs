//! Radial versus full Laplacian in hyperbolic space, mode by mode.
//!
//! A function on the Poincare ball expands as `sum_k f_k(r) phi_k(sigma)` with
//! `phi_k` orthonormal spherical harmonics of eigenvalue `c_k = k(n+k-2)`.
//! The full Laplacian acts on mode `k` as `Delta_{g,rho} f_k - c_k f_k / sinh^2 rho`,
//! so every integral over the ball reduces to radial integrals, one per mode.

use std::sync::Arc;

use serde::Serialize;

use crate::constants::{validity, CaseParams, Family};
use crate::corpus::mode_profile;
use crate::error::{Error, Result};
use crate::exec;
use crate::geometry::ModelManifold;
use crate::jets::{radial_laplacian, RadialFunction};
use crate::quadrature::{QuadratureResult, RadialIntegrand, Tolerance};

const TOL: Tolerance = Tolerance { rel: 1e-12, abs: 1e-16 };

/// Most modes accepted by [`mow_compare`].
pub const MAX_MODES: usize = 16;

/// `c_k = k (n + k - 2)`.
pub fn mode_eigenvalue(n: u32, k: u32) -> f64 {
    k as f64 * (n as f64 + k as f64 - 2.0)
}

/// `Delta_g F = F'' + (n-1) coth(rho) F'` on `H^n`.
pub fn hyperbolic_radial_laplacian(n: u32, f: &dyn RadialFunction, rho: f64) -> Result<f64> {
    radial_laplacian(&ModelManifold::hyperbolic(n), f, rho)
}

/// One spherical-harmonic component: index `k` and radial profile `f_k`,
/// which must vanish like `r^k` at the origin.
#[derive(Clone)]
pub struct ModeSpec {
    pub k: u32,
    pub profile: Arc<dyn RadialFunction>,
}

impl std::fmt::Debug for ModeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModeSpec {{ k: {}, profile: {} }}", self.k, self.profile.id())
    }
}

impl ModeSpec {
    pub fn new(k: u32, profile: Arc<dyn RadialFunction>) -> Self {
        ModeSpec { k, profile }
    }

    /// Mode `k` with profile `r^k (1 - (r/R)^2)^m`.
    pub fn standard(k: u32, r: f64, m: u32) -> Result<Self> {
        Ok(ModeSpec { k, profile: Arc::new(mode_profile(k, r, m)?) })
    }

    /// The two profiles used per mode in the test suites.
    pub fn pair(k: u32) -> Result<[ModeSpec; 2]> {
        Ok([ModeSpec::standard(k, 0.9, 3)?, ModeSpec::standard(k, 0.6, 4)?])
    }

    pub fn eigenvalue(&self, n: u32) -> f64 {
        mode_eigenvalue(n, self.k)
    }
}

fn check_range(n: u32, beta: f64) -> Result<()> {
    validity(Family::Mow, &CaseParams::new(n, 2.0, beta, 1.0, 0))
}

/// Power of `rho` that `Delta f_k` and `f_k / sinh^2` behave like at the origin.
fn lap_order(k: u32) -> i32 {
    if k == 0 {
        0
    } else {
        k as i32 - 2
    }
}

struct ModeValues {
    /// `f / rho^k`.
    f: f64,
    /// `Delta f / rho^e`, `e = lap_order(k)`.
    lap: f64,
    /// `rho / sinh rho`.
    q: f64,
    /// `(sinh rho / rho)^(n-1)`.
    j: f64,
}

fn mode_values(n: u32, mode: &ModeSpec, rho: f64) -> Result<ModeValues> {
    let f = mode.profile.jet(rho, 0).value();
    let lap = hyperbolic_radial_laplacian(n, mode.profile.as_ref(), rho)?;
    let q = if rho < 1e-4 { 1.0 - rho * rho / 6.0 } else { rho / rho.sinh() };
    Ok(ModeValues {
        f: f / rho.powi(mode.k as i32),
        lap: lap / rho.powi(lap_order(mode.k)),
        q,
        j: q.powi(1 - n as i32),
    })
}

fn radial_integral(
    n: u32,
    mode: &ModeSpec,
    alpha: f64,
    g: impl Fn(&ModeValues) -> f64 + Send + Sync,
) -> Result<QuadratureResult> {
    let outer = mode.profile.support_radius();
    if !outer.is_finite() {
        return Err(Error::Contract(format!("`{}` is not compactly supported", mode.profile.id())));
    }
    let h = |rho: f64| mode_values(n, mode, rho).map(|v| g(&v) * v.j).unwrap_or(f64::NAN);
    let r = RadialIntegrand::new(h, alpha, 0.0, outer)
        .with_breaks(mode.profile.breakpoints())
        .integrate(TOL)?;
    if !r.value.is_finite() {
        return Err(Error::NonConvergence { best: r });
    }
    Ok(r)
}

/// `c_k int f^2 rho^-beta sinh^-4 dV - 2 int f Delta f rho^-beta sinh^-2 dV`.
///
/// Its product with `c_k` is what mode `k` adds to
/// `int |Delta_g f|^2 rho^-beta - int |Delta_{g,rho} f|^2 rho^-beta`.
pub fn mode_form(n: u32, beta: f64, mode: &ModeSpec) -> Result<QuadratureResult> {
    check_range(n, beta)?;
    if mode.k == 0 {
        return Err(Error::domain("mode_form", "mode index must be at least 1"));
    }
    let ck = mode.eigenvalue(n);
    // both terms behave like rho^(2k-4) against rho^(n-1-beta)
    let alpha = n as f64 - 1.0 - beta + 2.0 * mode.k as f64 - 4.0;
    radial_integral(n, mode, alpha, move |v| {
        let q2 = v.q * v.q;
        ck * v.f * v.f * q2 * q2 - 2.0 * v.f * v.lap * q2
    })
}

/// Both sides of the radial-versus-full Laplacian comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MowComparison {
    /// `int |Delta_{g,rho} f|^2 rho^-beta dV`.
    pub lhs: f64,
    /// `int |Delta_g f|^2 rho^-beta dV`.
    pub rhs: f64,
    /// `rhs - lhs`.
    pub slack: f64,
    /// `c_k * mode_form(k)` for each input mode (zero for `k = 0`).
    pub mode_terms: Vec<(u32, f64)>,
    pub error: f64,
    pub notes: Vec<String>,
}

impl MowComparison {
    /// `slack - sum(mode_terms)`: the two routes to the slack must agree.
    pub fn decomposition_defect(&self) -> f64 {
        self.slack - self.mode_terms.iter().map(|&(_, v)| v).sum::<f64>()
    }
}

/// Integrates `|Delta_{g,rho} f|^2` and `|Delta_g f|^2` against `rho^-beta`
/// mode by mode, and independently sums `c_k * mode_form(k)`.
pub fn mow_compare(n: u32, beta: f64, modes: &[ModeSpec]) -> Result<MowComparison> {
    check_range(n, beta)?;
    if modes.len() > MAX_MODES {
        return Err(Error::Contract(format!("at most {MAX_MODES} modes, got {}", modes.len())));
    }
    let per_mode = exec::map(modes, |mode| -> Result<(QuadratureResult, QuadratureResult, f64)> {
        let ck = mode.eigenvalue(n);
        let e = lap_order(mode.k);
        // |Delta f_k|^2 ~ rho^(2e) near the origin
        let alpha = n as f64 - 1.0 - beta + 2.0 * e as f64;
        let lhs = radial_integral(n, mode, alpha, |v| v.lap * v.lap)?;
        let rhs = radial_integral(n, mode, alpha, move |v| {
            // f / sinh^2 = (f / rho^k) rho^(k-2) q^2, and rho^(k-2) is the rescaling (c_0 = 0)
            let full = v.lap - ck * v.f * v.q * v.q;
            full * full
        })?;
        let term = if mode.k == 0 { 0.0 } else { ck * mode_form(n, beta, mode)?.value };
        Ok((lhs, rhs, term))
    });
    let mut out = MowComparison {
        lhs: 0.0,
        rhs: 0.0,
        slack: 0.0,
        mode_terms: Vec::new(),
        error: 0.0,
        notes: Vec::new(),
    };
    for (mode, r) in modes.iter().zip(per_mode) {
        let (lhs, rhs, term) = r?;
        out.lhs += lhs.value;
        out.rhs += rhs.value;
        out.error += lhs.error_estimate + rhs.error_estimate;
        out.mode_terms.push((mode.k, term));
    }
    out.slack = out.rhs - out.lhs;
    if beta == n as f64 - 4.0 {
        out.notes.push("boundary case beta = n - 4: checked mode-wise, not through the weighted Hardy step".into());
    }
    Ok(out)
}

/// Signs of the series coefficients behind the pointwise mode inequality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientCheck {
    /// `((n-2+k)^2 + k^2 - (beta+2)^2) / 2`, required positive.
    pub leading: f64,
    /// Smallest `(n-3) - beta(beta+1)/((l+1)(2l+1)) + beta(n-5)/(2l+1)` over `l`.
    pub min_coefficient: f64,
    /// Every `(l, value)` with a negative coefficient.
    pub violations: Vec<(usize, f64)>,
}

impl CoefficientCheck {
    pub fn passed(&self) -> bool {
        self.leading > 0.0 && self.violations.is_empty()
    }
}

/// Series coefficient of `(2 rho)^(2l) / (2l)!` in the pointwise mode inequality.
pub fn series_coefficient(n: u32, beta: f64, l: usize) -> f64 {
    let (nf, lf) = (n as f64, l as f64);
    (nf - 3.0) - beta * (beta + 1.0) / ((lf + 1.0) * (2.0 * lf + 1.0)) + beta * (nf - 5.0) / (2.0 * lf + 1.0)
}

pub fn coefficient_check(n: u32, beta: f64, k: u32, l_max: usize) -> Result<CoefficientCheck> {
    check_range(n, beta)?;
    if k == 0 || l_max == 0 {
        return Err(Error::domain("coefficient_check", "need k >= 1 and l_max >= 1"));
    }
    let (nf, kf) = (n as f64, k as f64);
    let leading = ((nf - 2.0 + kf).powi(2) + kf * kf - (beta + 2.0).powi(2)) / 2.0;
    let mut min_coefficient = f64::INFINITY;
    let mut violations = Vec::new();
    for l in 1..=l_max {
        let c = series_coefficient(n, beta, l);
        min_coefficient = min_coefficient.min(c);
        if c < 0.0 {
            violations.push((l, c));
        }
    }
    Ok(CoefficientCheck { leading, min_coefficient, violations })
}

/// `c_k + (n-beta-4)^2/2 + 2 sinh^2 + 2(n-4) cosh^2 - beta(beta+1) sinh^2/rho^2
///  + beta(n-5) sinh(2 rho)/(2 rho)` at `rho`.
pub fn pointwise_mode_bound(n: u32, beta: f64, k: u32, rho: f64) -> f64 {
    let nf = n as f64;
    let (sh, ch) = (rho.sinh(), rho.cosh());
    let shq = if rho < 1e-4 { 1.0 + rho * rho / 6.0 } else { sh / rho };
    let sh2q = if rho < 1e-4 { 1.0 + 2.0 * rho * rho / 3.0 } else { (2.0 * rho).sinh() / (2.0 * rho) };
    mode_eigenvalue(n, k) + (nf - beta - 4.0).powi(2) / 2.0 + 2.0 * sh * sh + 2.0 * (nf - 4.0) * ch * ch
        - beta * (beta + 1.0) * shq * shq
        + beta * (nf - 5.0) * sh2q
}

/// Minimum of [`pointwise_mode_bound`] at `k = 1` over `grid`.
pub fn pointwise_positivity(n: u32, beta: f64, grid: &[f64]) -> Result<f64> {
    check_range(n, beta)?;
    if let Some(&bad) = grid.iter().find(|&&r| !(r > 0.0 && r <= 30.0)) {
        return Err(Error::domain("pointwise_positivity", format!("grid point {bad} outside (0, 30]")));
    }
    Ok(grid.iter().map(|&r| pointwise_mode_bound(n, beta, 1, r)).fold(f64::INFINITY, f64::min))
}

/// `count` points spaced logarithmically on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count.max(2) - 1) as f64).exp())
        .collect()
}

/// Both sides of the one-dimensional weighted Hardy step, in `rho`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeightedHardyCheck {
    /// `int F'^2 rho^(n-beta-3) J_1^((n-3)/(n-1)) drho`.
    pub lhs: f64,
    /// `int F^2 rho^(n-beta-5) J_1^((n-5)/(n-1)) drho`.
    pub rhs: f64,
    /// `(n-beta-4)^2 / 4`.
    pub constant: f64,
    /// `lhs - constant * rhs`.
    pub slack: f64,
    pub error: f64,
}

pub fn radial_weighted_hardy_check(n: u32, beta: f64, f: &dyn RadialFunction) -> Result<WeightedHardyCheck> {
    check_range(n, beta)?;
    let nf = n as f64;
    if !(beta < nf - 4.0) {
        return Err(Error::validity("weighted Hardy step", format!("needs beta < n - 4, got beta = {beta}")));
    }
    let outer = f.support_radius();
    if !outer.is_finite() {
        return Err(Error::Contract(format!("`{}` is not compactly supported", f.id())));
    }
    // (sinh rho / rho)^e
    let shq = |rho: f64, e: i32| if rho < 1e-4 { 1.0 + e as f64 * rho * rho / 6.0 } else { (rho.sinh() / rho).powi(e) };
    let lhs = RadialIntegrand::new(
        |rho| {
            let d = f.jet(rho, 1).coeff(1);
            d * d * shq(rho, n as i32 - 3)
        },
        nf - beta - 3.0,
        0.0,
        outer,
    )
    .with_breaks(f.breakpoints())
    .integrate(TOL)?;
    let rhs = RadialIntegrand::new(
        |rho| {
            let v = f.jet(rho, 0).value();
            v * v * shq(rho, n as i32 - 5)
        },
        nf - beta - 5.0,
        0.0,
        outer,
    )
    .with_breaks(f.breakpoints())
    .integrate(TOL)?;
    let constant = (nf - beta - 4.0).powi(2) / 4.0;
    Ok(WeightedHardyCheck {
        lhs: lhs.value,
        rhs: rhs.value,
        constant,
        slack: lhs.value - constant * rhs.value,
        error: lhs.error_estimate + constant * rhs.error_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues() {
        assert_eq!(mode_eigenvalue(3, 1), 2.0);
        assert_eq!(mode_eigenvalue(4, 2), 8.0);
        assert_eq!(mode_eigenvalue(7, 0), 0.0);
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coefficient_check(5, 1.0, 1, 1).unwrap().leading, 4.0);
        assert!((series_coefficient(3, -1.0, 1) - 2.0 / 3.0).abs() < 1e-15);
        assert!(coefficient_check(5, 1.0, 1, 100).unwrap().passed());
    }

    #[test]
    fn pointwise_origin_limit_is_leading_term() {
        for (n, beta) in [(5u32, 0.0), (4, -1.0), (7, 2.5)] {
            let lead = coefficient_check(n, beta, 1, 1).unwrap().leading;
            assert!((pointwise_mode_bound(n, beta, 1, 1e-7) - lead).abs() < 1e-9);
        }
    }
}
