//! Closed-form radial geometry of the model spaces `K = -b`.
//!
//! With `x = sqrt(b) t`:
//!
//! ```text
//! ct_b(t) = sqrt(b) coth(x)        (1/t when b = 0)
//! D_b(t)  = t ct_b(t) - 1 = x coth(x) - 1
//! J_b(t)  = (sinh(x) / x)^(n-1)
//! J_b'/J_b = (n-1) D_b(t) / t
//! ```
//!
//! Near the origin `x coth x - 1` loses all its digits to cancellation, so the
//! scalar functions switch to series below fixed thresholds of `x`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::Jet;

/// Below this `sqrt(b) t` the order-6 Taylor polynomials are used.
pub const TAYLOR_CROSSOVER: f64 = 1e-3;
/// Below this `sqrt(b) t` the cancellation-free power series are used.
const SERIES_CROSSOVER: f64 = 2.0;
const SERIES_TERMS: usize = 24;

/// A model Cartan-Hadamard manifold of dimension `n` and constant sectional
/// curvature `-b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelManifold {
    pub n: u32,
    pub b: f64,
}

impl ModelManifold {
    pub fn new(n: u32, b: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("ModelManifold::new", format!("n = {n} < 2")));
        }
        if !(b.is_finite() && b >= 0.0) {
            return Err(Error::domain(
                "ModelManifold::new",
                format!("curvature bound b = {b} must be finite and >= 0"),
            ));
        }
        Ok(ModelManifold { n, b })
    }

    pub fn euclidean(n: u32) -> Self {
        ModelManifold { n, b: 0.0 }
    }

    pub fn hyperbolic(n: u32) -> Self {
        ModelManifold { n, b: 1.0 }
    }

    #[inline]
    pub fn dim(&self) -> f64 {
        self.n as f64
    }
}

// Taylor coefficients (in u = x^2) of sinh(x)/x.
fn sinhc_series() -> [f64; SERIES_TERMS] {
    let mut a = [0.0; SERIES_TERMS];
    let mut fact = 1.0;
    for (k, ak) in a.iter_mut().enumerate() {
        fact *= if k == 0 { 1.0 } else { ((2 * k) * (2 * k + 1)) as f64 };
        *ak = 1.0 / fact;
    }
    a
}

// cosh(x) - sinh(x)/x = sum_{k>=1} 2k u^k / (2k+1)!, all terms positive.
fn xcoth_numerator_series() -> [f64; SERIES_TERMS] {
    let s = sinhc_series();
    let mut a = [0.0; SERIES_TERMS];
    for k in 1..SERIES_TERMS {
        a[k] = 2.0 * k as f64 * s[k];
    }
    a
}

fn horner(a: &[f64], u: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, &c| acc * u + c)
}

/// `x coth(x) - 1` for `x >= 0`, without cancellation near zero.
pub fn xcothx_minus_one(x: f64) -> f64 {
    if x < TAYLOR_CROSSOVER {
        let u = x * x;
        u * (1.0 / 3.0 + u * (-1.0 / 45.0 + u * (2.0 / 945.0)))
    } else if x < SERIES_CROSSOVER {
        let u = x * x;
        horner(&xcoth_numerator_series(), u) / horner(&sinhc_series(), u)
    } else {
        x / x.tanh() - 1.0
    }
}

/// `ln(sinh(x) / x)` for `x >= 0`.
fn ln_sinhc(x: f64) -> f64 {
    if x < TAYLOR_CROSSOVER {
        let u = x * x;
        (u * (1.0 / 6.0 + u * (1.0 / 120.0 + u / 5040.0))).ln_1p()
    } else if x < SERIES_CROSSOVER {
        horner(&sinhc_series(), x * x).ln()
    } else {
        x - (2.0 * x).ln() + (-(-2.0 * x).exp()).ln_1p()
    }
}

fn check_radius(op: &'static str, t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(op, format!("radius t = {t} must be finite and > 0")))
    }
}

fn check_bound(op: &'static str, b: f64) -> Result<()> {
    if b.is_finite() && b >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(op, format!("curvature bound b = {b} must be >= 0")))
    }
}

/// `ct_b(t)`: `1/t` for `b = 0`, `sqrt(b) coth(sqrt(b) t)` otherwise.
pub fn ct(b: f64, t: f64) -> Result<f64> {
    check_bound("ct", b)?;
    check_radius("ct", t)?;
    if b == 0.0 {
        return Ok(1.0 / t);
    }
    let x = b.sqrt() * t;
    Ok((1.0 + xcothx_minus_one(x)) / t)
}

/// `D_b(t) = t ct_b(t) - 1`, with `D_b(0) = 0`. Always non-negative.
pub fn dd(b: f64, t: f64) -> Result<f64> {
    check_bound("dd", b)?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::domain("dd", format!("radius t = {t} must be >= 0")));
    }
    if b == 0.0 || t == 0.0 {
        return Ok(0.0);
    }
    Ok(xcothx_minus_one(b.sqrt() * t))
}

/// Model density `J_b(t) = (sinh(sqrt(b) t) / (sqrt(b) t))^(n-1)`.
pub fn density(m: &ModelManifold, t: f64) -> Result<f64> {
    check_radius("density", t)?;
    if m.b == 0.0 {
        return Ok(1.0);
    }
    let lj = (m.dim() - 1.0) * ln_sinhc(m.b.sqrt() * t);
    if lj > f64::MAX.ln() {
        return Err(Error::Overflow {
            op: "density",
            detail: format!("J_b({t}) exceeds the double range (ln J = {lj})"),
        });
    }
    Ok(lj.exp())
}

/// `J_b'(t) / J_b(t) = (n-1) D_b(t) / t`.
pub fn density_log_deriv(m: &ModelManifold, t: f64) -> Result<f64> {
    check_radius("density_log_deriv", t)?;
    Ok((m.dim() - 1.0) * dd(m.b, t)? / t)
}

/// Radial volume weight `t^(n-1) J_b(t)`; `0` at `t = 0`.
pub fn measure_weight(m: &ModelManifold, t: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(0.0);
    }
    check_radius("measure_weight", t)?;
    let lw = (m.dim() - 1.0) * (t.ln() + ln_sinhc(m.b.sqrt() * t));
    if lw > f64::MAX.ln() {
        return Err(Error::Overflow {
            op: "measure_weight",
            detail: format!("weight at t = {t} exceeds the double range"),
        });
    }
    Ok(lw.exp())
}

/// Geodesic radius of a point at Euclidean radius `r` in the Poincare ball.
pub fn rho_from_r(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::domain("rho_from_r", format!("r = {r} not in [0, 1)")));
    }
    Ok(2.0 * r.atanh())
}

/// Euclidean ball radius `tanh(rho / 2)` of a point at geodesic radius `rho`.
///
/// For `rho` beyond about 37 the exact value is within half an ulp of 1 and
/// rounds to `1.0`; use [`one_minus_r_from_rho`] when the gap matters.
pub fn r_from_rho(rho: f64) -> Result<f64> {
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::domain("r_from_rho", format!("rho = {rho} must be >= 0")));
    }
    Ok((0.5 * rho).tanh())
}

/// `1 - tanh(rho / 2) = 2 / (e^rho + 1)`, accurate for large `rho`.
pub fn one_minus_r_from_rho(rho: f64) -> Result<f64> {
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::domain(
            "one_minus_r_from_rho",
            format!("rho = {rho} must be >= 0"),
        ));
    }
    let e = (-rho).exp();
    Ok(2.0 * e / (1.0 + e))
}

/// Both sides of `t coth(t) - 1 >= 3 t^2 / (pi^2 + t^2)`.
pub fn coth_gap_lower_bound(t: f64) -> Result<(f64, f64)> {
    check_radius("coth_gap_lower_bound", t)?;
    let t2 = t * t;
    Ok((
        xcothx_minus_one(t),
        3.0 * t2 / (std::f64::consts::PI.powi(2) + t2),
    ))
}

/// Jet of `ct_b` about `t.center()`, for `t` a jet of the radius.
pub fn ct_jet(b: f64, t: &Jet) -> Jet {
    if b == 0.0 {
        return t.recip();
    }
    let sb = b.sqrt();
    let x = t.scale(sb);
    if x.value() < SERIES_CROSSOVER {
        // ct = (1 + D) / t with D from the even series in s = t^2
        let s = *t * *t;
        (dd_even_jet(b, &s) + 1.0) / *t
    } else {
        let (sh, chh) = x.sinh_cosh();
        (chh / sh).scale(sb)
    }
}

/// Jet of `s -> D_b(sqrt(s))`, an entire function of `s`, about `s.center()`.
pub fn dd_even_jet(b: f64, s: &Jet) -> Jet {
    if b == 0.0 {
        return Jet::zero(s.center(), s.order());
    }
    let u = s.scale(b);
    let num = u.power_series(&xcoth_numerator_series());
    let den = u.power_series(&sinhc_series());
    num / den
}

/// A radial volume density `t -> (J(t), J'(t))` paired with a dimension.
///
/// On model spaces the density is [`ModelManifold`] itself; custom monotone
/// profiles may be supplied to explore non-model radial geometries.
pub trait DensityProfile: Send + Sync {
    fn dim(&self) -> u32;

    /// `(J(t), J'(t))` for `t > 0`.
    fn eval(&self, t: f64) -> Result<(f64, f64)>;

    /// The bound `b` with `K <= -b` the profile claims to satisfy.
    fn declared_bound(&self) -> f64;

    /// `t J'(t) / J(t)`, bounded near the origin.
    fn scaled_log_deriv(&self, t: f64) -> Result<f64> {
        let (j, dj) = self.eval(t)?;
        Ok(t * dj / j)
    }

    /// The model manifold, when this profile is one. Only model profiles
    /// provide the jets needed by iterated radial Laplacians.
    fn as_model(&self) -> Option<&ModelManifold> {
        None
    }
}

impl DensityProfile for ModelManifold {
    fn dim(&self) -> u32 {
        self.n
    }

    fn eval(&self, t: f64) -> Result<(f64, f64)> {
        let j = density(self, t)?;
        Ok((j, j * density_log_deriv(self, t)?))
    }

    fn declared_bound(&self) -> f64 {
        self.b
    }

    fn scaled_log_deriv(&self, t: f64) -> Result<f64> {
        Ok((self.dim() - 1.0) * dd(self.b, t)?)
    }

    fn as_model(&self) -> Option<&ModelManifold> {
        Some(self)
    }
}

/// A user-supplied radial density.
pub struct CustomDensity<F> {
    pub n: u32,
    pub bound: f64,
    pub eval: F,
}

impl<F> DensityProfile for CustomDensity<F>
where
    F: Fn(f64) -> (f64, f64) + Send + Sync,
{
    fn dim(&self) -> u32 {
        self.n
    }

    fn eval(&self, t: f64) -> Result<(f64, f64)> {
        check_radius("CustomDensity::eval", t)?;
        Ok((self.eval)(t))
    }

    fn declared_bound(&self) -> f64 {
        self.bound
    }
}

/// Check `J >= 1`, `J' >= 0` and the comparison `J'/J >= (n-1) D_b / t` for
/// the declared bound on a grid of radii. Returns the first violation.
pub fn check_density_profile(profile: &dyn DensityProfile, grid: &[f64]) -> Result<()> {
    let n = profile.dim() as f64;
    let b = profile.declared_bound();
    for &t in grid {
        let (j, dj) = profile.eval(t)?;
        let need = (n - 1.0) * dd(b, t)? / t;
        let tol = 1e-12 * (1.0 + need.abs());
        if j < 1.0 - 1e-14 || dj < -1e-14 || dj / j < need - tol {
            return Err(Error::Contract(format!(
                "density profile fails the comparison at t = {t}: J = {j}, J' = {dj}, \
                 required J'/J >= {need} for b = {b}"
            )));
        }
    }
    Ok(())
}
