use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_weighted, SingularWeight, Tolerance};

/// `|x|^(p-2) x`, zero at the origin.
pub(crate) fn signed_pow(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum() * x.abs().powf(p - 1.0)
    }
}

/// Convexity defect `R_p(xi, eta) = |eta|^p / p + (p-1)/p |xi|^p - |xi|^(p-2) xi eta`.
///
/// Nonnegative, and zero exactly when `xi == eta`. For `p = 2` the closed form
/// `(xi - eta)^2 / 2` is used to avoid cancellation.
pub fn remainder_rp(xi: f64, eta: f64, p: f64) -> f64 {
    if xi == eta {
        return 0.0;
    }
    if p == 2.0 {
        let d = xi - eta;
        return 0.5 * d * d;
    }
    let v = eta.abs().powf(p) / p + (p - 1.0) / p * xi.abs().powf(p) - signed_pow(xi, p) * eta;
    v.max(0.0)
}

/// `R_p` through `(p-1) int_0^1 |t xi + (1-t) eta|^(p-2) t dt |xi - eta|^2`,
/// integrated numerically.
///
/// With `t0` the zero of `t xi + (1-t) eta` the integrand is
/// `|xi - eta|^(p-2) |t - t0|^(p-2) t`, singular at `t0` for `p < 2`. Near `t0`
/// the distance `s = |t - t0|` is the integration variable and `s^(p-2)` is
/// handled as a weight.
pub fn remainder_rp_integral_form(xi: f64, eta: f64, p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::domain("remainder_rp_integral_form", format!("p = {p} must exceed 1")));
    }
    if xi == eta {
        return Ok(0.0);
    }
    let tol = Tolerance { rel: 1e-13, abs: 1e-300 };
    let d = (xi - eta).abs();
    let t0 = eta / (eta - xi);
    let total = if (-1.0..=2.0).contains(&t0) {
        // int over s in [lo, hi] of s^(p-2) (t0 + sign s)
        let side = |lo: f64, hi: f64, sign: f64| -> Result<f64> {
            let w = SingularWeight::Power(p - 2.0);
            let upto = |r: f64| -> Result<f64> {
                if r <= 0.0 {
                    return Ok(0.0);
                }
                Ok(integrate_weighted(|s| t0 + sign * s, w, r, tol)?.value)
            };
            Ok(upto(hi)? - upto(lo)?)
        };
        let right = side((-t0).max(0.0), (1.0 - t0).max(0.0), 1.0)?;
        let left = side((t0 - 1.0).max(0.0), t0.max(0.0), -1.0)?;
        d.powf(p - 2.0) * (right + left)
    } else {
        let g = |t: f64| (t * xi + (1.0 - t) * eta).abs().powf(p - 2.0) * t;
        integrate(g, 0.0, 1.0, tol)?.value
    };
    Ok((p - 1.0) * total * d * d)
}
