//! Pointwise values of a profile and its radial derivatives, in the scaling
//! each integrand needs.

use std::f64::consts::PI;

use crate::error::Result;
use crate::geometry::{dd, density, ModelManifold};
use crate::jets::radial::{laplacian_tower, log_laplacian_tower};
use crate::jets::RadialFunction;

/// Below this radius profiles with logarithmic growth are differentiated in
/// `t = ln(1/rho)`.
const LOG_REGIME: f64 = 0.5;

/// Which derivatives an integrand reads.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Need {
    pub deriv: bool,
    /// Power `l >= 1` of the Laplacian, with `dlap` adding its radial derivative.
    pub lap: usize,
    pub dlap: bool,
}

impl Need {
    pub const F: Need = Need { deriv: false, lap: 0, dlap: false };
    pub const D: Need = Need { deriv: true, lap: 0, dlap: false };

    pub fn lap(l: usize) -> Need {
        Need { deriv: false, lap: l, dlap: false }
    }

    pub fn dlap(l: usize) -> Need {
        Need { deriv: false, lap: l, dlap: true }
    }
}

/// Values at one radius.
///
/// Plain mode: `f`, `d = f'`, `lap = Delta^l f`, `dlap = d/drho Delta^l f`.
///
/// Critical mode (logarithmic weights, profiles growing like `t^g` with
/// `t = ln(1/rho)`): every quantity of derivative order `k` is multiplied by
/// `rho^k` and by `t^(-g)` for `k = 0`, `t^(1-g)` for `k >= 1`, so that all
/// stay bounded at the origin.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Sample {
    pub rho: f64,
    /// `ln(1/rho)` in critical mode, `0` otherwise.
    pub t: f64,
    pub f: f64,
    pub d: f64,
    pub lap: f64,
    pub dlap: f64,
    /// Density ratio `J_b(rho)`.
    pub j: f64,
    /// `D_b(rho)`.
    pub dd: f64,
    /// `D_b(rho) / rho^2`, bounded at the origin.
    pub dq: f64,
    /// `1 / (pi^2 + b rho^2)`.
    pub pw: f64,
    /// `dx / dV_g = (1 + cosh rho)^(-n)` on the Poincare ball.
    pub dx: f64,
}

pub(crate) struct Probe<'a> {
    pub m: ModelManifold,
    pub f: &'a dyn RadialFunction,
    pub need: Need,
    pub critical: bool,
}

fn d_over_sq(b: f64, rho: f64) -> Result<f64> {
    if b == 0.0 {
        return Ok(0.0);
    }
    let x = b.sqrt() * rho;
    if x < 1e-3 {
        let u = x * x;
        return Ok(b * (1.0 / 3.0 + u * (-1.0 / 45.0 + u * (2.0 / 945.0))));
    }
    Ok(dd(b, rho)? / (rho * rho))
}

impl Probe<'_> {
    pub fn sample(&self, rho: f64) -> Result<Sample> {
        let m = &self.m;
        let mut s = Sample {
            rho,
            j: density(m, rho)?,
            dd: dd(m.b, rho)?,
            dq: d_over_sq(m.b, rho)?,
            pw: 1.0 / (PI * PI + m.b * rho * rho),
            dx: (-(m.dim()) * (1.0 + rho.cosh()).ln()).exp(),
            ..Sample::default()
        };
        if self.critical {
            s.t = -rho.ln();
        }
        if rho >= self.f.support_radius() || rho <= self.f.inner_radius() {
            return Ok(s);
        }
        let gamma = self.f.log_growth();
        let l = self.need.lap;
        let extra = usize::from(self.need.dlap);
        if self.critical && gamma != 0.0 && rho < LOG_REGIME {
            let t = s.t;
            let base = self.f.log_jet(t, 1);
            let (t0, t1) = (t.powf(-gamma), t.powf(1.0 - gamma));
            s.f = base.value() * t0;
            s.d = -base.coeff(1) * t1;
            if l > 0 {
                let h = log_laplacian_tower(m, self.f, l, extra, t);
                s.lap = h.value() * t1;
                if self.need.dlap {
                    s.dlap = (-2.0 * l as f64 * h.value() - h.coeff(1)) * t1;
                }
            }
            return Ok(s);
        }
        let base = self.f.jet(rho, if self.need.deriv { 1 } else { 0 });
        s.f = base.value();
        if self.need.deriv {
            s.d = base.coeff(1);
        }
        if l > 0 || self.need.dlap {
            let g = laplacian_tower(m, self.f, l, extra, rho);
            s.lap = g.value();
            if self.need.dlap {
                s.dlap = g.coeff(1);
            }
        }
        if self.critical {
            let t = s.t;
            let (t0, t1) = (t.powf(-gamma), t.powf(1.0 - gamma));
            s.f *= t0;
            s.d *= rho * t1;
            let r2l = rho.powi(2 * l as i32);
            s.lap *= r2l * t1;
            s.dlap *= r2l * rho * t1;
        }
        Ok(s)
    }
}
