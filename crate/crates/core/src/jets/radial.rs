use std::fmt;
use std::sync::Arc;

use super::arith::Jet;
use crate::error::{Error, Result};
use crate::geometry::{ct_jet, dd_even_jet, DensityProfile, ModelManifold};

/// Largest `l` accepted by the iterated Laplacian operators.
pub const MAX_LAPLACIAN_POWER: usize = 4;

/// Below this radius iterated Laplacians of even profiles are propagated in
/// the variable `s = rho^2`, where the `(n-1)/rho` singularity is removable.
const RHO_SWITCH: f64 = 0.5;

/// Below this `s` the generic `rho = sqrt(s)` reparametrisation loses too
/// many digits; profiles must then supply their even jet directly.
const EVEN_SQRT_FLOOR: f64 = 1e-4;

/// A compactly supported radial profile `rho -> f(rho)`.
pub trait RadialFunction: Send + Sync {
    /// Parseable descriptive id, e.g. `bump:R=1,m=4`.
    fn id(&self) -> String;

    /// `f` vanishes identically on `[support_radius, inf)`.
    fn support_radius(&self) -> f64;

    /// Largest `k` for which the `k`-th derivative is guaranteed continuous.
    fn min_smoothness(&self) -> usize;

    /// Jet of `f` about `rho > 0`; the zero jet for `rho >= support_radius`.
    fn jet(&self, rho: f64, order: usize) -> Jet;

    /// Jet of `h` about `s = rho^2` where `f(rho) = h(rho^2)`, for profiles
    /// that are even near the origin. `None` when `f` is not even there.
    fn even_jet(&self, s: f64, order: usize) -> Option<Jet> {
        sqrt_even_jet(self, s, order)
    }

    /// `f` vanishes on `[0, inner_radius]`.
    fn inner_radius(&self) -> f64 {
        0.0
    }

    /// Radii where the profile changes regime (cutoff ramps); quadrature
    /// splits there.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// Exponent `g` with `f ~ (ln 1/rho)^g` as `rho -> 0`; zero for profiles
    /// bounded with a finite limit.
    fn log_growth(&self) -> f64 {
        0.0
    }

    /// Jet of `F(t) = f(exp(-t))` about `t = ln(1/rho) > 0`. Profiles with
    /// logarithmic growth override this to stay finite deep inside the
    /// origin, where the `rho`-jets overflow.
    fn log_jet(&self, t: f64, order: usize) -> Jet {
        let rho = (-Jet::variable(t, order)).exp();
        rho.compose(&self.jet(rho.value(), order))
    }
}

/// Generic even jet through `rho = sqrt(s)`, adequate away from the origin.
pub fn sqrt_even_jet<F: RadialFunction + ?Sized>(
    f: &F,
    s: f64,
    order: usize,
) -> Option<Jet> {
    if s < EVEN_SQRT_FLOOR {
        return None;
    }
    let rho = Jet::variable(s, order).powf(0.5);
    Some(rho.compose(&f.jet(rho.value(), order)))
}

impl<T: RadialFunction + ?Sized> RadialFunction for Arc<T> {
    fn id(&self) -> String {
        (**self).id()
    }
    fn support_radius(&self) -> f64 {
        (**self).support_radius()
    }
    fn min_smoothness(&self) -> usize {
        (**self).min_smoothness()
    }
    fn jet(&self, rho: f64, order: usize) -> Jet {
        (**self).jet(rho, order)
    }
    fn even_jet(&self, s: f64, order: usize) -> Option<Jet> {
        (**self).even_jet(s, order)
    }
    fn inner_radius(&self) -> f64 {
        (**self).inner_radius()
    }
    fn breakpoints(&self) -> Vec<f64> {
        (**self).breakpoints()
    }
    fn log_growth(&self) -> f64 {
        (**self).log_growth()
    }
    fn log_jet(&self, t: f64, order: usize) -> Jet {
        (**self).log_jet(t, order)
    }
}

type JetMap = dyn Fn(Jet) -> Jet + Send + Sync;

/// A radial profile given by a jet-valued closure, e.g. `|x| (-x).exp()`.
///
/// Handy for analytic test functions that need no compact support.
#[derive(Clone)]
pub struct JetFn {
    id: String,
    support: f64,
    smoothness: usize,
    map: Arc<JetMap>,
    even: Option<Arc<JetMap>>,
}

impl JetFn {
    pub fn new(
        id: impl Into<String>,
        support: f64,
        smoothness: usize,
        map: impl Fn(Jet) -> Jet + Send + Sync + 'static,
    ) -> Self {
        JetFn {
            id: id.into(),
            support,
            smoothness,
            map: Arc::new(map),
            even: None,
        }
    }

    /// Attach `h` with `f(rho) = h(rho^2)`.
    pub fn with_even(mut self, h: impl Fn(Jet) -> Jet + Send + Sync + 'static) -> Self {
        self.even = Some(Arc::new(h));
        self
    }
}

impl fmt::Debug for JetFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetFn").field("id", &self.id).finish()
    }
}

impl RadialFunction for JetFn {
    fn id(&self) -> String {
        self.id.clone()
    }

    fn support_radius(&self) -> f64 {
        self.support
    }

    fn min_smoothness(&self) -> usize {
        self.smoothness
    }

    fn jet(&self, rho: f64, order: usize) -> Jet {
        if rho >= self.support {
            return Jet::zero(rho, order);
        }
        (self.map)(Jet::variable(rho, order))
    }

    fn even_jet(&self, s: f64, order: usize) -> Option<Jet> {
        match &self.even {
            Some(h) if s < self.support * self.support => Some(h(Jet::variable(s, order))),
            Some(_) => Some(Jet::zero(s, order)),
            None => sqrt_even_jet(self, s, order),
        }
    }
}

fn check_rho(op: &'static str, rho: f64) -> Result<()> {
    if rho.is_finite() && rho > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(op, format!("radius rho = {rho} must be finite and > 0")))
    }
}

fn check_smoothness(f: &dyn RadialFunction, needed: usize, what: &str) -> Result<()> {
    if f.min_smoothness() < needed {
        return Err(Error::Contract(format!(
            "{what} needs {needed} continuous derivatives but `{}` guarantees {}",
            f.id(),
            f.min_smoothness()
        )));
    }
    Ok(())
}

fn check_power(l: usize) -> Result<()> {
    if l > MAX_LAPLACIAN_POWER {
        return Err(Error::Contract(format!(
            "Laplacian power {l} exceeds the supported maximum {MAX_LAPLACIAN_POWER}"
        )));
    }
    Ok(())
}

/// `d f / d rho` at `rho`.
pub fn radial_derivative(f: &dyn RadialFunction, rho: f64) -> Result<f64> {
    check_rho("radial_derivative", rho)?;
    check_smoothness(f, 1, "the radial derivative")?;
    Ok(f.jet(rho, 1).coeff(1))
}

/// `Delta_{g,rho} f = f'' + (n-1) ct_b(rho) f'`.
pub fn radial_laplacian(m: &ModelManifold, f: &dyn RadialFunction, rho: f64) -> Result<f64> {
    radial_laplacian_power(m, f, 1, rho)
}

/// `f'' + ((n-1)/rho + J'/J) f'` for an arbitrary radial density profile.
pub fn radial_laplacian_with(
    profile: &dyn DensityProfile,
    f: &dyn RadialFunction,
    rho: f64,
) -> Result<f64> {
    check_rho("radial_laplacian", rho)?;
    check_smoothness(f, 2, "the radial Laplacian")?;
    if let Some(m) = profile.as_model() {
        return radial_laplacian(m, f, rho);
    }
    let j = f.jet(rho, 2);
    let (dens, ddens) = profile.eval(rho)?;
    let n = profile.dim() as f64;
    Ok(j.derivative(2) + ((n - 1.0) / rho + ddens / dens) * j.coeff(1))
}

/// `Delta_{g,rho}^l f` at `rho`, for `1 <= l <= 4`.
pub fn radial_laplacian_power(
    m: &ModelManifold,
    f: &dyn RadialFunction,
    l: usize,
    rho: f64,
) -> Result<f64> {
    check_rho("radial_laplacian_power", rho)?;
    check_power(l)?;
    check_smoothness(f, 2 * l, "the iterated radial Laplacian")?;
    if rho >= f.support_radius() {
        return Ok(0.0);
    }
    Ok(laplacian_tower(m, f, l, 0, rho).value())
}

/// `d/drho Delta_{g,rho}^l f` at `rho`, for `0 <= l <= 4`.
pub fn drho_laplacian_power(
    m: &ModelManifold,
    f: &dyn RadialFunction,
    l: usize,
    rho: f64,
) -> Result<f64> {
    check_rho("drho_laplacian_power", rho)?;
    check_power(l)?;
    check_smoothness(f, 2 * l + 1, "the radial derivative of the iterated Laplacian")?;
    if rho >= f.support_radius() {
        return Ok(0.0);
    }
    Ok(laplacian_tower(m, f, l, 1, rho).coeff(1))
}

/// Jet in `rho` of `Delta^l f` carrying `extra` further orders.
pub(crate) fn laplacian_tower(
    m: &ModelManifold,
    f: &dyn RadialFunction,
    l: usize,
    extra: usize,
    rho: f64,
) -> Jet {
    let order = 2 * l + extra;
    if l > 0 && rho < RHO_SWITCH {
        let s = rho * rho;
        if let Some(h) = f.even_jet(s, order) {
            let h = even_laplacian_power(m, h, l);
            // back to rho: only the value and the first derivative are needed
            let mut coeffs = [h.value(), 0.0];
            if extra >= 1 {
                coeffs[1] = 2.0 * rho * h.coeff(1);
            }
            return Jet::from_coeffs(rho, &coeffs[..=extra.min(1)]);
        }
    }
    let mut g = f.jet(rho, order);
    if l == 0 {
        return g;
    }
    let ct = ct_jet(m.b, &Jet::variable(rho, order)).scale(m.dim() - 1.0);
    for _ in 0..l {
        let d1 = g.differentiate();
        let d2 = d1.differentiate();
        g = d2 + ct.truncate(d1.order()) * d1;
    }
    g
}

/// Jet in `t = ln(1/rho)` of `rho^(2l) Delta^l f`, carrying `extra` further
/// orders.
///
/// With `theta = rho d/drho = -d/dt` and `H_j = rho^(2j) Delta^j f`,
/// `H_(j+1) = a^2 H + 2a theta H + theta^2 H + (n - 2 + (n-1) D)(a H + theta H)`
/// for `a = -2j`. Valid for `rho < 1/2`.
pub(crate) fn log_laplacian_tower(
    m: &ModelManifold,
    f: &dyn RadialFunction,
    l: usize,
    extra: usize,
    t: f64,
) -> Jet {
    let order = 2 * l + extra;
    let mut h = f.log_jet(t, order);
    if l == 0 {
        return h;
    }
    let n = m.dim();
    let s = Jet::variable(t, order).scale(-2.0).exp();
    let coef = dd_even_jet(m.b, &s).scale(n - 1.0) + (n - 2.0);
    for j in 0..l {
        let a = -2.0 * j as f64;
        let th = -h.differentiate();
        let th2 = -th.differentiate();
        let h0 = h.truncate(th2.order());
        let th = th.truncate(th2.order());
        h = h0.scale(a * a) + th.scale(2.0 * a) + th2 + coef.truncate(th2.order()) * (h0.scale(a) + th);
    }
    h
}

// H <- 4 s H'' + (2n + 2(n-1) D(s)) H', with f(rho) = H(rho^2).
fn even_laplacian_power(m: &ModelManifold, mut h: Jet, l: usize) -> Jet {
    let n = m.dim();
    let s = Jet::variable(h.center(), h.order());
    let coef = dd_even_jet(m.b, &s).scale(2.0 * (n - 1.0)) + 2.0 * n;
    for _ in 0..l {
        let d1 = h.differentiate();
        let d2 = d1.differentiate();
        h = s.truncate(d2.order()).scale(4.0) * d2 + coef.truncate(d2.order()) * d1;
    }
    h
}
