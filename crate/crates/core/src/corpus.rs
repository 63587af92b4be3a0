//! Radial test profiles: compactly supported bumps and cutoffs, the
//! extremizer families approaching the sharp constants, and the mode
//! profiles used by the spherical-harmonic comparison.

use std::fmt;
use std::sync::Arc;

use crate::constants::{validity, CaseParams, Family};
use crate::error::{Error, Result};
use crate::geometry::rho_from_r;
use crate::jets::{Jet, RadialFunction, MAX_ORDER};

/// Smallest admissible extremizer scale.
pub const SCALE_FLOOR: f64 = 1e-8;

/// Beyond this magnitude of the exponent the cutoff is flat to double
/// precision, derivatives included.
const FLAT_EXPONENT: f64 = 700.0;

/// `phi(t) = H(b - t) / (H(b - t) + H(t - a))` with `H(s) = exp(-1/s)` for
/// `s > 0`, evaluated on a jet argument.
fn cutoff_jet(a: f64, b: f64, t: &Jet) -> Jet {
    let v = t.value();
    if v <= a {
        return Jet::constant(1.0, t.center(), t.order());
    }
    if v >= b {
        return Jet::zero(t.center(), t.order());
    }
    // phi = 1 / (1 + exp(E)), E = 1/(b - t) - 1/(t - a)
    let e = (b - *t).recip() - (*t - a).recip();
    let ev = e.value();
    if ev > FLAT_EXPONENT {
        return Jet::zero(t.center(), t.order());
    }
    if ev < -FLAT_EXPONENT {
        return Jet::constant(1.0, t.center(), t.order());
    }
    if ev > 0.0 {
        let x = (-e).exp();
        x / (x + 1.0)
    } else {
        (e.exp() + 1.0).recip()
    }
}

/// The cutoff `phi`: 1 on `[0, a]`, 0 on `[b, inf)`, smooth and monotone.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothCutoff {
    pub a: f64,
    pub b: f64,
}

pub fn smooth_cutoff(a: f64, b: f64) -> Result<SmoothCutoff> {
    if !(a > 0.0 && a < b && b.is_finite()) {
        return Err(Error::domain("smooth_cutoff", format!("need 0 < a < b, got a = {a}, b = {b}")));
    }
    Ok(SmoothCutoff { a, b })
}

impl SmoothCutoff {
    pub fn value(&self, t: f64) -> f64 {
        cutoff_jet(self.a, self.b, &Jet::constant(t, t, 0)).value()
    }

    pub fn jet_of(&self, t: &Jet) -> Jet {
        cutoff_jet(self.a, self.b, t)
    }
}

impl RadialFunction for SmoothCutoff {
    fn id(&self) -> String {
        format!("cutoff:a={},b={}", self.a, self.b)
    }
    fn support_radius(&self) -> f64 {
        self.b
    }
    fn min_smoothness(&self) -> usize {
        MAX_ORDER
    }
    fn jet(&self, rho: f64, order: usize) -> Jet {
        cutoff_jet(self.a, self.b, &Jet::variable(rho, order))
    }
    fn even_jet(&self, s: f64, order: usize) -> Option<Jet> {
        if s <= self.a * self.a {
            return Some(Jet::constant(1.0, s, order));
        }
        crate::jets::sqrt_even_jet(self, s, order)
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![self.a]
    }
}

/// `(1 - (rho/R)^2)^m` on `[0, R)`, zero beyond.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolynomialBump {
    pub r: f64,
    pub m: u32,
}

pub fn polynomial_bump(r: f64, m: u32) -> Result<PolynomialBump> {
    if !(r > 0.0 && r.is_finite()) || m < 2 {
        return Err(Error::domain("polynomial_bump", format!("need R > 0 and m >= 2, got R = {r}, m = {m}")));
    }
    Ok(PolynomialBump { r, m })
}

impl RadialFunction for PolynomialBump {
    fn id(&self) -> String {
        format!("bump:R={},m={}", self.r, self.m)
    }
    fn support_radius(&self) -> f64 {
        self.r
    }
    fn min_smoothness(&self) -> usize {
        (self.m - 1) as usize
    }
    fn jet(&self, rho: f64, order: usize) -> Jet {
        if rho >= self.r {
            return Jet::zero(rho, order);
        }
        let x = Jet::variable(rho, order).scale(1.0 / self.r);
        (1.0 - x * x).powi(self.m)
    }
    fn even_jet(&self, s: f64, order: usize) -> Option<Jet> {
        if s >= self.r * self.r {
            return Some(Jet::zero(s, order));
        }
        Some((1.0 - Jet::variable(s, order).scale(1.0 / (self.r * self.r))).powi(self.m))
    }
}

/// Smooth cutoff times a polynomial bump sharing its outer radius:
/// `phi_{a,b}(rho) (1 - (rho/b)^2)^m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Composite {
    pub cutoff: SmoothCutoff,
    pub bump: PolynomialBump,
}

pub fn composite(a: f64, b: f64, m: u32) -> Result<Composite> {
    Ok(Composite {
        cutoff: smooth_cutoff(a, b)?,
        bump: polynomial_bump(b, m)?,
    })
}

/// The default composite member of the verification corpus.
pub fn default_composite() -> Composite {
    composite(0.25, 1.0, 2).expect("fixed parameters are valid")
}

impl RadialFunction for Composite {
    fn id(&self) -> String {
        format!("composite:a={},b={},m={}", self.cutoff.a, self.cutoff.b, self.bump.m)
    }
    fn support_radius(&self) -> f64 {
        self.cutoff.b
    }
    fn min_smoothness(&self) -> usize {
        MAX_ORDER
    }
    fn jet(&self, rho: f64, order: usize) -> Jet {
        self.cutoff.jet(rho, order) * self.bump.jet(rho, order)
    }
    fn even_jet(&self, s: f64, order: usize) -> Option<Jet> {
        Some(self.cutoff.even_jet(s, order)? * self.bump.even_jet(s, order)?)
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![self.cutoff.a]
    }
}

/// Extremizer families of the sharpness arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Hardy,
    Critical,
    OneTwo,
    Rellich2,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Hardy => "hardy",
            FamilyKind::Critical => "critical",
            FamilyKind::OneTwo => "onetwo",
            FamilyKind::Rellich2 => "rellich2",
        }
    }

    pub fn parse(s: &str) -> Result<FamilyKind> {
        match s {
            "hardy" => Ok(FamilyKind::Hardy),
            "critical" => Ok(FamilyKind::Critical),
            "onetwo" => Ok(FamilyKind::OneTwo),
            "rellich2" => Ok(FamilyKind::Rellich2),
            _ => Err(Error::UnknownCase(s.to_string())),
        }
    }

    /// Validity family whose range the parameters must satisfy.
    pub fn validity_family(&self) -> Family {
        match self {
            FamilyKind::Hardy => Family::Hardy,
            FamilyKind::Critical => Family::CriticalHardy,
            FamilyKind::OneTwo => Family::OneTwo,
            FamilyKind::Rellich2 => Family::Rellich2,
        }
    }

    /// Admissible `(min, max)` of the scale parameter.
    pub fn scale_range(&self, p: f64) -> (f64, f64) {
        match self {
            FamilyKind::Critical => (SCALE_FLOOR, (p - 1.0) / (2.0 * p)),
            _ => (SCALE_FLOOR, 0.25),
        }
    }

    pub fn scale_name(&self) -> &'static str {
        match self {
            FamilyKind::Hardy => "eps",
            _ => "delta",
        }
    }
}

/// An extremizer family at fixed parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremizerFamily {
    pub kind: FamilyKind,
    pub params: CaseParams,
}

impl ExtremizerFamily {
    pub fn new(kind: FamilyKind, params: CaseParams) -> Result<Self> {
        validity(kind.validity_family(), &params)?;
        Ok(ExtremizerFamily { kind, params })
    }

    pub fn member(&self, scale: f64) -> Result<Arc<dyn RadialFunction>> {
        let c = &self.params;
        Ok(match self.kind {
            FamilyKind::Hardy => Arc::new(hardy_extremizer(c, scale)?),
            FamilyKind::Critical => Arc::new(critical_extremizer(c, scale)?),
            FamilyKind::OneTwo => Arc::new(onetwo_extremizer(c, scale)?),
            FamilyKind::Rellich2 => Arc::new(rellich2_extremizer(c, scale)?),
        })
    }
}

fn check_scale(kind: FamilyKind, p: f64, s: f64) -> Result<()> {
    let (lo, hi) = kind.scale_range(p);
    if !(s >= lo && s <= hi) {
        return Err(Error::domain(
            "extremizer",
            format!("{} family scale {} = {s} outside [{lo}, {hi}]", kind.name(), kind.scale_name()),
        ));
    }
    Ok(())
}

/// `phi_out(rho) (1 - phi_in(rho / s)) rho^-a`: a power law cut off at both
/// ends.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerLawExtremizer {
    kind: FamilyKind,
    scale: f64,
    exponent: f64,
    cutoff: SmoothCutoff,
}

impl PowerLawExtremizer {
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Power `a` of the profile `rho^-a` on its plateau.
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn cutoff(&self) -> SmoothCutoff {
        self.cutoff
    }
}

/// `f_eps = phi(rho)(1 - phi(rho/eps)) rho^(-(n-p-beta)/p)`, `phi = phi_{1,2}`.
pub fn hardy_extremizer(c: &CaseParams, eps: f64) -> Result<PowerLawExtremizer> {
    validity(Family::Hardy, c)?;
    check_scale(FamilyKind::Hardy, c.p, eps)?;
    Ok(PowerLawExtremizer {
        kind: FamilyKind::Hardy,
        scale: eps,
        exponent: (c.nf() - c.p - c.beta) / c.p,
        cutoff: smooth_cutoff(1.0, 2.0)?,
    })
}

/// `f_delta = phi(rho)(1 - phi(rho/delta)) rho^(-(n-p-beta)/p)`, `phi = phi_{1/2,1}`.
pub fn onetwo_extremizer(c: &CaseParams, delta: f64) -> Result<PowerLawExtremizer> {
    validity(Family::OneTwo, c)?;
    check_scale(FamilyKind::OneTwo, c.p, delta)?;
    Ok(PowerLawExtremizer {
        kind: FamilyKind::OneTwo,
        scale: delta,
        exponent: (c.nf() - c.p - c.beta) / c.p,
        cutoff: smooth_cutoff(0.5, 1.0)?,
    })
}

/// `f_delta = phi(rho)(1 - phi(rho/delta)) rho^(-(n-2p-beta)/p)`, `phi = phi_{1/2,1}`.
pub fn rellich2_extremizer(c: &CaseParams, delta: f64) -> Result<PowerLawExtremizer> {
    validity(Family::Rellich2, c)?;
    check_scale(FamilyKind::Rellich2, c.p, delta)?;
    Ok(PowerLawExtremizer {
        kind: FamilyKind::Rellich2,
        scale: delta,
        exponent: (c.nf() - 2.0 * c.p - c.beta) / c.p,
        cutoff: smooth_cutoff(0.5, 1.0)?,
    })
}

impl RadialFunction for PowerLawExtremizer {
    fn id(&self) -> String {
        format!("{}_ext:{}={}", self.kind.name(), self.kind.scale_name(), self.scale)
    }
    fn support_radius(&self) -> f64 {
        self.cutoff.b
    }
    fn min_smoothness(&self) -> usize {
        MAX_ORDER
    }
    fn jet(&self, rho: f64, order: usize) -> Jet {
        if rho <= self.inner_radius() || rho >= self.cutoff.b {
            return Jet::zero(rho, order);
        }
        let x = Jet::variable(rho, order);
        let inner = 1.0 - self.cutoff.jet_of(&x.scale(1.0 / self.scale));
        self.cutoff.jet_of(&x) * inner * x.powf(-self.exponent)
    }
    fn even_jet(&self, s: f64, order: usize) -> Option<Jet> {
        let r = self.inner_radius();
        if s <= r * r {
            return Some(Jet::zero(s, order));
        }
        crate::jets::sqrt_even_jet(self, s, order)
    }
    fn inner_radius(&self) -> f64 {
        self.cutoff.a * self.scale
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![self.cutoff.b * self.scale, self.cutoff.a]
    }
}

/// `f_delta = (ln 1/rho)^((p-1)/p - delta) phi_{1/2,1}(rho)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalExtremizer {
    p: f64,
    delta: f64,
    cutoff: SmoothCutoff,
}

impl CriticalExtremizer {
    pub fn delta(&self) -> f64 {
        self.delta
    }
}

pub fn critical_extremizer(c: &CaseParams, delta: f64) -> Result<CriticalExtremizer> {
    validity(Family::CriticalHardy, c)?;
    check_scale(FamilyKind::Critical, c.p, delta)?;
    Ok(CriticalExtremizer {
        p: c.p,
        delta,
        cutoff: smooth_cutoff(0.5, 1.0)?,
    })
}

impl RadialFunction for CriticalExtremizer {
    fn id(&self) -> String {
        format!("critical_ext:delta={}", self.delta)
    }
    fn support_radius(&self) -> f64 {
        self.cutoff.b
    }
    fn min_smoothness(&self) -> usize {
        MAX_ORDER
    }
    fn jet(&self, rho: f64, order: usize) -> Jet {
        if rho >= self.cutoff.b {
            return Jet::zero(rho, order);
        }
        let x = Jet::variable(rho, order);
        let log = -x.ln();
        log.powf(self.log_growth()) * self.cutoff.jet_of(&x)
    }
    fn even_jet(&self, _s: f64, _order: usize) -> Option<Jet> {
        None
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![self.cutoff.a]
    }
    fn log_growth(&self) -> f64 {
        (self.p - 1.0) / self.p - self.delta
    }
    fn log_jet(&self, t: f64, order: usize) -> Jet {
        let tj = Jet::variable(t, order);
        tj.powf(self.log_growth()) * self.cutoff.jet_of(&(-tj).exp())
    }
}

/// Mode profile `r^k (1 - (r/R)^2)^m` in the ball coordinate
/// `r = tanh(rho/2)`, supported in `r < R < 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeProfile {
    pub k: u32,
    pub r: f64,
    pub m: u32,
}

pub fn mode_profile(k: u32, r: f64, m: u32) -> Result<ModeProfile> {
    if !(r > 0.0 && r < 1.0) || m < 2 {
        return Err(Error::domain("mode_profile", format!("need 0 < R < 1 and m >= 2, got R = {r}, m = {m}")));
    }
    Ok(ModeProfile { k, r, m })
}

impl RadialFunction for ModeProfile {
    fn id(&self) -> String {
        format!("mode:k={},R={},m={}", self.k, self.r, self.m)
    }
    fn support_radius(&self) -> f64 {
        rho_from_r(self.r).expect("R < 1")
    }
    fn min_smoothness(&self) -> usize {
        (self.m - 1) as usize
    }
    fn jet(&self, rho: f64, order: usize) -> Jet {
        if rho >= self.support_radius() {
            return Jet::zero(rho, order);
        }
        let (sh, ch) = Jet::variable(rho, order).scale(0.5).sinh_cosh();
        let r = sh / ch;
        let q = r.scale(1.0 / self.r);
        r.powi(self.k) * (1.0 - q * q).powi(self.m)
    }
    fn even_jet(&self, s: f64, order: usize) -> Option<Jet> {
        if self.k % 2 == 1 {
            return None;
        }
        crate::jets::sqrt_even_jet(self, s, order)
    }
}

/// A corpus member addressed by its string id, instantiated per parameter
/// cell (extremizers depend on `n`, `p` and `beta`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CorpusSpec {
    Bump { r: f64, m: u32 },
    Cutoff { a: f64, b: f64 },
    Composite { a: f64, b: f64, m: u32 },
    Extremizer { kind: FamilyKind, scale: f64 },
    Mode { k: u32, r: f64, m: u32 },
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CorpusSpec::Bump { r, m } => write!(f, "bump:R={r},m={m}"),
            CorpusSpec::Cutoff { a, b } => write!(f, "cutoff:a={a},b={b}"),
            CorpusSpec::Composite { a, b, m } => write!(f, "composite:a={a},b={b},m={m}"),
            CorpusSpec::Extremizer { kind, scale } => {
                write!(f, "{}_ext:{}={scale}", kind.name(), kind.scale_name())
            }
            CorpusSpec::Mode { k, r, m } => write!(f, "mode:k={k},R={r},m={m}"),
        }
    }
}

impl CorpusSpec {
    pub fn parse(id: &str) -> Result<CorpusSpec> {
        let perr = |reason: String| Error::Parse { input: id.to_string(), reason };
        let (name, rest) = id.split_once(':').unwrap_or((id, ""));
        let mut fields = Vec::new();
        for kv in rest.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| perr(format!("expected key=value, found `{kv}`")))?;
            let v: f64 = v.trim().parse().map_err(|_| perr(format!("`{v}` is not a number")))?;
            fields.push((k.trim(), v));
        }
        let get = |key: &str| -> Result<f64> {
            fields
                .iter()
                .find(|(k, _)| *k == key)
                .map(|&(_, v)| v)
                .ok_or_else(|| perr(format!("missing field `{key}`")))
        };
        let int = |key: &str| -> Result<u32> {
            let v = get(key)?;
            if v.fract() != 0.0 || v < 0.0 {
                return Err(perr(format!("`{key}` must be a non-negative integer")));
            }
            Ok(v as u32)
        };
        let allowed: &[&str] = match name {
            "bump" => &["R", "m"],
            "cutoff" => &["a", "b"],
            "composite" => &["a", "b", "m"],
            "hardy_ext" => &["eps"],
            "critical_ext" | "onetwo_ext" | "rellich2_ext" => &["delta"],
            "mode" => &["k", "R", "m"],
            _ => return Err(perr(format!("unknown corpus family `{name}`"))),
        };
        if let Some((k, _)) = fields.iter().find(|(k, _)| !allowed.contains(k)) {
            return Err(perr(format!("unexpected field `{k}`")));
        }
        Ok(match name {
            "bump" => CorpusSpec::Bump { r: get("R")?, m: int("m")? },
            "cutoff" => CorpusSpec::Cutoff { a: get("a")?, b: get("b")? },
            "composite" => CorpusSpec::Composite { a: get("a")?, b: get("b")?, m: int("m")? },
            "hardy_ext" => CorpusSpec::Extremizer { kind: FamilyKind::Hardy, scale: get("eps")? },
            "mode" => CorpusSpec::Mode { k: int("k")?, r: get("R")?, m: int("m")? },
            ext => {
                let kind = FamilyKind::parse(ext.trim_end_matches("_ext"))?;
                CorpusSpec::Extremizer { kind, scale: get("delta")? }
            }
        })
    }

    pub fn instantiate(&self, c: &CaseParams) -> Result<Arc<dyn RadialFunction>> {
        Ok(match *self {
            CorpusSpec::Bump { r, m } => Arc::new(polynomial_bump(r, m)?),
            CorpusSpec::Cutoff { a, b } => Arc::new(smooth_cutoff(a, b)?),
            CorpusSpec::Composite { a, b, m } => Arc::new(composite(a, b, m)?),
            CorpusSpec::Extremizer { kind, scale } => ExtremizerFamily::new(kind, *c)?.member(scale)?,
            CorpusSpec::Mode { k, r, m } => Arc::new(mode_profile(k, r, m)?),
        })
    }
}

/// The three smooth profiles of the default verification grid.
pub fn default_corpus() -> Vec<CorpusSpec> {
    vec![
        CorpusSpec::Bump { r: 1.0, m: 4 },
        CorpusSpec::Bump { r: 1.0, m: 6 },
        CorpusSpec::Composite { a: 0.25, b: 1.0, m: 2 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cutoff_examples() {
        let phi = smooth_cutoff(1.0, 2.0).unwrap();
        assert_eq!(phi.value(0.5), 1.0);
        assert_eq!(phi.value(3.0), 0.0);
        assert!(phi.jet(3.0, 5).coeffs().iter().all(|&c| c == 0.0));
        assert_relative_eq!(phi.value(1.5), 0.5, max_relative = 1e-15);
        let mut prev = 1.0;
        for i in 0..=1000 {
            let v = phi.value(1.0 + i as f64 / 1000.0);
            assert!(v <= prev && (0.0..=1.0).contains(&v));
            prev = v;
        }
        assert!(smooth_cutoff(2.0, 1.0).is_err());
    }

    #[test]
    fn bump_examples() {
        let f = polynomial_bump(1.0, 2).unwrap();
        assert_eq!(f.jet(0.0, 0).value(), 1.0);
        assert_eq!(f.min_smoothness(), 1);
        assert_relative_eq!(f.jet(0.5, 1).coeff(1), -1.5, max_relative = 1e-15);
    }

    #[test]
    fn extremizer_power_law_plateau() {
        let c = CaseParams::new(4, 2.0, 0.0, 0.0, 0);
        let f = hardy_extremizer(&c, 1e-3).unwrap();
        for &rho in &[2e-3, 0.01, 0.3, 1.0] {
            assert_relative_eq!(f.jet(rho, 0).value(), rho.powf(-1.0), max_relative = 1e-14);
        }
        assert_eq!(f.jet(1e-3, 0).value(), 0.0);
        assert_eq!(f.jet(2.0, 0).value(), 0.0);
        assert!(hardy_extremizer(&c, 0.3).is_err());
        assert!(hardy_extremizer(&c, 1e-9).is_err());
        let g = onetwo_extremizer(&CaseParams::new(3, 2.0, 0.0, 0.0, 0), 0.01).unwrap();
        for &rho in &[0.02, 0.1, 0.5] {
            assert_relative_eq!(g.jet(rho, 0).value(), rho.powf(-0.5), max_relative = 1e-14);
        }
    }

    #[test]
    fn critical_extremizer_profile() {
        let c = CaseParams::new(3, 2.0, 0.0, 0.0, 0);
        let f = critical_extremizer(&c, 0.1).unwrap();
        assert_relative_eq!(f.log_growth(), 0.4, max_relative = 1e-15);
        let rho: f64 = 0.1;
        assert_relative_eq!(f.jet(rho, 0).value(), (-rho.ln()).powf(0.4), max_relative = 1e-15);
        assert!(critical_extremizer(&c, 0.3).is_err());
        assert!(critical_extremizer(&c, 0.25).is_ok());
    }

    #[test]
    fn ids_round_trip() {
        let c = CaseParams::new(4, 2.0, 0.0, 0.0, 0);
        for id in [
            "bump:R=1,m=4",
            "cutoff:a=1,b=2",
            "composite:a=0.25,b=1,m=2",
            "hardy_ext:eps=0.0001",
            "critical_ext:delta=0.02",
            "onetwo_ext:delta=0.01",
            "rellich2_ext:delta=0.01",
            "mode:k=1,R=0.9,m=3",
        ] {
            let spec = CorpusSpec::parse(id).unwrap();
            assert_eq!(spec.to_string(), id);
            if !id.starts_with("rellich2") {
                assert_eq!(spec.instantiate(&c).unwrap().id(), id);
            }
        }
        assert!(CorpusSpec::parse("bump:R=1").is_err());
        assert!(CorpusSpec::parse("bump:R=1,m=4,x=2").is_err());
        assert!(CorpusSpec::parse("blob:R=1").is_err());
        assert_eq!(default_composite().id(), "composite:a=0.25,b=1,m=2");
    }
}
