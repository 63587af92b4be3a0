//! Sharp constants and the parameter ranges on which each inequality family
//! is stated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters shared by every inequality: dimension, exponent, weight
/// exponent, curvature bound and derivative half-order.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseParams {
    pub n: u32,
    pub p: f64,
    pub beta: f64,
    pub b: f64,
    pub l: usize,
}

impl CaseParams {
    pub fn new(n: u32, p: f64, beta: f64, b: f64, l: usize) -> Self {
        CaseParams { n, p, beta, b, l }
    }

    pub fn nf(&self) -> f64 {
        self.n as f64
    }

    /// Conjugate exponent `p / (p - 1)`.
    pub fn conjugate(&self) -> f64 {
        self.p / (self.p - 1.0)
    }
}

/// Inequality families, each with its own admissible parameter range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Hardy,
    CriticalHardy,
    OneTwo,
    Rellich2,
    RellichEven,
    RellichOdd,
    CriticalRellich2,
    CriticalEven,
    CriticalOdd,
    /// Radial versus full Laplacian comparison in hyperbolic space.
    Mow,
    /// Weighted Rellich inequality with `p = 2` in hyperbolic space.
    HyperbolicRellich,
    /// Higher-order improved Rellich inequalities in hyperbolic space.
    HyperbolicHigher,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Hardy => "hardy",
            Family::CriticalHardy => "critical_hardy",
            Family::OneTwo => "onetwo",
            Family::Rellich2 => "rellich2",
            Family::RellichEven => "c_even",
            Family::RellichOdd => "c_odd",
            Family::CriticalRellich2 => "critical_rellich2",
            Family::CriticalEven => "critical_even",
            Family::CriticalOdd => "critical_odd",
            Family::Mow => "mow",
            Family::HyperbolicRellich => "hyperbolic_rellich",
            Family::HyperbolicHigher => "hyperbolic_higher",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        let all = [
            Family::Hardy,
            Family::CriticalHardy,
            Family::OneTwo,
            Family::Rellich2,
            Family::RellichEven,
            Family::RellichOdd,
            Family::CriticalRellich2,
            Family::CriticalEven,
            Family::CriticalOdd,
            Family::Mow,
            Family::HyperbolicRellich,
            Family::HyperbolicHigher,
        ];
        all.into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }

    /// Short description of the inequality the range is quoted from.
    pub fn source(&self) -> &'static str {
        match self {
            Family::Hardy => "weighted Hardy inequality for the radial derivative",
            Family::CriticalHardy => "critical Hardy inequality with logarithmic weight",
            Family::OneTwo => "first-order Rellich lemma",
            Family::Rellich2 => "weighted Rellich inequality",
            Family::RellichEven => "higher-order Rellich inequality, even order 2l",
            Family::RellichOdd => "higher-order Rellich inequality, odd order 2l+1",
            Family::CriticalRellich2 => "critical Rellich inequality",
            Family::CriticalEven => "critical higher-order Rellich inequality, even order",
            Family::CriticalOdd => "critical higher-order Rellich inequality, odd order",
            Family::Mow => "radial versus full Laplacian comparison in hyperbolic space",
            Family::HyperbolicRellich => "weighted Rellich inequality in hyperbolic space",
            Family::HyperbolicHigher => "improved higher-order Rellich inequalities in hyperbolic space",
        }
    }
}

/// Admissible open interval for `beta` (upper end closed when flagged).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BetaRange {
    pub lower: f64,
    pub upper: f64,
    pub upper_inclusive: bool,
}

impl BetaRange {
    pub fn contains(&self, beta: f64) -> bool {
        beta > self.lower && (beta < self.upper || (self.upper_inclusive && beta == self.upper))
    }
}

fn fail(family: Family, reason: impl Into<String>) -> Error {
    Error::validity(family.name(), reason)
}

fn check_n(family: Family, n: u32, min: u32) -> Result<()> {
    if n < min {
        return Err(fail(family, format!("n >= {min} required (n = {n})")));
    }
    Ok(())
}

fn check_p(family: Family, p: f64, upper: Option<(f64, &str)>) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(fail(family, format!("p > 1 required (p = {p})")));
    }
    if let Some((hi, label)) = upper {
        if !(p < hi) {
            return Err(fail(family, format!("p < {label} violated (p = {p}, {label} = {hi})")));
        }
    }
    Ok(())
}

fn check_beta_upper(family: Family, beta: f64, hi: f64, label: &str) -> Result<()> {
    if !(beta < hi) {
        return Err(fail(family, format!("β < {label} violated (β = {beta}, {label} = {hi})")));
    }
    Ok(())
}

fn check_beta_lower(family: Family, beta: f64, lo: f64, label: &str) -> Result<()> {
    if !(beta > lo) {
        return Err(fail(family, format!("β > {label} violated (β = {beta}, {label} = {lo})")));
    }
    Ok(())
}

fn check_l(family: Family, l: usize) -> Result<()> {
    if l < 1 {
        return Err(fail(family, "l >= 1 required"));
    }
    Ok(())
}

/// Check `params` against the range of `family`; the error names the first
/// violated bound.
pub fn validity(family: Family, c: &CaseParams) -> Result<()> {
    let (n, p, beta, l) = (c.nf(), c.p, c.beta, c.l);
    if !(c.b.is_finite() && c.b >= 0.0) {
        return Err(fail(family, format!("b >= 0 required (b = {})", c.b)));
    }
    if !beta.is_finite() {
        return Err(fail(family, format!("β must be finite (β = {beta})")));
    }
    match family {
        Family::Hardy => {
            check_n(family, c.n, 2)?;
            check_p(family, p, Some((n, "n")))?;
            check_beta_upper(family, beta, n - p, "n−p")
        }
        Family::CriticalHardy => {
            check_n(family, c.n, 2)?;
            check_p(family, p, None)
        }
        Family::OneTwo => {
            check_n(family, c.n, 2)?;
            check_p(family, p, Some((n, "n")))?;
            check_beta_lower(family, beta, -n * (p - 1.0), "−n(p−1)")?;
            check_beta_upper(family, beta, n - p, "n−p")
        }
        Family::Rellich2 => {
            check_n(family, c.n, 3)?;
            check_p(family, p, Some((n / 2.0, "n/2")))?;
            check_beta_lower(family, beta, -n * (p - 1.0), "−n(p−1)")?;
            check_beta_upper(family, beta, n - 2.0 * p, "n−2p")
        }
        Family::RellichEven => {
            check_l(family, l)?;
            check_n(family, c.n, 3)?;
            let lf = l as f64;
            check_p(family, p, Some((n / (2.0 * lf), "n/(2l)")))?;
            check_beta_lower(family, beta, -n * (p - 1.0), "−n(p−1)")?;
            check_beta_upper(family, beta, n - 2.0 * lf * p, "n−2lp")
        }
        Family::RellichOdd => {
            check_l(family, l)?;
            check_n(family, c.n, 3)?;
            let lf = l as f64;
            check_p(family, p, Some((n / (2.0 * lf + 1.0), "n/(2l+1)")))?;
            // the theorem statement allows β > −np; the iteration through the
            // even constant at p+β needs the tighter β > n−(n+1)p
            check_beta_lower(family, beta, -n * p, "n−n(p+1) (theorem statement)")?;
            check_beta_lower(family, beta, n - (n + 1.0) * p, "n−(n+1)p (iteration range)")?;
            check_beta_upper(family, beta, n - (2.0 * lf + 1.0) * p, "n−(2l+1)p")
        }
        Family::CriticalRellich2 => {
            check_n(family, c.n, 3)?;
            check_p(family, p, Some((n, "n")))
        }
        Family::CriticalEven | Family::CriticalOdd => {
            check_l(family, l)?;
            check_n(family, c.n, 3)?;
            // the iterated chain only needs the product factors positive;
            // no p < n/k restriction is imposed
            check_p(family, p, None)?;
            if (c.n as usize) <= 2 * l {
                return Err(fail(
                    family,
                    format!("factor n−2l > 0 required (n = {}, l = {l})", c.n),
                ));
            }
            Ok(())
        }
        Family::Mow => {
            check_n(family, c.n, 3)?;
            if !(beta > -2.0) {
                return Err(fail(family, format!("−2 < β required (β = {beta})")));
            }
            if !(beta <= n - 4.0) {
                return Err(fail(family, format!("β ≤ n−4 violated (β = {beta}, n−4 = {})", n - 4.0)));
            }
            Ok(())
        }
        Family::HyperbolicRellich => {
            check_n(family, c.n, 4)?;
            if !(beta > -2.0) {
                return Err(fail(family, format!("−2 < β required (β = {beta})")));
            }
            check_beta_upper(family, beta, n - 4.0, "n−4")
        }
        Family::HyperbolicHigher => {
            check_n(family, c.n, 3)?;
            let k = c.l;
            if !(k >= 2 && (k as f64) < n / 2.0) {
                return Err(fail(family, format!("integer order k in (1, n/2) required (k = {k})")));
            }
            if !(beta > -2.0) {
                return Err(fail(family, format!("−2 < β required (β = {beta})")));
            }
            check_beta_upper(family, beta, n - 2.0 * k as f64, "n−2k")
        }
    }
}

/// The admissible `beta` interval of `family` for the given `n`, `p`, `l`.
pub fn beta_range(family: Family, n: u32, p: f64, l: usize) -> Option<BetaRange> {
    let n = n as f64;
    let lf = l as f64;
    let open = |lower: f64, upper: f64| Some(BetaRange { lower, upper, upper_inclusive: false });
    match family {
        Family::Hardy => open(f64::NEG_INFINITY, n - p),
        Family::OneTwo => open(-n * (p - 1.0), n - p),
        Family::Rellich2 => open(-n * (p - 1.0), n - 2.0 * p),
        Family::RellichEven => open(-n * (p - 1.0), n - 2.0 * lf * p),
        Family::RellichOdd => open(n - (n + 1.0) * p, n - (2.0 * lf + 1.0) * p),
        Family::Mow => Some(BetaRange { lower: -2.0, upper: n - 4.0, upper_inclusive: true }),
        Family::HyperbolicRellich => open(-2.0, n - 4.0),
        Family::HyperbolicHigher => open(-2.0, n - 2.0 * lf),
        Family::CriticalHardy | Family::CriticalRellich2 | Family::CriticalEven | Family::CriticalOdd => None,
    }
}

fn params(n: u32, p: f64, beta: f64, l: usize) -> CaseParams {
    CaseParams { n, p, beta, b: 0.0, l }
}

/// `(p / (n - p - beta))^p`.
pub fn hardy_constant(n: u32, p: f64, beta: f64) -> Result<f64> {
    validity(Family::Hardy, &params(n, p, beta, 0))?;
    Ok((p / (n as f64 - p - beta)).powf(p))
}

/// `((p - 1) / p)^p`, the constant multiplying the function side.
pub fn critical_hardy_constant(p: f64) -> Result<f64> {
    check_p(Family::CriticalHardy, p, None)?;
    Ok(((p - 1.0) / p).powf(p))
}

/// `(p / (n(p - 1) + beta))^p`.
pub fn onetwo_constant(n: u32, p: f64, beta: f64) -> Result<f64> {
    validity(Family::OneTwo, &params(n, p, beta, 0))?;
    Ok((p / (n as f64 * (p - 1.0) + beta)).powf(p))
}

/// `((n(p - 1) + beta)(n - 2p - beta) / p^2)^p`, multiplying the function side.
pub fn rellich2_constant(n: u32, p: f64, beta: f64) -> Result<f64> {
    validity(Family::Rellich2, &params(n, p, beta, 0))?;
    let n = n as f64;
    Ok(((n * (p - 1.0) + beta) * (n - 2.0 * p - beta) / (p * p)).powf(p))
}

/// `c(n, 2l, beta, p) = (prod_{i<l} p^2 / ((n-2p-beta-2ip)(n(p-1)+beta+2ip)))^p`.
pub fn c_even(n: u32, l: usize, beta: f64, p: f64) -> Result<f64> {
    validity(Family::RellichEven, &params(n, p, beta, l))?;
    Ok(c_even_unchecked(n as f64, l, beta, p))
}

fn c_even_unchecked(n: f64, l: usize, beta: f64, p: f64) -> f64 {
    let factor = |i: usize| {
        let i = i as f64;
        (n - 2.0 * p - beta - 2.0 * i * p) * (n * (p - 1.0) + beta + 2.0 * i * p)
    };
    if l >= 3 {
        let log: f64 = (0..l).map(|i| 2.0 * p.ln() - factor(i).ln()).sum();
        (p * log).exp()
    } else {
        let prod: f64 = (0..l).map(|i| p * p / factor(i)).product();
        prod.powf(p)
    }
}

/// `(p / (n - p - beta))^p * c(n, 2l, p + beta, p)`.
pub fn c_odd(n: u32, l: usize, beta: f64, p: f64) -> Result<f64> {
    validity(Family::RellichOdd, &params(n, p, beta, l))?;
    let nf = n as f64;
    Ok((p / (nf - p - beta)).powf(p) * c_even_unchecked(nf, l, p + beta, p))
}

/// `(p / ((p - 1)(n - 2)))^p`.
pub fn critical_rellich2_constant(n: u32, p: f64) -> Result<f64> {
    validity(Family::CriticalRellich2, &params(n, p, 0.0, 1))?;
    Ok((p / ((p - 1.0) * (n as f64 - 2.0))).powf(p))
}

fn critical_denominator(n: f64, l: usize) -> f64 {
    (0..l).map(|i| n - 2.0 * i as f64 - 2.0).product()
}

/// `(p' 2^(1-l) / (l-1)! prod_{i<l} 1/(n-2i-2))^p`.
pub fn critical_even_constant(n: u32, l: usize, p: f64) -> Result<f64> {
    validity(Family::CriticalEven, &params(n, p, 0.0, l))?;
    let fact: f64 = (1..l).map(|i| i as f64).product();
    let base = p / ((p - 1.0) * 2f64.powi(l as i32 - 1) * fact * critical_denominator(n as f64, l));
    Ok(base.powf(p))
}

/// `(p' / (2^l l!) prod_{i<l} 1/(n-2i-2))^p`.
pub fn critical_odd_constant(n: u32, l: usize, p: f64) -> Result<f64> {
    validity(Family::CriticalOdd, &params(n, p, 0.0, l))?;
    let fact: f64 = (1..=l).map(|i| i as f64).product();
    let base = p / ((p - 1.0) * 2f64.powi(l as i32) * fact * critical_denominator(n as f64, l));
    Ok(base.powf(p))
}

/// The sharp constant of `family` at `c`. The comparison family has constant
/// 1; the hyperbolic families carry no closed-form scalar constant.
pub fn family_constant(family: Family, c: &CaseParams) -> Result<f64> {
    let (n, p, beta, l) = (c.n, c.p, c.beta, c.l);
    match family {
        Family::Hardy => hardy_constant(n, p, beta),
        Family::CriticalHardy => critical_hardy_constant(p),
        Family::OneTwo => onetwo_constant(n, p, beta),
        Family::Rellich2 => rellich2_constant(n, p, beta),
        Family::RellichEven => c_even(n, l, beta, p),
        Family::RellichOdd => c_odd(n, l, beta, p),
        Family::CriticalRellich2 => critical_rellich2_constant(n, p),
        Family::CriticalEven => critical_even_constant(n, l, p),
        Family::CriticalOdd => critical_odd_constant(n, l, p),
        Family::Mow => validity(family, c).map(|_| 1.0),
        Family::HyperbolicRellich | Family::HyperbolicHigher => Err(Error::Contract(format!(
            "{} has no closed-form constant; evaluate a case instead",
            family.name()
        ))),
    }
}
