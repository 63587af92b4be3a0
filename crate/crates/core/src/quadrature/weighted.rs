use super::gauss_kronrod::integrate;
use super::oracle::oracle_integrate;
use super::{QuadratureResult, SingularWeight, Tolerance};
use crate::error::{Error, Result};

/// Smallest radius at which a weighted factor is ever evaluated.
const POWER_RHO_FLOOR: f64 = 1e-200;
const LOG_RHO_FLOOR: f64 = 1e-100;
const ORACLE_RHO_FLOOR: f64 = 1e-300;
/// The logarithmic substitution is applied on `(0, 1/2]` only, away from the
/// zero of `ln(1/rho)` at `rho = 1`.
const LOG_SPLIT: f64 = 0.5;

const ALPHA_SNAP: f64 = 1e-12;

fn power_exponent(alpha: f64) -> u32 {
    (2.0 / (1.0 + alpha)).ceil().max(1.0) as u32
}

fn log_weight(rho: f64, p: f64) -> f64 {
    let l = -rho.ln();
    if l > 0.0 {
        (l.ln() * -p - rho.ln()).exp()
    } else {
        f64::INFINITY
    }
}

/// `int_0^R f(rho) w(rho) drho` with the endpoint singularity at zero removed
/// by a change of variables.
///
/// - `power(alpha)`: `rho = s^q`, `q = ceil(2 / (1 + alpha))`, so the
///   transformed integrand behaves like `s^e` with `e >= 1`.
/// - `critical_log(p)`: `v = (ln 1/rho)^(1-p) / (p-1)` on `(0, min(R, 1/2)]`,
///   for which `dv` is exactly the weight; the rest of `(0, R]` is
///   integrated directly.
pub fn integrate_weighted<F: Fn(f64) -> f64>(
    f: F,
    w: SingularWeight,
    r: f64,
    tol: Tolerance,
) -> Result<QuadratureResult> {
    w.validate()?;
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::domain("integrate_weighted", format!("bad upper limit R = {r}")));
    }
    match w {
        SingularWeight::None => integrate(f, 0.0, r, tol),
        SingularWeight::Power(alpha) => {
            let q = power_exponent(alpha);
            let e = q as f64 * (1.0 + alpha) - 1.0;
            let qf = q as f64;
            let g = |s: f64| {
                if s <= 0.0 {
                    return 0.0;
                }
                let rho = s.powi(q as i32).max(POWER_RHO_FLOOR);
                let v = f(rho);
                if v == 0.0 {
                    0.0
                } else {
                    qf * s.powf(e) * v
                }
            };
            integrate(g, 0.0, r.powf(1.0 / qf), tol)
        }
        SingularWeight::CriticalLog(p) => {
            if r > 1.0 {
                return Err(Error::domain(
                    "integrate_weighted",
                    format!("critical logarithmic weight needs R <= 1, got {r}"),
                ));
            }
            let r0 = r.min(LOG_SPLIT);
            let mut total = QuadratureResult::exact(0.0);
            if r0 > 0.0 {
                let k = p - 1.0;
                let vmax = (-r0.ln()).powf(-k) / k;
                let g = |v: f64| {
                    if v <= 0.0 {
                        return 0.0;
                    }
                    let rho = (-(k * v).powf(-1.0 / k)).exp().max(LOG_RHO_FLOOR);
                    f(rho)
                };
                total = total.combine(integrate(g, 0.0, vmax, tol)?);
            }
            if r > LOG_SPLIT {
                let g = |rho: f64| {
                    let v = f(rho);
                    if v == 0.0 {
                        0.0
                    } else {
                        v * log_weight(rho, p)
                    }
                };
                total = total.combine(integrate(g, LOG_SPLIT, r, tol)?);
            }
            Ok(total)
        }
    }
}

/// Reference value of [`integrate_weighted`] computed with the graded-mesh
/// oracle, through a different substitution for the logarithmic weight:
/// `rho = exp(-L / x)`, `x in (0, 1]`.
pub fn oracle_weighted<F: Fn(f64) -> f64>(f: F, w: SingularWeight, r: f64) -> f64 {
    match w {
        SingularWeight::None => oracle_integrate(f, 0.0, r),
        SingularWeight::Power(alpha) => oracle_integrate(
            |rho: f64| {
                let v = f(rho.max(ORACLE_RHO_FLOOR));
                if v == 0.0 {
                    0.0
                } else {
                    v * rho.powf(alpha)
                }
            },
            0.0,
            r,
        ),
        SingularWeight::CriticalLog(p) => {
            let r0 = r.min(LOG_SPLIT);
            let mut total = 0.0;
            if r0 > 0.0 {
                let l = -r0.ln();
                total += l.powf(1.0 - p)
                    * oracle_integrate(
                        |x: f64| {
                            if x <= 0.0 {
                                return 0.0;
                            }
                            let v = f((-l / x).exp().max(ORACLE_RHO_FLOOR));
                            if v == 0.0 {
                                0.0
                            } else {
                                v * x.powf(p - 2.0)
                            }
                        },
                        0.0,
                        1.0,
                    );
            }
            if r > LOG_SPLIT {
                total += oracle_integrate(
                    |rho: f64| {
                        let v = f(rho);
                        if v == 0.0 {
                            0.0
                        } else {
                            v * log_weight(rho, p)
                        }
                    },
                    LOG_SPLIT,
                    r,
                );
            }
            total
        }
    }
}

type Factor<'a> = dyn Fn(f64) -> f64 + Send + Sync + 'a;

/// `int_inner^outer g(rho) rho^alpha (ln 1/rho)^log_power drho` for a factor
/// `g` bounded near the origin.
///
/// Profiles supported away from the origin (`inner > 0`) are integrated in
/// `u = ln rho`, which flattens extremizer families spanning many scales.
/// Profiles reaching the origin use [`integrate_weighted`] up to the first
/// breakpoint and plain adaptive integration beyond.
pub struct RadialIntegrand<'a> {
    pub g: Box<Factor<'a>>,
    pub alpha: f64,
    pub log_power: f64,
    pub inner: f64,
    pub outer: f64,
    pub breaks: Vec<f64>,
}

enum Piece {
    Log(f64, f64),
    Weighted(SingularWeight, f64, bool),
    Plain(f64, f64),
}

impl<'a> RadialIntegrand<'a> {
    pub fn new(g: impl Fn(f64) -> f64 + Send + Sync + 'a, alpha: f64, inner: f64, outer: f64) -> Self {
        // exponents assembled from n, p and beta can miss -1 by an ulp
        let alpha = if (alpha + 1.0).abs() <= ALPHA_SNAP { -1.0 } else { alpha };
        RadialIntegrand {
            g: Box::new(g),
            alpha,
            log_power: 0.0,
            inner,
            outer,
            breaks: Vec::new(),
        }
    }

    pub fn with_log_power(mut self, c: f64) -> Self {
        self.log_power = c;
        self
    }

    pub fn with_breaks(mut self, breaks: Vec<f64>) -> Self {
        self.breaks = breaks;
        self
    }

    /// Full integrand `g rho^alpha (ln 1/rho)^c` at `rho`.
    fn full(&self, rho: f64) -> f64 {
        let v = (self.g)(rho);
        if v == 0.0 {
            return 0.0;
        }
        let mut lw = self.alpha * rho.ln();
        if self.log_power != 0.0 {
            let l = -rho.ln();
            if l <= 0.0 {
                return 0.0;
            }
            lw += self.log_power * l.ln();
        }
        v * lw.exp()
    }

    // g (ln 1/rho)^c, the factor handed to a power-weight transform
    fn with_log(&self, rho: f64) -> f64 {
        let v = (self.g)(rho);
        if v == 0.0 || self.log_power == 0.0 {
            return v;
        }
        v * (-rho.ln()).powf(self.log_power)
    }

    fn pieces(&self) -> Result<Vec<Piece>> {
        let mut cuts: Vec<f64> = self
            .breaks
            .iter()
            .copied()
            .filter(|&b| b > self.inner && b < self.outer)
            .collect();
        let critical = self.log_power != 0.0 && self.alpha <= -1.0;
        if self.inner == 0.0 && critical && self.outer > LOG_SPLIT {
            cuts.push(LOG_SPLIT);
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut nodes = vec![self.inner];
        nodes.extend(cuts);
        nodes.push(self.outer);
        let mut out = Vec::new();
        for (i, w) in nodes.windows(2).enumerate() {
            let (a, b) = (w[0], w[1]);
            if b <= a {
                continue;
            }
            if self.inner > 0.0 {
                out.push(Piece::Log(a, b));
            } else if i == 0 {
                let weight = if critical {
                    if self.alpha != -1.0 || self.log_power >= -1.0 {
                        return Err(Error::domain(
                            "integrate_radial",
                            format!(
                                "weight rho^{} (ln 1/rho)^{} is not integrable at 0",
                                self.alpha, self.log_power
                            ),
                        ));
                    }
                    SingularWeight::CriticalLog(-self.log_power)
                } else if self.alpha > -1.0 {
                    SingularWeight::Power(self.alpha)
                } else {
                    return Err(Error::domain(
                        "integrate_radial",
                        format!("weight rho^{} is not integrable at 0", self.alpha),
                    ));
                };
                out.push(Piece::Weighted(weight, b, critical));
            } else {
                out.push(Piece::Plain(a, b));
            }
        }
        Ok(out)
    }

    pub fn integrate(&self, tol: Tolerance) -> Result<QuadratureResult> {
        let mut total = QuadratureResult::exact(0.0);
        for piece in self.pieces()? {
            let r: Result<QuadratureResult> = match piece {
                Piece::Log(a, b) => integrate(
                    |u: f64| {
                        let rho = u.exp();
                        self.full(rho) * rho
                    },
                    a.ln(),
                    b.ln(),
                    tol,
                ),
                Piece::Weighted(w, b, true) => integrate_weighted(|rho| (self.g)(rho), w, b, tol),
                Piece::Weighted(w, b, false) => integrate_weighted(|rho| self.with_log(rho), w, b, tol),
                Piece::Plain(a, b) => integrate(|rho| self.full(rho), a, b, tol),
            };
            // keep going past a stubborn piece so the reported best covers the whole range
            total = total.combine(match r {
                Ok(r) => r,
                Err(Error::NonConvergence { best }) => best,
                Err(e) => return Err(e),
            });
        }
        if total.converged {
            Ok(total)
        } else {
            Err(Error::NonConvergence { best: total })
        }
    }

    pub fn oracle(&self) -> Result<f64> {
        let mut total = 0.0;
        for piece in self.pieces()? {
            total += match piece {
                Piece::Log(a, b) => oracle_integrate(
                    |u: f64| {
                        let rho = u.exp();
                        self.full(rho) * rho
                    },
                    a.ln(),
                    b.ln(),
                ),
                Piece::Weighted(w, b, true) => oracle_weighted(|rho| (self.g)(rho), w, b),
                Piece::Weighted(w, b, false) => oracle_weighted(|rho| self.with_log(rho), w, b),
                Piece::Plain(a, b) => oracle_integrate(|rho| self.full(rho), a, b),
            };
        }
        Ok(total)
    }
}
