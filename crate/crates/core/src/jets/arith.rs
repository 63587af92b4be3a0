use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Highest derivative order a [`Jet`] can carry.
pub const MAX_ORDER: usize = 11;
const CAP: usize = MAX_ORDER + 1;

/// Truncated Taylor expansion of a scalar function about `center`.
///
/// `coeffs[k] = g^{(k)}(center) / k!` for `k <= order`. Arithmetic between
/// jets truncates to the smaller order; all operations are exact up to
/// floating point rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    center: f64,
    order: usize,
    coeffs: [f64; CAP],
}

impl Jet {
    pub fn constant(value: f64, center: f64, order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        let mut coeffs = [0.0; CAP];
        coeffs[0] = value;
        Jet {
            center,
            order,
            coeffs,
        }
    }

    pub fn zero(center: f64, order: usize) -> Self {
        Self::constant(0.0, center, order)
    }

    /// The identity function `x -> x` expanded about `center`.
    pub fn variable(center: f64, order: usize) -> Self {
        let mut j = Self::constant(center, center, order);
        if order >= 1 {
            j.coeffs[1] = 1.0;
        }
        j
    }

    pub fn from_coeffs(center: f64, coeffs: &[f64]) -> Self {
        assert!(!coeffs.is_empty() && coeffs.len() <= CAP);
        let mut j = Self::zero(center, coeffs.len() - 1);
        j.coeffs[..coeffs.len()].copy_from_slice(coeffs);
        j
    }

    #[inline]
    pub fn center(&self) -> f64 {
        self.center
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    #[inline]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..=self.order]
    }

    /// Taylor coefficient `k` (zero beyond the carried order).
    #[inline]
    pub fn coeff(&self, k: usize) -> f64 {
        if k <= self.order {
            self.coeffs[k]
        } else {
            0.0
        }
    }

    /// The `k`-th derivative at the center, `k! * coeffs[k]`.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.coeff(k) * fact
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut j = *self;
        for c in j.coeffs.iter_mut().skip(order + 1) {
            *c = 0.0;
        }
        j.order = order;
        j
    }

    /// Jet of the derivative; the order drops by one.
    pub fn differentiate(&self) -> Self {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let mut j = Self::zero(self.center, self.order - 1);
        for k in 0..self.order {
            j.coeffs[k] = (k + 1) as f64 * self.coeffs[k + 1];
        }
        j
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut j = *self;
        for c in j.coeffs[..=j.order].iter_mut() {
            *c *= s;
        }
        j
    }

    fn zip_order(&self, other: &Jet) -> usize {
        debug_assert!(
            self.center == other.center,
            "jets expanded about different centers"
        );
        self.order.min(other.order)
    }

    pub fn recip(&self) -> Self {
        Jet::constant(1.0, self.center, self.order) / *self
    }

    pub fn exp(&self) -> Self {
        let mut g = Self::zero(self.center, self.order);
        g.coeffs[0] = self.coeffs[0].exp();
        for k in 1..=self.order {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.coeffs[j] * g.coeffs[k - j];
            }
            g.coeffs[k] = acc / k as f64;
        }
        g
    }

    /// Natural logarithm; requires a positive value.
    pub fn ln(&self) -> Self {
        let f0 = self.coeffs[0];
        let mut g = Self::zero(self.center, self.order);
        g.coeffs[0] = f0.ln();
        for k in 1..=self.order {
            let mut acc = 0.0;
            for j in 1..k {
                acc += j as f64 * g.coeffs[j] * self.coeffs[k - j];
            }
            g.coeffs[k] = (self.coeffs[k] - acc / k as f64) / f0;
        }
        g
    }

    /// Real power `self^a`; requires a positive value unless `a` is a
    /// non-negative integer (use [`Jet::powi`] then).
    pub fn powf(&self, a: f64) -> Self {
        let f0 = self.coeffs[0];
        let mut g = Self::zero(self.center, self.order);
        g.coeffs[0] = f0.powf(a);
        for k in 1..=self.order {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += ((a + 1.0) * j as f64 - k as f64) * self.coeffs[j] * g.coeffs[k - j];
            }
            g.coeffs[k] = acc / (k as f64 * f0);
        }
        g
    }

    /// Integer power by repeated squaring; valid for any sign of the value.
    pub fn powi(&self, e: u32) -> Self {
        let mut result = Jet::constant(1.0, self.center, self.order);
        let mut base = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            e >>= 1;
        }
        result
    }

    /// `(sinh(self), cosh(self))` computed jointly.
    pub fn sinh_cosh(&self) -> (Self, Self) {
        let mut s = Self::zero(self.center, self.order);
        let mut c = Self::zero(self.center, self.order);
        s.coeffs[0] = self.coeffs[0].sinh();
        c.coeffs[0] = self.coeffs[0].cosh();
        for k in 1..=self.order {
            let (mut as_, mut ac) = (0.0, 0.0);
            for j in 1..=k {
                let w = j as f64 * self.coeffs[j];
                as_ += w * c.coeffs[k - j];
                ac += w * s.coeffs[k - j];
            }
            s.coeffs[k] = as_ / k as f64;
            c.coeffs[k] = ac / k as f64;
        }
        (s, c)
    }

    /// Composition `outer(self)`, where `outer` is a Taylor expansion about
    /// `self.value()` (its own center is ignored). The result is expanded
    /// about `self.center()`.
    pub fn compose(&self, outer: &Jet) -> Self {
        let order = self.order.min(outer.order);
        let mut delta = self.truncate(order);
        delta.coeffs[0] = 0.0;
        let mut acc = Jet::constant(outer.coeffs[order], self.center, order);
        for k in (0..order).rev() {
            acc = acc * delta;
            acc.coeffs[0] += outer.coeffs[k];
        }
        acc
    }

    /// Evaluate a power series `sum_k a_k x^k` at this jet by Horner's rule.
    pub fn power_series(&self, a: &[f64]) -> Self {
        let mut acc = Jet::zero(self.center, self.order);
        for &ak in a.iter().rev() {
            acc = acc * *self;
            acc.coeffs[0] += ak;
        }
        acc
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let order = self.zip_order(&rhs);
        let mut j = Jet::zero(self.center, order);
        for k in 0..=order {
            j.coeffs[k] = self.coeffs[k] + rhs.coeffs[k];
        }
        j
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = *self + rhs;
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let order = self.zip_order(&rhs);
        let mut j = Jet::zero(self.center, order);
        for k in 0..=order {
            let mut acc = 0.0;
            for i in 0..=k {
                acc += self.coeffs[i] * rhs.coeffs[k - i];
            }
            j.coeffs[k] = acc;
        }
        j
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let order = self.zip_order(&rhs);
        let b0 = rhs.coeffs[0];
        let mut q = Jet::zero(self.center, order);
        for k in 0..=order {
            let mut acc = self.coeffs[k];
            for j in 0..k {
                acc -= q.coeffs[j] * rhs.coeffs[k - j];
            }
            q.coeffs[k] = acc / b0;
        }
        q
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.coeffs[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self.scale(1.0 / rhs)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs.scale(self)
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        -rhs + self
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        rhs + self
    }
}
