use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::{rational_sqrt, Rational, Scalar};
use crate::error::{Error, Result};

/// `p + q√D` with rational `p`, `q`, `D`.
///
/// Every element carries its `D`; combining elements with different `D` is a
/// programming error. The operator impls panic on it and the `try_*` methods
/// report [`Error::FieldMismatch`].
#[derive(Clone, Debug)]
pub struct QuadExt {
    p: Rational,
    q: Rational,
    d: Rational,
}

impl QuadExt {
    pub fn new(p: Rational, q: Rational, d: Rational) -> Self {
        Self { p, q, d }
    }

    pub fn rational(p: Rational, d: Rational) -> Self {
        Self { p, q: Rational::zero(), d }
    }

    /// `√D` itself.
    pub fn sqrt_d(d: Rational) -> Self {
        Self { p: Rational::zero(), q: num_traits::One::one(), d }
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn conjugate(&self) -> Self {
        Self { p: self.p.clone(), q: -self.q.clone(), d: self.d.clone() }
    }

    /// `p² − q²D`, the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * &self.d
    }

    /// `Some(r)` when the element is rational after normalization.
    pub fn as_rational(&self) -> Option<Rational> {
        let n = quad_normalize(self);
        n.q.is_zero().then_some(n.p)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { p: &self.p + &other.p, q: &self.q + &other.q, d: self.d.clone() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { p: &self.p - &other.p, q: &self.q - &other.q, d: self.d.clone() })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            p: &self.p * &other.p + &self.q * &other.q * &self.d,
            q: &self.p * &other.q + &other.p * &self.q,
            d: self.d.clone(),
        })
    }

    /// Inverse through the conjugate; `None` when the norm vanishes.
    pub fn try_inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self { p: &self.p / &n, q: -(&self.q / &n), d: self.d.clone() })
    }
}

/// Folds `q√D` into the rational part when `D` is a rational square.
pub fn quad_normalize(s: &QuadExt) -> QuadExt {
    if s.q.is_zero() {
        return s.clone();
    }
    match rational_sqrt(&s.d) {
        Some(r) => QuadExt { p: &s.p + &s.q * r, q: Rational::zero(), d: s.d.clone() },
        None => s.clone(),
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        if self.d != other.d {
            return false;
        }
        let (x, y) = (quad_normalize(self), quad_normalize(other));
        x.p == y.p && x.q == y.q
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", self.p);
        }
        let sign = if self.q.is_negative() { '-' } else { '+' };
        if self.p.is_zero() {
            let lead = if self.q.is_negative() { "-" } else { "" };
            write!(f, "{lead}{}*sqrt({})", self.q.abs(), self.d)
        } else {
            write!(f, "{} {sign} {}*sqrt({})", self.p, self.q.abs(), self.d)
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        self + &rhs
    }
}

impl<'a> Add<&'a QuadExt> for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &'a QuadExt) -> QuadExt {
        self.try_add(rhs).expect("mismatched quadratic fields")
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        self - &rhs
    }
}

impl<'a> Sub<&'a QuadExt> for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &'a QuadExt) -> QuadExt {
        self.try_sub(rhs).expect("mismatched quadratic fields")
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        self * &rhs
    }
}

impl<'a> Mul<&'a QuadExt> for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &'a QuadExt) -> QuadExt {
        self.try_mul(rhs).expect("mismatched quadratic fields")
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { p: -self.p, q: -self.q, d: self.d }
    }
}

impl Scalar for QuadExt {
    fn embed(&self, r: Rational) -> Self {
        QuadExt::rational(r, self.d.clone())
    }

    fn vanishes(&self) -> bool {
        quad_normalize(self) == QuadExt::rational(Rational::zero(), self.d.clone())
    }

    fn inv(&self) -> Option<Self> {
        let n = quad_normalize(self);
        if n.q.is_zero() {
            return (!n.p.is_zero()).then(|| QuadExt::rational(n.p.recip(), n.d));
        }
        n.try_inv()
    }

    fn sqrt_exact(&self) -> Option<Self> {
        let r = self.as_rational()?;
        rational_sqrt(&r).map(|s| self.embed(s))
    }

    fn same_field(&self, other: &Self) -> bool {
        self.d == other.d
    }

    fn scale(&self, r: &Rational) -> Self {
        QuadExt { p: &self.p * r, q: &self.q * r, d: self.d.clone() }
    }
}
