//! Exact scalars and rigorous decimal approximation.

mod bigfloat;
mod poly;
mod quad;

use core::fmt::{Debug, Display};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) use bigfloat::bits_for;
pub use bigfloat::{bigfloat_log, quad_approximate, ten_pow_neg, BigFloat};
pub use poly::BivariatePoly;
pub use quad::{quad_normalize, QuadExt};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `r^e` for a possibly negative exponent; `0^e` with `e < 0` panics.
pub fn rat_pow(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), e.unsigned_abs() as usize)
    }
}

/// Exact square root of a rational, if it has one. Returns the non-negative
/// root.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Exact field elements usable as power-series coefficients.
///
/// Implemented by [`Rational`] and [`QuadExt`]. Elements of `QuadExt` carry
/// their field, so constants are built from an existing element with
/// [`Scalar::embed`].
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// A rational in the same field as `self`.
    fn embed(&self, r: Rational) -> Self;
    fn vanishes(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// Principal square root when it exists inside the field.
    fn sqrt_exact(&self) -> Option<Self>;
    /// Fails when `other` lives in a different field.
    fn same_field(&self, other: &Self) -> bool;

    fn zero_like(&self) -> Self {
        self.embed(Rational::zero())
    }

    fn one_like(&self) -> Self {
        self.embed(Rational::one())
    }

    fn scale(&self, r: &Rational) -> Self {
        self.clone() * &self.embed(r.clone())
    }
}

impl Scalar for Rational {
    fn embed(&self, r: Rational) -> Self {
        r
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn sqrt_exact(&self) -> Option<Self> {
        rational_sqrt(self)
    }

    fn same_field(&self, _other: &Self) -> bool {
        true
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}
