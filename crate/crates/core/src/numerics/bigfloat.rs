use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{frac, rat, QuadExt, Rational};
use crate::error::{Error, Result};

/// A real number known to lie in the closed interval `[lo, hi]`.
///
/// Endpoints are exact rationals; every transcendental or irrational step
/// rounds outward onto a dyadic grid, so the enclosure is always rigorous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    lo: Rational,
    hi: Rational,
}

/// Working precision in bits for a target of `digits` decimal digits.
pub(crate) fn bits_for(digits: u32) -> u32 {
    digits * 10 / 3 + 24
}

fn pow2(bits: u32) -> Rational {
    Rational::from_integer(BigInt::one() << bits)
}

/// `10^-digits`.
pub fn ten_pow_neg(digits: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize))
}

fn floor_to(x: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    (x * &s).floor() / s
}

fn ceil_to(x: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    (x * &s).ceil() / s
}

fn sqrt_floor(n: &BigInt) -> BigInt {
    n.sqrt()
}

fn sqrt_ceil(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + 1
    }
}

impl BigFloat {
    pub fn exact(r: Rational) -> Self {
        Self { lo: r.clone(), hi: r }
    }

    pub fn from_bounds(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty enclosure");
        Self { lo, hi }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn overlaps(&self, other: &BigFloat) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Largest absolute value in the enclosure.
    pub fn mag(&self) -> Rational {
        core::cmp::max(self.lo.abs(), self.hi.abs())
    }

    pub fn abs(&self) -> BigFloat {
        if self.lo.is_negative() && self.hi.is_positive() {
            BigFloat { lo: Rational::zero(), hi: self.mag() }
        } else if self.hi.is_negative() || self.hi.is_zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Widens the enclosure onto multiples of `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> BigFloat {
        BigFloat { lo: floor_to(&self.lo, bits), hi: ceil_to(&self.hi, bits) }
    }

    /// True when every point of the enclosure is within `10^-digits` of every
    /// other.
    pub fn is_within(&self, digits: u32) -> bool {
        self.width() <= ten_pow_neg(digits)
    }

    pub fn recip(&self) -> Result<BigFloat> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(Error::Domain("division by an enclosure containing zero".into()));
        }
        Ok(BigFloat { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, other: &BigFloat) -> Result<BigFloat> {
        Ok(self * &other.recip()?)
    }

    pub fn sqrt(&self, bits: u32) -> Result<BigFloat> {
        if self.lo.is_negative() {
            return Err(Error::Domain(format!("square root of an enclosure reaching {}", self.lo)));
        }
        let scale = Rational::from_integer(BigInt::one() << (2 * bits));
        let lo = sqrt_floor(&(&self.lo * &scale).floor().to_integer());
        let hi = sqrt_ceil(&(&self.hi * &scale).ceil().to_integer());
        let den = BigInt::one() << bits;
        Ok(BigFloat { lo: Rational::new(lo, den.clone()), hi: Rational::new(hi, den) })
    }

    /// Natural logarithm, accurate to about `2^-bits` on top of the input
    /// width.
    pub fn ln(&self, bits: u32) -> Result<BigFloat> {
        if !self.lo.is_positive() {
            return Err(Error::Domain(format!("logarithm of an enclosure reaching {}", self.lo)));
        }
        let lo = ln_point(&self.lo, bits).lo;
        let hi = ln_point(&self.hi, bits).hi;
        Ok(BigFloat { lo, hi })
    }

    /// Midpoint rounded to `digits` fractional decimal digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), digits as usize));
        let n = (self.midpoint() * scale).round().to_integer();
        let neg = n.is_negative();
        let mut s = n.abs().to_string();
        let d = digits as usize;
        if d > 0 {
            while s.len() <= d {
                s.insert(0, '0');
            }
            s.insert(s.len() - d, '.');
        }
        if neg {
            s.insert(0, '-');
        }
        s
    }

    /// Number of fractional digits the enclosure supports, capped at 40.
    pub fn supported_digits(&self) -> u32 {
        let w = self.width();
        (0..40).find(|&d| w > ten_pow_neg(d + 1)).unwrap_or(40)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p as u32).unwrap_or_else(|| self.supported_digits());
        f.write_str(&self.to_decimal(digits))
    }
}

impl<'a> Add<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &'a BigFloat) -> BigFloat {
        BigFloat { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl<'a> Sub<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &'a BigFloat) -> BigFloat {
        BigFloat { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl<'a> Mul<&'a BigFloat> for &'a BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &'a BigFloat) -> BigFloat {
        let c = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = c.iter().min().cloned().unwrap();
        let hi = c.iter().max().cloned().unwrap();
        BigFloat { lo, hi }
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat { lo: -self.hi, hi: -self.lo }
    }
}

/// `atanh(z)` for rational `0 ≤ z ≤ 1/3` via its odd power series with an
/// explicit geometric tail bound.
fn atanh_small(z: &Rational, bits: u32) -> BigFloat {
    let w = bits + 16;
    if z.is_zero() {
        return BigFloat::exact(Rational::zero());
    }
    let z2 = BigFloat::exact(z * z);
    let eps = pow2(w).recip();
    let mut term = BigFloat::exact(z.clone());
    let mut sum = BigFloat::exact(Rational::zero());
    let mut i: i64 = 0;
    loop {
        let k = BigFloat::exact(rat(2 * i + 1));
        sum = (&sum + &(&term * &k.recip().unwrap())).round_outward(w);
        term = (&term * &z2).round_outward(w);
        // remaining terms are bounded by t·(1 + z² + z⁴ + …) ≤ t·9/8
        let tail = term.hi() * frac(9, 8) / rat(2 * i + 3);
        if tail <= eps {
            return &sum + &BigFloat::from_bounds(Rational::zero(), tail);
        }
        i += 1;
    }
}

fn ln2(bits: u32) -> BigFloat {
    let t = atanh_small(&frac(1, 3), bits + 8);
    &t + &t
}

fn ln_point(x: &Rational, bits: u32) -> BigFloat {
    debug_assert!(x.is_positive());
    let mut e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let shift = |e: i64| if e >= 0 { pow2(e as u32) } else { pow2((-e) as u32).recip() };
    let mut y = x / shift(e);
    while y >= rat(2) {
        y /= rat(2);
        e += 1;
    }
    while y < rat(1) {
        y *= rat(2);
        e -= 1;
    }
    let z = (&y - rat(1)) / (&y + rat(1));
    let extra = 64 - (e.unsigned_abs().max(1)).leading_zeros();
    let half = atanh_small(&z, bits + 4);
    let lny = &half + &half;
    if e == 0 {
        return lny;
    }
    let l2 = ln2(bits + extra + 4);
    let scaled = &l2 * &BigFloat::exact(rat(e));
    &scaled + &lny
}

/// Enclosure of `p + q√D` no wider than a quarter of `10^-digits`.
pub fn quad_approximate(s: &QuadExt, digits: u32) -> Result<BigFloat> {
    if s.d().is_negative() {
        return Err(Error::UnsupportedDomain(format!("√D with D = {} < 0", s.d())));
    }
    let target = ten_pow_neg(digits) / rat(4);
    let mut bits = bits_for(digits);
    loop {
        let root = BigFloat::exact(s.d().clone()).sqrt(bits)?;
        let v = &BigFloat::exact(s.p().clone()) + &(&root * &BigFloat::exact(s.q().clone()));
        if v.width() <= target {
            return Ok(v);
        }
        bits *= 2;
    }
}

/// Enclosure of `ln x` no wider than a quarter of `10^-digits`; fails when
/// the input enclosure itself is too wide to support that.
pub fn bigfloat_log(x: &BigFloat, digits: u32) -> Result<BigFloat> {
    if !x.lo().is_positive() {
        return Err(Error::Domain(format!("logarithm of non-positive value {}", x.lo())));
    }
    let target = ten_pow_neg(digits) / rat(4);
    let mut bits = bits_for(digits);
    for _ in 0..6 {
        let v = x.ln(bits)?;
        if v.width() <= target {
            return Ok(v);
        }
        bits *= 2;
    }
    Err(Error::Domain(format!("input enclosure too wide for {digits} digits")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::frac;

    fn dec(s: &str) -> Rational {
        let (i, f) = s.split_once('.').unwrap();
        let den = num_traits::pow(BigInt::from(10), f.len());
        let num: BigInt = alloc::format!("{i}{f}").parse().unwrap();
        Rational::new(num, den)
    }

    #[test]
    fn quad_approximate_examples() {
        let r5 = QuadExt::new(rat(0), rat(1), rat(5));
        assert_eq!(quad_approximate(&r5, 7).unwrap().to_decimal(7), "2.2360680");
        let two = QuadExt::new(rat(2), rat(0), rat(5));
        assert_eq!(quad_approximate(&two, 3).unwrap().to_decimal(3), "2.000");
        let x = QuadExt::new(rat(3), rat(1), rat(5));
        assert_eq!(quad_approximate(&x, 6).unwrap().to_decimal(6), "5.236068");
    }

    #[test]
    fn quad_approximate_rejects_negative_d() {
        let x = QuadExt::new(rat(0), rat(1), rat(-3));
        assert!(matches!(quad_approximate(&x, 5), Err(Error::UnsupportedDomain(_))));
    }

    #[test]
    fn log_examples() {
        assert_eq!(bigfloat_log(&BigFloat::exact(rat(1)), 10).unwrap().to_decimal(10), "0.0000000000");
        assert_eq!(bigfloat_log(&BigFloat::exact(rat(4)), 6).unwrap().to_decimal(6), "1.386294");
        let x = BigFloat::exact(dec("6.854102"));
        assert_eq!(bigfloat_log(&x, 5).unwrap().to_decimal(5), "1.92485");
    }

    #[test]
    fn log_rejects_non_positive() {
        assert!(bigfloat_log(&BigFloat::exact(rat(0)), 5).is_err());
        assert!(bigfloat_log(&BigFloat::exact(rat(-2)), 5).is_err());
    }

    // Independent oracle: ln 2 = Σ 1/(k 2^k), tail after K terms ≤ 1/((K+1) 2^K).
    #[test]
    fn ln2_agrees_with_alternate_series() {
        let mut s = Rational::zero();
        for k in 1..=80u32 {
            s += Rational::new(BigInt::one(), BigInt::from(k) * (BigInt::one() << k));
        }
        let tail = Rational::new(BigInt::one(), BigInt::from(81) * (BigInt::one() << 80u32));
        let oracle = BigFloat::from_bounds(s.clone(), s + tail);
        let ours = BigFloat::exact(rat(2)).ln(80).unwrap();
        assert!(ours.overlaps(&oracle));
        assert!(ours.width() < frac(1, 1 << 30) / rat(1 << 30));
    }

    #[test]
    fn ln_of_small_and_large_arguments() {
        // ln(1/8) = -3 ln 2, ln(1024) = 10 ln 2
        let l2 = BigFloat::exact(rat(2)).ln(100).unwrap();
        let l8 = BigFloat::exact(frac(1, 8)).ln(100).unwrap();
        assert!(l8.overlaps(&(&l2 * &BigFloat::exact(rat(-3)))));
        let l1024 = BigFloat::exact(rat(1024)).ln(100).unwrap();
        assert!(l1024.overlaps(&(&l2 * &BigFloat::exact(rat(10)))));
    }

    #[test]
    fn doubling_digits_stays_within_first_bound() {
        let x = QuadExt::new(frac(1, 3), frac(-2, 7), rat(11));
        for d in [3u32, 8, 15] {
            let coarse = quad_approximate(&x, d).unwrap();
            let fine = quad_approximate(&x, 2 * d).unwrap();
            let moved = (coarse.midpoint() - fine.midpoint()).abs();
            assert!(moved <= ten_pow_neg(d));
            assert!(coarse.overlaps(&fine));
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(BigFloat::exact(frac(-1, 8)).to_decimal(2), "-0.13");
        assert_eq!(BigFloat::exact(frac(1, 200)).to_decimal(2), "0.01");
        assert_eq!(BigFloat::exact(rat(7)).to_decimal(0), "7");
        assert_eq!(BigFloat::exact(frac(3, 100)).to_decimal(1), "0.0");
    }

    #[test]
    fn sqrt_enclosure_is_rigorous() {
        let s = BigFloat::exact(rat(2)).sqrt(60).unwrap();
        assert!(s.lo() * s.lo() <= rat(2));
        assert!(s.hi() * s.hi() >= rat(2));
        assert!(BigFloat::exact(rat(-1)).sqrt(10).is_err());
    }
}
