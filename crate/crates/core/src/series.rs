//! Truncated formal power series over an exact field.
//!
//! A [`TruncSeries`] of order `N` stores `c₀ … c_N` and stands for the series
//! modulo `x^(N+1)`. Binary operations truncate to the smaller order; nothing
//! ever raises the order except [`TruncSeries::shift_up`], which is exact.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numerics::{quad_normalize, rat, QuadExt, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<S = Rational> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncSeries<S> {
    /// Panics on an empty coefficient list or on coefficients from different
    /// fields.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c0");
        assert!(coeffs.iter().all(|c| c.same_field(&coeffs[0])), "coefficients from different fields");
        Self { coeffs }
    }

    /// The zero series of order `order` in the field of `like`.
    pub fn zero(like: &S, order: usize) -> Self {
        Self { coeffs: vec![like.zero_like(); order + 1] }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut s = Self::zero(&c, order);
        s.coeffs[0] = c;
        s
    }

    /// Polynomial `Σ cᵢ xⁱ` viewed at `order`; terms above `order` are dropped.
    pub fn from_poly(poly: &[S], order: usize) -> Self {
        let mut s = Self::zero(&poly[0], order);
        for (slot, c) in s.coeffs.iter_mut().zip(poly) {
            *slot = c.clone();
        }
        s
    }

    /// Coefficients `f(n)` for `start ≤ n ≤ order`, zero below `start`.
    pub fn from_fn(like: &S, start: usize, order: usize, mut f: impl FnMut(usize) -> S) -> Self {
        let mut s = Self::zero(like, order);
        for n in start..=order {
            s.coeffs[n] = f(n);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &S {
        &self.coeffs[n]
    }

    fn like(&self) -> &S {
        &self.coeffs[0]
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.vanishes())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the order of a truncated series");
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    fn common(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common(other);
        Self { coeffs: (0..=n).map(|i| self.coeffs[i].clone() + &other.coeffs[i]).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common(other);
        Self { coeffs: (0..=n).map(|i| self.coeffs[i].clone() - &other.coeffs[i]).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().cloned().map(|c| -c).collect() }
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(self.like().zero_like(), |acc, i| acc + &(self.coeffs[i].clone() * &other.coeffs[k - i]))
            })
            .collect();
        Self { coeffs }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.clone() * c).collect() }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x.scale(r)).collect() }
    }

    /// `1/self`; the constant term must be invertible.
    pub fn recip(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].inv().ok_or(Error::Valuation)?;
        let mut out: Vec<S> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..=self.order() {
            let acc = (1..=k).fold(self.like().zero_like(), |acc, i| acc + &(self.coeffs[i].clone() * &out[k - i]));
            out.push(-(acc * &inv0));
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.common(other);
        Ok(self.truncate(n).mul(&other.truncate(n).recip()?))
    }

    /// Multiplication by `x^k`; exact, so the order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![self.like().zero_like(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Division by `x^k`; the first `k` coefficients must vanish and the order
    /// drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::Precondition(format!("cannot divide an order-{} series by x^{k}", self.order())));
        }
        if self.coeffs[..k].iter().any(|c| !c.vanishes()) {
            return Err(Error::Valuation);
        }
        Ok(Self { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Termwise `cₙ/n`, shifted up one place: the antiderivative with zero
    /// constant term, kept at the same order.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(self.like().zero_like());
        for n in 1..=self.order() {
            coeffs.push(self.coeffs[n - 1].scale(&Rational::new(BigInt::from(1), BigInt::from(n))));
        }
        Self { coeffs }
    }

    /// Formal derivative; the order drops by one (order 0 gives the zero
    /// series of order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(self.like(), 0);
        }
        Self { coeffs: (1..=self.order()).map(|n| self.coeffs[n].scale(&rat(n as i64))).collect() }
    }

    /// Termwise `n·cₙ`, i.e. `x·d/dx`.
    pub fn xdx(&self) -> Self {
        Self { coeffs: self.coeffs.iter().enumerate().map(|(n, c)| c.scale(&rat(n as i64))).collect() }
    }

    /// `ln(self)` from `(ln u)′ = u′/u`; the constant term must be 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != self.like().one_like() {
            return Err(Error::Normalization(self.coeffs[0].to_string()));
        }
        if self.order() == 0 {
            return Ok(Self::zero(self.like(), 0));
        }
        // u′/u is known to order N−1, and integrating restores order N
        let ratio = self.derivative().div(&self.truncate(self.order() - 1))?;
        Ok(ratio.antiderivative())
    }

    /// Antiderivative with zero constant term; exact, so the order grows by
    /// one.
    fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(self.like().zero_like());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&Rational::new(BigInt::from(1), BigInt::from(i + 1))));
        }
        Self { coeffs }
    }

    /// Principal square root.
    ///
    /// Writes `u = c·x^(2k)·(1 + w)`, takes `√c` exactly, and refines the root
    /// of `1 + w` by Newton's iteration `s ← (s + t/s)/2`, doubling the number
    /// of correct terms each round. Dividing out `x^(2k)` costs `2k` known
    /// terms and multiplying back `x^k` restores `k`, so the result has order
    /// `N − k`.
    pub fn sqrt(&self) -> Result<Self> {
        let Some(v) = self.valuation() else {
            return Ok(self.clone());
        };
        if v % 2 == 1 {
            return Err(Error::Domain(format!("square root of a series with odd valuation {v}")));
        }
        let lead = self.coeffs[v].clone();
        let root_lead = lead
            .sqrt_exact()
            .ok_or_else(|| Error::Domain(format!("leading coefficient {lead} has no exact square root")))?;
        let unit = self.shift_down(v)?.scale(&lead.inv().expect("nonzero leading coefficient"));
        let target = unit.order();
        let one = self.like().one_like();
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let mut s = Self::constant(one, 0);
        let mut known = 1usize;
        while known <= target {
            known = (2 * known).min(target + 1);
            let prec = known - 1;
            let widened = s.pad(prec);
            let t = unit.truncate(prec);
            s = widened.add(&t.div(&widened)?).scale_rational(&half);
        }
        Ok(s.scale(&root_lead).shift_up(v / 2))
    }

    /// Zero-padded copy at a larger order; only for iterates whose missing
    /// terms are recomputed afterwards.
    fn pad(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, self.like().zero_like());
        coeffs.truncate(order + 1);
        Self { coeffs }
    }
}

impl TruncSeries<Rational> {
    /// `[f(start), …]` convenience for the rational field.
    pub fn from_sequence(start: usize, order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self::from_fn(&rat(0), start, order, f)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| rat(c)).collect())
    }

    /// Lifts into `Q(√D)`.
    pub fn to_quad(&self, d: &Rational) -> TruncSeries<QuadExt> {
        TruncSeries { coeffs: self.coeffs.iter().map(|c| QuadExt::rational(c.clone(), d.clone())).collect() }
    }
}

impl TruncSeries<QuadExt> {
    /// Collapses to rational coefficients; any surviving `√D` component is a
    /// [`Error::CancellationFailure`].
    pub fn to_rational(&self) -> Result<TruncSeries<Rational>> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                let n = quad_normalize(c);
                n.as_rational().ok_or_else(|| Error::CancellationFailure { index, value: n.to_string() })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncSeries { coeffs })
    }
}

impl<S: Scalar> fmt::Display for TruncSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] + O(x^{})", self.order() + 1)
    }
}

/// Operation selector for [`ps_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ps_arith<S: Scalar>(op: SeriesOp, u: &TruncSeries<S>, v: &TruncSeries<S>) -> Result<TruncSeries<S>> {
    match op {
        SeriesOp::Add => Ok(u.add(v)),
        SeriesOp::Sub => Ok(u.sub(v)),
        SeriesOp::Mul => Ok(u.mul(v)),
        SeriesOp::Div => u.div(v),
    }
}

pub fn ps_from_sequence(start: usize, order: usize, f: impl FnMut(usize) -> Rational) -> TruncSeries {
    TruncSeries::from_sequence(start, order, f)
}

pub fn ps_log<S: Scalar>(u: &TruncSeries<S>) -> Result<TruncSeries<S>> {
    u.log()
}

pub fn ps_sqrt<S: Scalar>(u: &TruncSeries<S>) -> Result<TruncSeries<S>> {
    u.sqrt()
}

pub fn ps_integrate<S: Scalar>(u: &TruncSeries<S>) -> TruncSeries<S> {
    u.integrate()
}

pub fn ps_xdx<S: Scalar>(u: &TruncSeries<S>) -> TruncSeries<S> {
    u.xdx()
}

pub fn ps_to_rational(u: &TruncSeries<QuadExt>) -> Result<TruncSeries<Rational>> {
    u.to_rational()
}
