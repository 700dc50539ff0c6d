//! Certified numerical evaluation of `Σ w(n)·S(n)·xⁿ` for `w ∈ {H, C}` and
//! `S ∈ {F, L}`.
//!
//! Partial sums are exact rationals. The tail is bounded geometrically from
//! a ratio bound that is proved to hold for every later term, and the closed
//! form is evaluated with interval arithmetic, so a reported agreement is a
//! proof at the stated tolerance rather than a floating-point coincidence.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{frac, rat, BigFloat, QuadExt, Rational};
use crate::sequences::SequenceParams;

/// Which product series to sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Σ H(n)F(n)xⁿ`
    HF,
    /// `Σ C(n)F(n)xⁿ`
    CF,
    /// `Σ H(n)L(n)xⁿ`
    HL,
    /// `Σ C(n)L(n)xⁿ`
    CL,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::HF, Family::CF, Family::HL, Family::CL];

    fn catalan(&self) -> bool {
        matches!(self, Family::CF | Family::CL)
    }

    fn lucas(&self) -> bool {
        matches!(self, Family::HL | Family::CL)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::HF => "HF",
            Family::CF => "CF",
            Family::HL => "HL",
            Family::CL => "CL",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s)).ok_or_else(|| Error::UnknownName(s.into()))
    }
}

/// Exact convergence verdict for a point `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusInfo {
    /// Dominant root magnitude `g = (|a| + √D)/2`.
    pub growth: QuadExt,
    /// `1/g`, or `1/(4g)` for the Catalan families.
    pub radius: QuadExt,
    pub x: Rational,
    pub inside: bool,
}

pub fn radius_check(params: &SequenceParams, family: Family, x: &Rational) -> Result<RadiusInfo> {
    let d = params.discriminant();
    if !d.is_positive() {
        return Err(Error::UnsupportedDomain(format!("no real dominant root when a^2 + 4b = {d}")));
    }
    let abs_a = params.a().abs();
    let growth = QuadExt::new(&abs_a / rat(2), frac(1, 2), d.clone());
    let scale = if family.catalan() { rat(4) } else { rat(1) };
    // 1/g = 2/(|a| + √D) = (√D − |a|)/(2b)
    let two_b = rat(2) * params.b();
    let radius = QuadExt::new(-(&abs_a / &two_b) / &scale, (&two_b * &scale).recip(), d.clone());
    // c·g < 1 ⇔ c√D < 2 − c|a| ⇔ 2 − c|a| > 0 and c²D < (2 − c|a|)²
    let c = x.abs() * &scale;
    let rhs = rat(2) - &c * &abs_a;
    let inside = rhs.is_positive() && &c * &c * d < &rhs * &rhs;
    Ok(RadiusInfo { growth, radius, x: x.clone(), inside })
}

/// Outcome of [`evaluate_sum`].
#[derive(Clone, Debug, PartialEq)]
pub struct SumEvaluation {
    pub family: Family,
    pub x: Rational,
    /// `Σ_{n=0}^{N} tₙ`, exactly.
    pub partial_sum: Rational,
    /// `N + 1`.
    pub terms_used: u64,
    /// Upper bound on `Σ_{n>N} |tₙ|`.
    pub tail_bound: Rational,
    /// Ratio `r < 1` with `|t_{n+1}| ≤ r·|tₙ|` from `ratio_index` on.
    pub ratio: Rational,
    pub ratio_index: u64,
    pub closed_form: BigFloat,
    /// `|partial − closed|` as an enclosure.
    pub difference: BigFloat,
    /// `difference ≤ tail_bound + width(closed_form)`.
    pub verdict: bool,
}

impl SumEvaluation {
    /// Upper end of the difference enclosure.
    pub fn max_difference(&self) -> &Rational {
        self.difference.hi()
    }
}

/// Largest number of terms [`evaluate_sum`] will add before giving up.
pub const TERM_BUDGET: u64 = 200_000;

/// Incremental `w(n)`, `S(n)` and `xⁿ`.
struct Terms<'a> {
    family: Family,
    params: &'a SequenceParams,
    n: u64,
    weight: Rational,
    s: (Rational, Rational),
    xn: Rational,
    x: Rational,
}

impl<'a> Terms<'a> {
    fn new(params: &'a SequenceParams, family: Family, x: &Rational) -> Self {
        let weight = if family.catalan() { rat(1) } else { rat(0) };
        // (S(0), S(1))
        let s = if family.lucas() { (rat(2), params.a().clone()) } else { (rat(0), rat(1)) };
        Self { family, params, n: 0, weight, s, xn: rat(1), x: x.clone() }
    }

    fn term(&self) -> Rational {
        &self.weight * &self.s.0 * &self.xn
    }

    fn advance(&mut self) {
        let n = self.n;
        self.weight = if self.family.catalan() {
            &self.weight * frac(2 * (2 * n as i64 + 1), n as i64 + 2)
        } else {
            &self.weight + Rational::new(BigInt::one(), BigInt::from(n + 1))
        };
        let next = self.params.a() * &self.s.1 + self.params.b() * &self.s.0;
        let cur = core::mem::replace(&mut self.s.1, next);
        self.s.0 = cur;
        self.xn = &self.xn * &self.x;
        self.n += 1;
    }
}

/// Rational enclosures of `g = (|a| + √D)/2` and `ρ = (|√D − |a||)/(√D + |a|)`.
fn root_bounds(params: &SequenceParams, bits: u32) -> Result<(BigFloat, BigFloat)> {
    let abs_a = BigFloat::exact(params.a().abs());
    let sd = BigFloat::exact(params.discriminant().clone()).sqrt(bits)?;
    let g = (&(&abs_a + &sd) * &BigFloat::exact(frac(1, 2))).round_outward(bits);
    let small = (&sd - &abs_a).abs();
    let rho = small.div(&(&sd + &abs_a))?.round_outward(bits);
    Ok((g, rho))
}

/// Sums the series at `x` until the certified tail drops below
/// `10^-digits`, and compares with the closed form.
pub fn evaluate_sum(params: &SequenceParams, family: Family, x: &Rational, digits: u32) -> Result<SumEvaluation> {
    let info = radius_check(params, family, x)?;
    if !info.inside {
        return Err(Error::Divergence(format!("x = {x} is outside the radius {} of {family}", info.radius)));
    }
    let target = crate::numerics::ten_pow_neg(digits);
    let bits = 96;
    let (g, rho) = root_bounds(params, bits)?;
    if rho.hi() >= &rat(1) {
        return Err(Error::Inconclusive("both characteristic roots have the same magnitude".into()));
    }
    let ax = x.abs();
    let lead = if family.catalan() { rat(4) } else { rat(1) };
    let limit = g.hi() * &lead * &ax;
    if limit >= rat(1) {
        return Err(Error::Inconclusive(format!("limit ratio bound {limit} is not below 1")));
    }
    let r = (&limit + rat(1)) / rat(2);
    let r = BigFloat::exact(r).round_outward(64).hi().clone();
    if r >= rat(1) {
        return Err(Error::Inconclusive(format!("limit ratio bound {limit} is too close to 1")));
    }

    // |S(n+1)/S(n)| ≤ g(1 + ρ^(n+1))/(1 − ρ^n) and H(n+1)/H(n) ≤ 1 + 1/(n+1),
    // C(n+1)/C(n) < 4; all three bounds decrease in n, so the first n where
    // their product is ≤ r certifies every later ratio too.
    let one = BigFloat::exact(rat(1));
    let g_hi = BigFloat::exact(g.hi().clone());
    let rho_hi = BigFloat::exact(rho.hi().clone());
    let mut rho_n = rho_hi.clone(); // ρ^n at n = 1
    let mut ratio_index = None;
    for n in 1..=TERM_BUDGET {
        let rho_next = (&rho_n * &rho_hi).round_outward(bits);
        let s_bound = (&g_hi * &(&one + &rho_next)).div(&(&one - &rho_n))?;
        let w_bound = if family.catalan() { rat(4) } else { rat(1) + frac(1, n as i64 + 1) };
        if s_bound.hi() * &w_bound * &ax <= r {
            ratio_index = Some(n);
            break;
        }
        rho_n = rho_next;
    }
    let ratio_index = ratio_index
        .ok_or_else(|| Error::Inconclusive(format!("ratio bound did not drop below {r} within {TERM_BUDGET} terms")))?;

    let geometric = &r / (rat(1) - &r);
    let mut terms = Terms::new(params, family, x);
    let mut partial = Rational::zero();
    loop {
        let t = terms.term();
        partial += &t;
        let n = terms.n;
        if n >= ratio_index {
            let tail = t.abs() * &geometric;
            if tail < target {
                let closed = closed_form(params, family, x, digits + 2)?;
                let difference = (&BigFloat::exact(partial.clone()) - &closed).abs();
                let verdict = difference.hi() <= &(&tail + closed.width());
                return Ok(SumEvaluation {
                    family,
                    x: x.clone(),
                    partial_sum: partial,
                    terms_used: n + 1,
                    tail_bound: tail,
                    ratio: r,
                    ratio_index,
                    closed_form: closed,
                    difference,
                    verdict,
                });
            }
        }
        if n >= TERM_BUDGET {
            return Err(Error::Inconclusive(format!("tail still above 10^-{digits} after {TERM_BUDGET} terms")));
        }
        terms.advance();
    }
}

/// The closed form of `family` at `x`, as an enclosure no wider than
/// `10^-digits`.
pub fn closed_form(params: &SequenceParams, family: Family, x: &Rational, digits: u32) -> Result<BigFloat> {
    if !radius_check(params, family, x)?.inside {
        return Err(Error::Divergence(format!("x = {x} is outside the radius of {family}")));
    }
    if x.is_zero() {
        let t0 = if family == Family::CL { rat(2) } else { rat(0) };
        return Ok(BigFloat::exact(t0));
    }
    refine(digits, |bits| {
        let e = ClosedForms::new(params, x, bits)?;
        match family {
            Family::HF => e.u5(),
            Family::HL => {
                let u4 = e.u4()?;
                let u5 = e.u5()?;
                Ok(&(&u4 * &e.c(rat(2))) - &(&u5 * &e.c(params.a().clone())))
            }
            Family::CF => e.v3(),
            Family::CL => {
                let v1 = e.v1()?;
                let v3 = e.v3()?;
                Ok(&(&v1 * &e.c(rat(2))) - &(&v3 * &e.c(params.a().clone())))
            }
        }
    })
}

/// Reruns `f` at doubling precision until the enclosure is narrow enough.
fn refine(digits: u32, f: impl Fn(u32) -> Result<BigFloat>) -> Result<BigFloat> {
    let target = crate::numerics::ten_pow_neg(digits);
    let mut bits = crate::numerics::bits_for(digits) + 32;
    for _ in 0..8 {
        let v = f(bits)?;
        if v.width() <= target {
            return Ok(v);
        }
        bits *= 2;
    }
    Err(Error::Inconclusive(format!("could not narrow the closed form to 10^-{digits}")))
}

/// Point evaluation of the generating functions with intervals.
struct ClosedForms {
    bits: u32,
    a: BigFloat,
    b: BigFloat,
    d: BigFloat,
    x: BigFloat,
    sqrt_d: BigFloat,
}

impl ClosedForms {
    fn new(params: &SequenceParams, x: &Rational, bits: u32) -> Result<Self> {
        let d = BigFloat::exact(params.discriminant().clone());
        let sqrt_d = if params.discriminant().is_positive() { d.sqrt(bits)? } else { BigFloat::exact(rat(0)) };
        Ok(Self {
            bits,
            a: BigFloat::exact(params.a().clone()),
            b: BigFloat::exact(params.b().clone()),
            d,
            x: BigFloat::exact(x.clone()),
            sqrt_d,
        })
    }

    fn c(&self, r: Rational) -> BigFloat {
        BigFloat::exact(r)
    }

    fn round(&self, v: BigFloat) -> BigFloat {
        v.round_outward(self.bits + 8)
    }

    /// `1 − ax − bx²`
    fn p(&self) -> BigFloat {
        let ax = &self.a * &self.x;
        let bxx = &(&self.b * &self.x) * &self.x;
        &(&self.c(rat(1)) - &ax) - &bxx
    }

    /// `log((2 − √D·x − ax)/(2 + √D·x − ax))`
    fn log_q(&self) -> Result<BigFloat> {
        let two_minus_ax = &self.c(rat(2)) - &(&self.a * &self.x);
        let sx = &self.sqrt_d * &self.x;
        let q = (&two_minus_ax - &sx).div(&(&two_minus_ax + &sx))?;
        self.round(q).ln(self.bits)
    }

    fn u4(&self) -> Result<BigFloat> {
        let lead = &self.a + &(&self.c(rat(2)) * &(&self.b * &self.x));
        let p = self.p();
        let num = &(&lead * &self.log_q()?) + &(&self.sqrt_d * &self.round(p.clone()).ln(self.bits)?);
        let den = &(&self.c(rat(2)) * &self.sqrt_d) * &p;
        Ok(self.round(-num.div(&den)?))
    }

    fn u5(&self) -> Result<BigFloat> {
        let lead = (&self.c(rat(2)) - &(&self.a * &self.x)).div(&self.sqrt_d)?;
        let p = self.p();
        let num = &(&lead * &self.log_q()?) + &(&self.x * &self.round(p.clone()).ln(self.bits)?);
        let den = &self.c(rat(2)) * &p;
        Ok(self.round(-num.div(&den)?))
    }

    /// `√(1 − 4ax − 16bx²)`
    fn root(&self) -> Result<BigFloat> {
        let r = &(&self.c(rat(1)) - &(&self.c(rat(4)) * &(&self.a * &self.x)))
            - &(&self.c(rat(16)) * &(&(&self.b * &self.x) * &self.x));
        self.round(r).sqrt(self.bits)
    }

    /// `√((1 − 2ax − √R)/(2D·x²))`; folding `1/x` under the root keeps the
    /// branch that starts at 1 for either sign of `x`.
    fn v1(&self) -> Result<BigFloat> {
        let num = &(&self.c(rat(1)) - &(&self.c(rat(2)) * &(&self.a * &self.x))) - &self.root()?;
        let den = &(&self.c(rat(2)) * &self.d) * &(&self.x * &self.x);
        self.round(num.div(&den)?).sqrt(self.bits)
    }

    fn v3(&self) -> Result<BigFloat> {
        let two_b = &self.c(rat(2)) * &self.b;
        let inner = &(&(&two_b * &self.root()?) + &(&two_b * &(&self.c(rat(2)) * &(&self.a * &self.x))))
            + &(&two_b + &(&self.a * &self.a));
        let s = self.round(inner.div(&self.d)?).sqrt(self.bits)?;
        let v = (&self.c(rat(1)) - &s).div(&(&two_b * &self.x))?;
        Ok(self.round(v))
    }
}

/// A closed-form constant claimed for one of the sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    /// `(3/√5)·ln((3+√5)/(3−√5)) + ln 4`
    GoldenHarmonic,
    /// `−(3/4)·(√2·ln((2−√2)/(2+√2)) + ln(2/9))`
    PellHarmonic,
    /// `4(1 − 3/√10)`
    GoldenCatalan,
    /// `8 − 2√(13 + √7)`
    PellCatalan,
}

impl Constant {
    pub fn formula(&self) -> &'static str {
        match self {
            Constant::GoldenHarmonic => "(3/sqrt(5))*ln((3+sqrt(5))/(3-sqrt(5))) + ln(4)",
            Constant::PellHarmonic => "-(3/4)*(sqrt(2)*ln((2-sqrt(2))/(2+sqrt(2))) + ln(2/9))",
            Constant::GoldenCatalan => "4*(1 - 3/sqrt(10))",
            Constant::PellCatalan => "8 - 2*sqrt(13 + sqrt(7))",
        }
    }

    /// Enclosure no wider than `10^-digits`.
    pub fn evaluate(&self, digits: u32) -> Result<BigFloat> {
        let k = |r: Rational| BigFloat::exact(r);
        refine(digits, |bits| {
            Ok(match self {
                Constant::GoldenHarmonic => {
                    let s5 = k(rat(5)).sqrt(bits)?;
                    let q = (&k(rat(3)) + &s5).div(&(&k(rat(3)) - &s5))?.round_outward(bits);
                    let first = &k(rat(3)).div(&s5)? * &q.ln(bits)?;
                    &first + &k(rat(4)).ln(bits)?
                }
                Constant::PellHarmonic => {
                    let s2 = k(rat(2)).sqrt(bits)?;
                    let q = (&k(rat(2)) - &s2).div(&(&k(rat(2)) + &s2))?.round_outward(bits);
                    let inner = &(&s2 * &q.ln(bits)?) + &k(frac(2, 9)).ln(bits)?;
                    -(&k(frac(3, 4)) * &inner)
                }
                Constant::GoldenCatalan => {
                    let s10 = k(rat(10)).sqrt(bits)?;
                    &k(rat(4)) * &(&k(rat(1)) - &k(rat(3)).div(&s10)?)
                }
                Constant::PellCatalan => {
                    let s7 = k(rat(7)).sqrt(bits)?;
                    let outer = (&k(rat(13)) + &s7).sqrt(bits)?;
                    &k(rat(8)) - &(&k(rat(2)) * &outer)
                }
            }
            .round_outward(bits))
        })
    }
}

/// One of the four sums with a closed-form constant to check against.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceSum {
    pub name: &'static str,
    pub a: i64,
    pub b: i64,
    pub family: Family,
    pub x: Rational,
    pub constant: Constant,
}

impl ReferenceSum {
    pub fn params(&self) -> SequenceParams {
        SequenceParams::from_ints(self.a, self.b).expect("reference parameters are valid")
    }
}

pub fn reference_sums() -> Vec<ReferenceSum> {
    alloc::vec![
        ReferenceSum {
            name: "sum H(n)F(n)/2^n",
            a: 1,
            b: 1,
            family: Family::HF,
            x: frac(1, 2),
            constant: Constant::GoldenHarmonic,
        },
        ReferenceSum {
            name: "sum H(n)P(n)/3^n",
            a: 2,
            b: 1,
            family: Family::HF,
            x: frac(1, 3),
            constant: Constant::PellHarmonic,
        },
        ReferenceSum {
            name: "sum C(n)F(n)/8^n",
            a: 1,
            b: 1,
            family: Family::CF,
            x: frac(1, 8),
            constant: Constant::GoldenCatalan,
        },
        ReferenceSum {
            name: "sum C(n)P(n)/16^n",
            a: 2,
            b: 1,
            family: Family::CF,
            x: frac(1, 16),
            constant: Constant::PellCatalan,
        },
    ]
}

/// Describes an evaluation on one line.
pub fn summary(e: &SumEvaluation, digits: u32) -> String {
    format!(
        "{} at x={}: partial={} (N={}), tail<={}, closed={}, |diff|<={}, {}",
        e.family,
        e.x,
        BigFloat::exact(e.partial_sum.clone()).to_decimal(digits + 2),
        e.terms_used,
        BigFloat::exact(e.tail_bound.clone()).to_decimal(digits + 4),
        e.closed_form.to_decimal(digits + 2),
        BigFloat::exact(e.difference.hi().clone()).to_decimal(digits + 4),
        if e.verdict { "agree" } else { "DISAGREE" }
    )
}
