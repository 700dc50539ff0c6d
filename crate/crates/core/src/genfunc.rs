//! Closed-form generating functions, expanded as truncated series.
//!
//! Each builder expands the displayed closed form with exact series
//! arithmetic. Forms containing `√D` are expanded over `Q(√D)` and collapsed
//! with [`TruncSeries::to_rational`], so an irrational residue is an error
//! rather than a rounding artifact. [`oracle_product`] and [`GfSpec::oracle`]
//! build the same series termwise from the sequences and are what the
//! builders get compared against.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::identities::IdentityReport;
use crate::numerics::{frac, rat, QuadExt, Rational};
use crate::sequences::{catalan, harmonic, FibOrLucas, FibTable, SequenceParams};
use crate::series::TruncSeries;

type Series = TruncSeries<Rational>;
type QSeries = TruncSeries<QuadExt>;

fn poly(cs: &[Rational], order: usize) -> Series {
    Series::from_poly(cs, order)
}

/// `1 − a·x − b·x²`.
fn denominator(p: &SequenceParams, order: usize) -> Series {
    poly(&[rat(1), -p.a().clone(), -p.b().clone()], order)
}

/// `x/(1 − ax − bx²)`: coefficients `F(n)`.
pub fn gf_fib(params: &SequenceParams, order: usize) -> Series {
    let num = poly(&[rat(0), rat(1)], order);
    num.div(&denominator(params, order)).expect("unit constant term")
}

/// `(2 − ax)/(1 − ax − bx²)`: coefficients `L(n)`.
pub fn gf_lucas(params: &SequenceParams, order: usize) -> Series {
    let num = poly(&[rat(2), -params.a().clone()], order);
    num.div(&denominator(params, order)).expect("unit constant term")
}

/// The two ways of combining `U4` and `U5` into the shifted product
/// `H(n)F(n+j+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum U6Reading {
    /// `F(j+1)·U4 + b·F(j)·U5`, the combination the addition law gives.
    Corrected,
    /// `F(j+1)·U5 + b·F(j)·U4`, with the two series swapped.
    Swapped,
}

/// The pieces every log-quotient form is assembled from, over `Q(√D)`.
struct LogParts {
    d: Rational,
    order: usize,
    sqrt_d: QuadExt,
    /// `1 − ax − bx²`
    p: QSeries,
    /// `log(1 − ax − bx²)`
    log_p: QSeries,
    /// `log((2 − √D·x − ax)/(2 + √D·x − ax))`
    log_q: QSeries,
}

impl LogParts {
    fn new(params: &SequenceParams, order: usize) -> Result<Self> {
        let d = params.discriminant().clone();
        if !d.is_positive() {
            return Err(Error::UnsupportedDomain(format!("the log-quotient form needs a^2 + 4b > 0, got {d}")));
        }
        let sqrt_d = QuadExt::sqrt_d(d.clone());
        let k = |r: Rational| QuadExt::rational(r, d.clone());
        let a = k(params.a().clone());
        let p = denominator(params, order).to_quad(&d);
        let log_p = p.log()?;
        let top = QSeries::from_poly(&[k(rat(2)), -(sqrt_d.clone() + &a)], order);
        let bottom = QSeries::from_poly(&[k(rat(2)), sqrt_d.clone() - &a], order);
        let log_q = top.div(&bottom)?.log()?;
        Ok(Self { d, order, sqrt_d, p, log_p, log_q })
    }

    fn k(&self, r: Rational) -> QuadExt {
        QuadExt::rational(r, self.d.clone())
    }

    fn lin(&self, c0: Rational, c1: Rational) -> QSeries {
        QSeries::from_poly(&[self.k(c0), self.k(c1)], self.order)
    }

    fn inv_sqrt_d(&self) -> QuadExt {
        crate::numerics::Scalar::inv(&self.sqrt_d).expect("D is nonzero")
    }

    fn u1(&self) -> QSeries {
        self.log_q.mul(&self.log_p).scale(&self.inv_sqrt_d())
    }

    fn u2(&self, params: &SequenceParams) -> Result<QSeries> {
        // log((−√D·x + ax − 2)/(√D·x + ax − 2))/√D
        let a = self.k(params.a().clone());
        let top = QSeries::from_poly(&[self.k(rat(-2)), a.clone() - &self.sqrt_d], self.order);
        let bottom = QSeries::from_poly(&[self.k(rat(-2)), a + &self.sqrt_d], self.order);
        Ok(top.div(&bottom)?.log()?.scale(&self.inv_sqrt_d()))
    }

    /// `((a + 2bx)·log Q + √D·log P)/(2√D·P)`, which is `−Σ H(n)F(n+1)xⁿ`.
    fn u4_printed(&self, params: &SequenceParams) -> Result<QSeries> {
        let lead = self.lin(params.a().clone(), rat(2) * params.b());
        let num = lead.mul(&self.log_q).add(&self.log_p.scale(&self.sqrt_d));
        let den = self.p.scale(&(self.sqrt_d.clone() * &self.k(rat(2))));
        num.div(&den)
    }

    fn u4(&self, params: &SequenceParams) -> Result<QSeries> {
        Ok(self.u4_printed(params)?.neg())
    }

    fn u5(&self, params: &SequenceParams) -> Result<QSeries> {
        let lead = self.lin(rat(2), -params.a().clone()).scale(&self.inv_sqrt_d());
        let x = self.lin(rat(0), rat(1));
        let num = lead.mul(&self.log_q).add(&x.mul(&self.log_p));
        num.div(&self.p.scale_rational(&rat(2))).map(|s| s.neg())
    }
}

/// `U3 = −log(1 − ax − bx²)`, coefficients `L(n)/n`; valid for every `D`.
fn u3(params: &SequenceParams, order: usize) -> Result<Series> {
    Ok(denominator(params, order).log()?.neg())
}

/// `U_k` for `k = 1..=6`; `j` is only read by `U6`, which uses the corrected
/// combination (see [`gf_u6`] for the other one).
///
/// | k | coefficient of `xⁿ` |
/// |---|---|
/// | 1 | `(2/n)·H(n−1)·F(n)` |
/// | 2 | `F(n)/n` |
/// | 3 | `L(n)/n` |
/// | 4 | `H(n)·F(n+1)` |
/// | 5 | `H(n)·F(n)` |
/// | 6 | `H(n)·F(n+j+1)` |
pub fn gf_u(k: u8, params: &SequenceParams, j: u64, order: usize) -> Result<Series> {
    if order == 0 {
        return Err(Error::Precondition("U series need order >= 1".into()));
    }
    if k == 3 {
        return u3(params, order);
    }
    if k == 6 {
        return gf_u6(params, j, order, U6Reading::Corrected);
    }
    let parts = LogParts::new(params, order)?;
    let s = match k {
        1 => parts.u1(),
        2 => parts.u2(params)?,
        4 => parts.u4(params)?,
        5 => parts.u5(params)?,
        _ => return Err(Error::UnknownName(format!("U{k}"))),
    };
    s.to_rational()
}

/// The `H(n)F(n+1)` closed form with the overall sign it is usually printed
/// with; its coefficients are `−H(n)F(n+1)`. [`gf_u`] with `k = 4` negates it.
pub fn gf_u4_unsigned(params: &SequenceParams, order: usize) -> Result<Series> {
    LogParts::new(params, order)?.u4_printed(params)?.to_rational()
}

pub fn gf_u6(params: &SequenceParams, j: u64, order: usize, reading: U6Reading) -> Result<Series> {
    let parts = LogParts::new(params, order)?;
    let u4 = parts.u4(params)?.to_rational()?;
    let u5 = parts.u5(params)?.to_rational()?;
    let t = FibTable::new(params.clone());
    let (first, second) = match reading {
        U6Reading::Corrected => (u4, u5),
        U6Reading::Swapped => (u5, u4),
    };
    let j = j as i64;
    Ok(first.scale(&t.fib(j + 1)).add(&second.scale(&(params.b() * t.fib(j)))))
}

/// The Catalan radicand `1 − 4ax − 16bx²`.
fn catalan_radicand(params: &SequenceParams, order: usize) -> Series {
    poly(&[rat(1), rat(-4) * params.a(), rat(-16) * params.b()], order)
}

fn v1(params: &SequenceParams, order: usize) -> Result<Series> {
    let m = order + 2;
    let root = catalan_radicand(params, m).sqrt()?;
    let inner = poly(&[rat(1), rat(-2) * params.a()], m).sub(&root);
    let inner = inner.scale(&(rat(2) * params.discriminant()).recip());
    Ok(inner.sqrt()?.shift_down(1)?.truncate(order))
}

fn v2(params: &SequenceParams, order: usize) -> Result<Series> {
    let m = order + 2;
    let root = catalan_radicand(params, m).sqrt()?;
    let inner = poly(&[rat(1), rat(-2) * params.a()], m).add(&root).scale(&frac(1, 2));
    let s = Series::constant(rat(1), m).sub(&inner.sqrt()?);
    Ok(s.shift_down(1)?.truncate(order))
}

fn v3(params: &SequenceParams, order: usize) -> Result<Series> {
    let m = order + 2;
    let (a, b) = (params.a(), params.b());
    let root = catalan_radicand(params, m).sqrt()?;
    let rest = poly(&[rat(2) * b + a * a, rat(4) * a * b], m);
    let inner = root.scale(&(rat(2) * b)).add(&rest).scale(&params.discriminant().recip());
    let s = Series::constant(rat(1), m).sub(&inner.sqrt()?);
    Ok(s.shift_down(1)?.scale(&(rat(2) * b).recip()).truncate(order))
}

/// `V_k` for `k = 1..=4`; `j` is only read by `V4`.
///
/// | k | coefficient of `xⁿ` |
/// |---|---|
/// | 1 | `C(n)·F(n+1)` |
/// | 2 | `C(n)·L(n+1)` |
/// | 3 | `C(n)·F(n)` |
/// | 4 | `C(n)·F(n+j+1)` |
///
/// Everything stays rational: the only radicand is `1 − 4ax − 16bx²`.
pub fn gf_v(k: u8, params: &SequenceParams, j: u64, order: usize) -> Result<Series> {
    match k {
        1 => v1(params, order),
        2 => v2(params, order),
        3 => v3(params, order),
        4 => {
            let t = FibTable::new(params.clone());
            let j = j as i64;
            let s1 = v1(params, order)?.scale(&t.fib(j + 1));
            let s3 = v3(params, order)?.scale(&(params.b() * t.fib(j)));
            Ok(s1.add(&s3))
        }
        _ => Err(Error::UnknownName(format!("V{k}"))),
    }
}

fn check_stride(m: u64, j: u64) -> Result<()> {
    if m == 0 || j >= m {
        return Err(Error::Precondition(format!("multisection needs m >= 1 and 0 <= j < m (got m={m}, j={j})")));
    }
    Ok(())
}

/// `Σ F(mn+j)xⁿ` or `Σ L(mn+j)xⁿ` as
/// `(F(j) + (−b)^j F(m−j) x)/(1 − L(m)x + (−b)^m x²)` and
/// `(L(j) − (−b)^j L(m−j) x)/(…)`.
pub fn gf_multisection(params: &SequenceParams, m: u64, j: u64, kind: FibOrLucas, order: usize) -> Result<Series> {
    check_stride(m, j)?;
    let t = FibTable::new(params.clone());
    let (m, j) = (m as i64, j as i64);
    let neg_b = -params.b().clone();
    let sj = crate::numerics::rat_pow(&neg_b, j);
    let num = match kind {
        FibOrLucas::Fib => [t.fib(j), sj * t.fib(m - j)],
        FibOrLucas::Lucas => [t.lucas(j), -(sj * t.lucas(m - j))],
    };
    let den = poly(&[rat(1), -t.lucas(m), crate::numerics::rat_pow(&neg_b, m)], order);
    poly(&num, order).div(&den)
}

/// Left factor of a product multisection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    /// Harmonic numbers `H(n)`.
    H,
    /// Catalan numbers `C(n)`.
    C,
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" | "harmonic" => Ok(Self::H),
            "C" | "catalan" => Ok(Self::C),
            _ => Err(Error::UnknownName(s.into())),
        }
    }
}

/// `Σ w(n)·F(mn+j)xⁿ` (or with `L`) from the `U4/U5` or `V1/V3` series of
/// the stride-`m` parameters `(L(m), −(−b)^m)`:
///
/// - `F`: `F(j)·S₁ + (−b)^j F(m−j)·S₂`
/// - `L`: `L(j)·S₁ − (−b)^j L(m−j)·S₂`
///
/// where `(S₁, S₂)` is `(U4, U5)` for `H` and `(V1, V3)` for `C`.
pub fn gf_product_multisection(
    params: &SequenceParams,
    m: u64,
    j: u64,
    left: Weight,
    right: FibOrLucas,
    order: usize,
) -> Result<Series> {
    check_stride(m, j)?;
    let derived = params.multisection(m)?;
    let (s1, s2) = match left {
        Weight::H => (gf_u(4, &derived, 0, order)?, gf_u(5, &derived, 0, order)?),
        Weight::C => (gf_v(1, &derived, 0, order)?, gf_v(3, &derived, 0, order)?),
    };
    let t = FibTable::new(params.clone());
    let (mi, ji) = (m as i64, j as i64);
    let sj = crate::numerics::rat_pow(&-params.b().clone(), ji);
    let (c1, c2) = match right {
        FibOrLucas::Fib => (t.fib(ji), sj * t.fib(mi - ji)),
        FibOrLucas::Lucas => (t.lucas(ji), -(sj * t.lucas(mi - ji))),
    };
    Ok(s1.scale(&c1).add(&s2.scale(&c2)))
}

/// `Σ s₁(n)·s₂(n)·xⁿ` computed term by term.
pub fn oracle_product(left: impl Fn(u64) -> Rational, right: impl Fn(u64) -> Rational, order: usize) -> Series {
    Series::from_sequence(0, order, |n| left(n as u64) * right(n as u64))
}

/// `V1 = 1 + x·V1·V2`, compared as series of order `order`.
pub fn check_catalan_functional_equation(params: &SequenceParams, order: usize) -> Result<IdentityReport<Series>> {
    let lhs = gf_v(1, params, 0, order)?;
    let v2 = gf_v(2, params, 0, order)?;
    let rhs = Series::constant(rat(1), order).add(&lhs.mul(&v2).shift_up(1).truncate(order));
    let inst =
        vec![("a".into(), params.a().clone()), ("b".into(), params.b().clone()), ("N".into(), rat(order as i64))];
    Ok(IdentityReport::new("catalan-functional-equation", inst, lhs, rhs))
}

/// Every generating function the crate can build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GfName {
    F,
    L,
    U(u8),
    V(u8),
    QF,
    QL,
    /// `H(n)·F(mn+j)`
    HF,
    /// `C(n)·F(mn+j)`
    CF,
    /// `H(n)·L(mn+j)`
    HL,
    /// `C(n)·L(mn+j)`
    CL,
}

impl GfName {
    pub const ALL: [GfName; 18] = [
        GfName::F,
        GfName::L,
        GfName::U(1),
        GfName::U(2),
        GfName::U(3),
        GfName::U(4),
        GfName::U(5),
        GfName::U(6),
        GfName::V(1),
        GfName::V(2),
        GfName::V(3),
        GfName::V(4),
        GfName::QF,
        GfName::QL,
        GfName::HF,
        GfName::CF,
        GfName::HL,
        GfName::CL,
    ];

    /// Takes the stride `m` (and offset `j`).
    pub fn is_multisection(&self) -> bool {
        matches!(self, GfName::QF | GfName::QL | GfName::HF | GfName::CF | GfName::HL | GfName::CL)
    }

    /// Takes the shift `j` alone.
    pub fn takes_shift(&self) -> bool {
        matches!(self, GfName::U(6) | GfName::V(4))
    }

    /// Built from logarithms or square roots rather than a rational function.
    pub fn is_transcendental(&self) -> bool {
        !matches!(self, GfName::F | GfName::L | GfName::QF | GfName::QL)
    }

    fn product_parts(&self) -> Option<(Weight, FibOrLucas)> {
        match self {
            GfName::HF => Some((Weight::H, FibOrLucas::Fib)),
            GfName::CF => Some((Weight::C, FibOrLucas::Fib)),
            GfName::HL => Some((Weight::H, FibOrLucas::Lucas)),
            GfName::CL => Some((Weight::C, FibOrLucas::Lucas)),
            _ => None,
        }
    }
}

impl fmt::Display for GfName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfName::F => f.write_str("F"),
            GfName::L => f.write_str("L"),
            GfName::U(k) => write!(f, "U{k}"),
            GfName::V(k) => write!(f, "V{k}"),
            GfName::QF => f.write_str("QF"),
            GfName::QL => f.write_str("QL"),
            GfName::HF => f.write_str("HF-multisection"),
            GfName::CF => f.write_str("CF-multisection"),
            GfName::HL => f.write_str("HL-multisection"),
            GfName::CL => f.write_str("CL-multisection"),
        }
    }
}

impl FromStr for GfName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let base = s.strip_suffix("-multisection").unwrap_or(s);
        let parsed = match base {
            "F" => GfName::F,
            "L" => GfName::L,
            "QF" => GfName::QF,
            "QL" => GfName::QL,
            "HF" => GfName::HF,
            "CF" => GfName::CF,
            "HL" => GfName::HL,
            "CL" => GfName::CL,
            _ => {
                let k = |rest: &str, hi: u8| rest.parse::<u8>().ok().filter(|k| (1..=hi).contains(k));
                match (base.get(..1), base.get(1..)) {
                    (Some("U"), Some(rest)) => k(rest, 6).map(GfName::U),
                    (Some("V"), Some(rest)) => k(rest, 4).map(GfName::V),
                    _ => None,
                }
                .ok_or_else(|| Error::UnknownName(s.into()))?
            }
        };
        if base != s && parsed.product_parts().is_none() {
            return Err(Error::UnknownName(s.into()));
        }
        Ok(parsed)
    }
}

/// A named generating function at concrete parameters and order.
#[derive(Clone, Debug, PartialEq)]
pub struct GfSpec {
    pub name: GfName,
    pub params: SequenceParams,
    /// Shift for `U6`/`V4`, offset for the multisections.
    pub j: u64,
    /// Stride for the multisections.
    pub m: u64,
    pub order: usize,
}

impl GfSpec {
    pub fn new(name: GfName, params: SequenceParams, order: usize) -> Self {
        Self { name, params, j: 0, m: 1, order }
    }

    pub fn with_shift(mut self, j: u64) -> Self {
        self.j = j;
        self
    }

    pub fn with_stride(mut self, m: u64, j: u64) -> Self {
        self.m = m;
        self.j = j;
        self
    }

    /// Expands the closed form.
    pub fn build(&self) -> Result<Series> {
        let (p, n) = (&self.params, self.order);
        match self.name {
            GfName::F => Ok(gf_fib(p, n)),
            GfName::L => Ok(gf_lucas(p, n)),
            GfName::U(k) => gf_u(k, p, self.j, n),
            GfName::V(k) => gf_v(k, p, self.j, n),
            GfName::QF => gf_multisection(p, self.m, self.j, FibOrLucas::Fib, n),
            GfName::QL => gf_multisection(p, self.m, self.j, FibOrLucas::Lucas, n),
            name => {
                let (w, r) = name.product_parts().expect("product multisection");
                gf_product_multisection(p, self.m, self.j, w, r, n)
            }
        }
    }

    /// The same series computed term by term from the sequences.
    pub fn oracle(&self) -> Result<Series> {
        if self.name.is_multisection() {
            check_stride(self.m, self.j)?;
        }
        let t = FibTable::new(self.params.clone());
        let f = |n: u64| t.fib(n as i64);
        let l = |n: u64| t.lucas(n as i64);
        let h = |n: u64| harmonic(n);
        let c = |n: u64| Rational::from_integer(catalan(n));
        let inv = |n: u64| if n == 0 { rat(0) } else { Rational::new(One::one(), n.into()) };
        let (m, j) = (self.m, self.j);
        let n = self.order;
        Ok(match self.name {
            GfName::F => oracle_product(f, |_| rat(1), n),
            GfName::L => oracle_product(l, |_| rat(1), n),
            GfName::U(1) => oracle_product(|k| rat(2) * inv(k) * h(k.saturating_sub(1)), f, n),
            GfName::U(2) => oracle_product(inv, f, n),
            GfName::U(3) => oracle_product(inv, l, n),
            GfName::U(4) => oracle_product(h, |k| f(k + 1), n),
            GfName::U(5) => oracle_product(h, f, n),
            GfName::U(6) => oracle_product(h, |k| f(k + j + 1), n),
            GfName::V(1) => oracle_product(c, |k| f(k + 1), n),
            GfName::V(2) => oracle_product(c, |k| l(k + 1), n),
            GfName::V(3) => oracle_product(c, f, n),
            GfName::V(4) => oracle_product(c, |k| f(k + j + 1), n),
            GfName::QF => oracle_product(|k| f(m * k + j), |_| rat(1), n),
            GfName::QL => oracle_product(|k| l(m * k + j), |_| rat(1), n),
            GfName::HF => oracle_product(h, |k| f(m * k + j), n),
            GfName::CF => oracle_product(c, |k| f(m * k + j), n),
            GfName::HL => oracle_product(h, |k| l(m * k + j), n),
            GfName::CL => oracle_product(c, |k| l(m * k + j), n),
            GfName::U(k) | GfName::V(k) => return Err(Error::UnknownName(format!("index {k}"))),
        })
    }
}

impl fmt::Display for GfSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}", self.name, self.params)?;
        if self.name.is_multisection() {
            write!(f, ", m={}, j={}", self.m, self.j)?;
        } else if self.name.takes_shift() {
            write!(f, ", j={}", self.j)?;
        }
        write!(f, ", N={})", self.order)
    }
}

/// Coefficient list as strings, for error messages.
pub fn describe(s: &Series) -> String {
    let parts: Vec<String> = s.coeffs().iter().map(|c| format!("{c}")).collect();
    parts.join(", ")
}
