//! Exact checks of the generalized Fibonacci/Lucas identities.
//!
//! Every check is generic over a [`TermSource`]: [`FibTable`] evaluates at a
//! concrete rational `(a, b)`, [`SymbolicTable`] works in `Z[a, b]` so a
//! passing symbolic instance holds for every `a` and `b` at once.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Debug, Display};
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{rat, BivariatePoly, Rational};
use crate::sequences::{catalan, eulerian_row, FibTable, SymbolicTable};

/// Where identity checks get their `F`, `L` and `b` values from.
pub trait TermSource {
    type Value: Clone
        + PartialEq
        + Debug
        + Display
        + Add<Output = Self::Value>
        + Sub<Output = Self::Value>
        + Mul<Output = Self::Value>
        + Neg<Output = Self::Value>;

    fn fib(&self, n: i64) -> Result<Self::Value>;
    fn lucas(&self, n: i64) -> Result<Self::Value>;
    fn b(&self) -> Self::Value;
    fn int(&self, k: i64) -> Self::Value;
    /// `(−b)^r`; symbolic sources reject `r < 0`.
    fn neg_b_pow(&self, r: i64) -> Result<Self::Value>;
}

impl TermSource for FibTable {
    type Value = Rational;

    fn fib(&self, n: i64) -> Result<Rational> {
        Ok(FibTable::fib(self, n))
    }

    fn lucas(&self, n: i64) -> Result<Rational> {
        Ok(FibTable::lucas(self, n))
    }

    fn b(&self) -> Rational {
        self.params().b().clone()
    }

    fn int(&self, k: i64) -> Rational {
        rat(k)
    }

    fn neg_b_pow(&self, r: i64) -> Result<Rational> {
        Ok(crate::numerics::rat_pow(&-self.params().b().clone(), r))
    }
}

impl TermSource for SymbolicTable {
    type Value = BivariatePoly;

    fn fib(&self, n: i64) -> Result<BivariatePoly> {
        let n = u64::try_from(n).map_err(|_| Error::UnsupportedInstance(format!("F({n}) is not a polynomial")))?;
        Ok(SymbolicTable::fib(self, n))
    }

    fn lucas(&self, n: i64) -> Result<BivariatePoly> {
        let n = u64::try_from(n).map_err(|_| Error::UnsupportedInstance(format!("L({n}) is not a polynomial")))?;
        Ok(SymbolicTable::lucas(self, n))
    }

    fn b(&self) -> BivariatePoly {
        BivariatePoly::b()
    }

    fn int(&self, k: i64) -> BivariatePoly {
        BivariatePoly::constant(k)
    }

    fn neg_b_pow(&self, r: i64) -> Result<BivariatePoly> {
        let r = u32::try_from(r).map_err(|_| Error::UnsupportedInstance(format!("(−b)^{r} is not a polynomial")))?;
        Ok((-BivariatePoly::b()).pow(r))
    }
}

/// Both exact sides of one identity instance.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport<T = Rational> {
    name: String,
    instance: Vec<(String, Rational)>,
    lhs: T,
    rhs: T,
    pass: bool,
    companion: Option<Box<IdentityReport<T>>>,
}

impl<T: PartialEq> IdentityReport<T> {
    pub fn new(name: impl Into<String>, instance: Vec<(String, Rational)>, lhs: T, rhs: T) -> Self {
        let pass = lhs == rhs;
        Self { name: name.into(), instance, lhs, rhs, pass, companion: None }
    }

    fn with_companion(mut self, c: IdentityReport<T>) -> Self {
        self.companion = Some(Box::new(c));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn instance(&self) -> &[(String, Rational)] {
        &self.instance
    }

    pub fn lhs(&self) -> &T {
        &self.lhs
    }

    pub fn rhs(&self) -> &T {
        &self.rhs
    }

    /// A second identity checked on the same instance (the doubling law for
    /// `check_two_fold` with `n = m`).
    pub fn companion(&self) -> Option<&IdentityReport<T>> {
        self.companion.as_deref()
    }

    /// This instance and its companion both hold.
    pub fn passed(&self) -> bool {
        self.pass && self.companion.as_ref().is_none_or(|c| c.passed())
    }
}

impl<T: Display + PartialEq> Display for IdentityReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inst: Vec<String> = self.instance.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{} [{}]: lhs = {}, rhs = {} => {}",
            self.name,
            inst.join(", "),
            self.lhs,
            self.rhs,
            if self.pass { "pass" } else { "FAIL" }
        )?;
        if let Some(c) = &self.companion {
            write!(f, "; {c}")?;
        }
        Ok(())
    }
}

fn inst(pairs: &[(&str, i64)]) -> Vec<(String, Rational)> {
    pairs.iter().map(|(k, v)| (k.to_string(), rat(*v))).collect()
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what()))
    }
}

/// `F(n+m) = b·F(n−1)F(m) + F(n)F(m+1)`.
pub fn check_addition<S: TermSource>(src: &S, n: i64, m: i64) -> Result<IdentityReport<S::Value>> {
    require(n >= 1 && m >= 1, || format!("addition needs n, m >= 1 (got n={n}, m={m})"))?;
    let lhs = src.fib(n + m)?;
    let rhs = src.b() * src.fib(n - 1)? * src.fib(m)? + src.fib(n)? * src.fib(m + 1)?;
    Ok(IdentityReport::new("addition", inst(&[("n", n), ("m", m)]), lhs, rhs))
}

/// `F(2n) = F(n)·L(n)`.
pub fn check_doubling<S: TermSource>(src: &S, n: i64) -> Result<IdentityReport<S::Value>> {
    require(n >= 1, || format!("doubling needs n >= 1 (got {n})"))?;
    let lhs = src.fib(2 * n)?;
    let rhs = src.fib(n)? * src.lucas(n)?;
    Ok(IdentityReport::new("doubling", inst(&[("n", n)]), lhs, rhs))
}

/// `2F(n+m) = F(m)L(n) + L(m)F(n)`, plus the doubling law when `n = m`.
pub fn check_two_fold<S: TermSource>(src: &S, n: i64, m: i64) -> Result<IdentityReport<S::Value>> {
    require(n >= 1 && m >= 1, || format!("two-fold needs n, m >= 1 (got n={n}, m={m})"))?;
    let lhs = src.int(2) * src.fib(n + m)?;
    let rhs = src.fib(m)? * src.lucas(n)? + src.lucas(m)? * src.fib(n)?;
    let report = IdentityReport::new("two-fold", inst(&[("n", n), ("m", m)]), lhs, rhs);
    if n == m {
        Ok(report.with_companion(check_doubling(src, n)?))
    } else {
        Ok(report)
    }
}

/// `F(p)F(q) − F(c)F(d) = (−b)^r (F(p−r)F(q−r) − F(c−r)F(d−r))` for
/// `p + q = c + d`.
pub fn check_johnson<S: TermSource>(
    src: &S,
    p: i64,
    q: i64,
    c: i64,
    d: i64,
    r: i64,
) -> Result<IdentityReport<S::Value>> {
    if p + q != c + d {
        return Err(Error::ConstraintViolation(format!("p+q = {} but c+d = {}", p + q, c + d)));
    }
    require(p >= 1 && q >= 1 && c >= 1 && d >= 1, || "Johnson needs p, q, c, d >= 1".into())?;
    require([p, q, c, d].iter().all(|&x| x - r >= 0), || format!("Johnson needs every shifted index >= 0 (r={r})"))?;
    let lhs = src.fib(p)? * src.fib(q)? - src.fib(c)? * src.fib(d)?;
    let inner = src.fib(p - r)? * src.fib(q - r)? - src.fib(c - r)? * src.fib(d - r)?;
    let rhs = src.neg_b_pow(r)? * inner;
    Ok(IdentityReport::new("johnson", inst(&[("p", p), ("q", q), ("c", c), ("d", d), ("r", r)]), lhs, rhs))
}

/// `F(mn+j) = L(m)F(m(n−1)+j) − (−b)^m F(m(n−2)+j)`.
pub fn check_multiple_angle<S: TermSource>(src: &S, m: i64, n: i64, j: i64) -> Result<IdentityReport<S::Value>> {
    require(m >= 1 && n >= 2 && j >= 0, || format!("multiple-angle needs m >= 1, n >= 2, j >= 0 (got {m}, {n}, {j})"))?;
    let lhs = src.fib(m * n + j)?;
    let rhs = src.lucas(m)? * src.fib(m * (n - 1) + j)? - src.neg_b_pow(m)? * src.fib(m * (n - 2) + j)?;
    Ok(IdentityReport::new("multiple-angle", inst(&[("m", m), ("n", n), ("j", j)]), lhs, rhs))
}

/// `F(n+j)F(m) − F(j)F(n+m) = (−1)^j b^j F(n)F(m−j)`.
pub fn check_shift<S: TermSource>(src: &S, n: i64, m: i64, j: i64) -> Result<IdentityReport<S::Value>> {
    require(n >= 1 && m >= 1 && (0..=m).contains(&j), || {
        format!("shift needs n, m >= 1 and 0 <= j <= m (got n={n}, m={m}, j={j})")
    })?;
    let lhs = src.fib(n + j)? * src.fib(m)? - src.fib(j)? * src.fib(n + m)?;
    let rhs = src.neg_b_pow(j)? * src.fib(n)? * src.fib(m - j)?;
    Ok(IdentityReport::new("shift", inst(&[("n", n), ("m", m), ("j", j)]), lhs, rhs))
}

/// The convolution identity
/// `p(n)·F(kn+2m) = Σ r(i)L(ki+m) r(n−i)F(k(n−i)+m)` with `p(n) = Σ r(i)r(n−i)`.
pub fn check_master<S: TermSource>(
    src: &S,
    r: impl Fn(u64) -> S::Value,
    k: i64,
    m: i64,
    n: i64,
) -> Result<IdentityReport<S::Value>> {
    require(k >= 0 && m >= 0 && n >= 0, || format!("master needs k, m, n >= 0 (got {k}, {m}, {n})"))?;
    let weights: Vec<S::Value> = (0..=n as u64).map(&r).collect();
    let mut p = src.int(0);
    let mut rhs = src.int(0);
    for i in 0..=n {
        let (wi, wj) = (&weights[i as usize], &weights[(n - i) as usize]);
        p = p + wi.clone() * wj.clone();
        rhs = rhs + wi.clone() * src.lucas(k * i + m)? * wj.clone() * src.fib(k * (n - i) + m)?;
    }
    let lhs = p * src.fib(k * n + 2 * m)?;
    Ok(IdentityReport::new("master", inst(&[("k", k), ("m", m), ("n", n)]), lhs, rhs))
}

/// Named weight sequences for [`check_master`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MasterWeight {
    /// `r(n) = 1`.
    One,
    /// `r(n) = F(n)`.
    Fib,
    /// `r(n) = C(n)`.
    Catalan,
    /// `r(n) = 1/n` for `n ≥ 1`, `r(0) = 0`; then `p(n) = 2H(n−1)/n`.
    Reciprocal,
}

impl MasterWeight {
    pub fn weight(&self, table: &FibTable, n: u64) -> Rational {
        match self {
            MasterWeight::One => rat(1),
            MasterWeight::Fib => table.fib(n as i64),
            MasterWeight::Catalan => Rational::from_integer(catalan(n)),
            MasterWeight::Reciprocal if n == 0 => rat(0),
            MasterWeight::Reciprocal => Rational::new(BigInt::one(), BigInt::from(n)),
        }
    }
}

impl FromStr for MasterWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one" | "1" => Ok(Self::One),
            "fib" | "F" => Ok(Self::Fib),
            "catalan" | "C" => Ok(Self::Catalan),
            "reciprocal" | "harmonic" => Ok(Self::Reciprocal),
            _ => Err(Error::UnknownName(s.into())),
        }
    }
}

/// A number triangle with `t(n, k) = t(n, n−k)`, verified when built.
#[derive(Clone)]
pub struct SymmetricTriangle {
    name: String,
    rows: u64,
    entry: fn(u64, u64) -> Rational,
}

impl Debug for SymmetricTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymmetricTriangle").field("name", &self.name).field("rows", &self.rows).finish()
    }
}

impl SymmetricTriangle {
    /// Registers a triangle with rows `0..=rows`, rejecting it if any stored
    /// row is not symmetric.
    pub fn new(name: impl Into<String>, rows: u64, entry: fn(u64, u64) -> Rational) -> Result<Self> {
        let name = name.into();
        for n in 0..=rows {
            for k in 0..=n / 2 {
                if entry(n, k) != entry(n, n - k) {
                    return Err(Error::Precondition(format!("triangle `{name}` is not symmetric in row {n}")));
                }
            }
        }
        Ok(Self { name, rows, entry })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rows(&self) -> u64 {
        self.rows
    }

    pub fn entry(&self, n: u64, k: u64) -> Result<Rational> {
        if n > self.rows {
            return Err(Error::Range { name: self.name.clone(), row: n });
        }
        Ok(if k > n { Rational::zero() } else { (self.entry)(n, k) })
    }

    pub fn pascal(rows: u64) -> Self {
        Self::new("pascal", rows, |n, k| {
            Rational::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
        })
        .expect("Pascal's triangle is symmetric")
    }

    /// Entries `binom(n, k)²`; row sums are `binom(2n, n)`.
    pub fn central_binomial_squared(rows: u64) -> Self {
        Self::new("central-binomial-squared", rows, |n, k| {
            let c = num_integer::binomial(BigInt::from(n), BigInt::from(k));
            Rational::from_integer(&c * &c)
        })
        .expect("squared binomials are symmetric")
    }

    /// Eulerian numbers with row sums `(n+1)!`.
    pub fn eulerian(rows: u64) -> Self {
        Self::new("eulerian", rows, |n, k| Rational::from_integer(eulerian_row(n).swap_remove(k as usize)))
            .expect("Eulerian rows are symmetric")
    }
}

/// `(Σ t(n,i))·F(kn+2m) = Σ t(n,i)·F(ki+m)·L(k(n−i)+m)`.
pub fn check_triangle(table: &FibTable, t: &SymmetricTriangle, k: i64, m: i64, n: i64) -> Result<IdentityReport> {
    require(k >= 0 && m >= 0 && n >= 0, || format!("triangle identity needs k, m, n >= 0 (got {k}, {m}, {n})"))?;
    let row: Vec<Rational> = (0..=n as u64).map(|i| t.entry(n as u64, i)).collect::<Result<_>>()?;
    let total: Rational = row.iter().sum();
    let lhs = total * table.fib(k * n + 2 * m);
    let rhs = (0..=n).map(|i| &row[i as usize] * table.fib(k * i + m) * table.lucas(k * (n - i) + m)).sum();
    let name = format!("triangle:{}", t.name());
    Ok(IdentityReport::new(name, inst(&[("k", k), ("m", m), ("n", n)]), lhs, rhs))
}

/// The five closed identity families (plus the doubling special case) that
/// take only integer instance arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityFamily {
    Addition,
    TwoFold,
    Doubling,
    Johnson,
    MultipleAngle,
    Shift,
}

impl IdentityFamily {
    pub const ALL: [IdentityFamily; 6] = [
        IdentityFamily::Addition,
        IdentityFamily::TwoFold,
        IdentityFamily::Doubling,
        IdentityFamily::Johnson,
        IdentityFamily::MultipleAngle,
        IdentityFamily::Shift,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityFamily::Addition => "addition",
            IdentityFamily::TwoFold => "two-fold",
            IdentityFamily::Doubling => "doubling",
            IdentityFamily::Johnson => "johnson",
            IdentityFamily::MultipleAngle => "multiple-angle",
            IdentityFamily::Shift => "shift",
        }
    }

    /// Argument names in the order [`check_family`] expects them.
    pub fn arguments(&self) -> &'static [&'static str] {
        match self {
            IdentityFamily::Addition | IdentityFamily::TwoFold => &["n", "m"],
            IdentityFamily::Doubling => &["n"],
            IdentityFamily::Johnson => &["p", "q", "c", "d", "r"],
            IdentityFamily::MultipleAngle => &["m", "n", "j"],
            IdentityFamily::Shift => &["n", "m", "j"],
        }
    }

    /// Every valid instance whose arguments are all at most `max_arg`.
    pub fn instances(&self, max_arg: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let r1 = 1..=max_arg;
        match self {
            IdentityFamily::Addition | IdentityFamily::TwoFold => {
                for n in r1.clone() {
                    for m in r1.clone() {
                        out.push(vec![n, m]);
                    }
                }
            }
            IdentityFamily::Doubling => out.extend(r1.map(|n| vec![n])),
            IdentityFamily::Johnson => {
                for p in r1.clone() {
                    for q in r1.clone() {
                        for c in r1.clone() {
                            let d = p + q - c;
                            if !(1..=max_arg).contains(&d) {
                                continue;
                            }
                            let lowest = p.min(q).min(c).min(d);
                            for r in 0..=lowest {
                                out.push(vec![p, q, c, d, r]);
                            }
                        }
                    }
                }
            }
            IdentityFamily::MultipleAngle => {
                for m in r1.clone() {
                    for n in 2..=max_arg {
                        for j in 0..=max_arg {
                            out.push(vec![m, n, j]);
                        }
                    }
                }
            }
            IdentityFamily::Shift => {
                for n in r1.clone() {
                    for m in r1.clone() {
                        for j in 0..=m {
                            out.push(vec![n, m, j]);
                        }
                    }
                }
            }
        }
        out
    }
}

impl Display for IdentityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::UnknownName(s.into()))
    }
}

/// Runs `family` on the instance `args` (ordered as in
/// [`IdentityFamily::arguments`]).
pub fn check_family<S: TermSource>(src: &S, family: IdentityFamily, args: &[i64]) -> Result<IdentityReport<S::Value>> {
    let want = family.arguments().len();
    if args.len() != want {
        return Err(Error::Precondition(format!("{family} takes {want} arguments, got {}", args.len())));
    }
    match family {
        IdentityFamily::Addition => check_addition(src, args[0], args[1]),
        IdentityFamily::TwoFold => check_two_fold(src, args[0], args[1]),
        IdentityFamily::Doubling => check_doubling(src, args[0]),
        IdentityFamily::Johnson => check_johnson(src, args[0], args[1], args[2], args[3], args[4]),
        IdentityFamily::MultipleAngle => check_multiple_angle(src, args[0], args[1], args[2]),
        IdentityFamily::Shift => check_shift(src, args[0], args[1], args[2]),
    }
}

/// [`check_family`] over `Z[a, b]`.
pub fn check_symbolic(family: IdentityFamily, args: &[i64]) -> Result<IdentityReport<BivariatePoly>> {
    check_family(&SymbolicTable::new(), family, args)
}
