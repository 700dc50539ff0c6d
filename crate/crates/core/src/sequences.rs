//! Exact terms of the generalized Fibonacci and Lucas families and the
//! companion sequences (harmonic, Catalan, Eulerian) they are multiplied with.
//!
//! `F` is extended to negative indices by running the recurrence backwards,
//! `F(n−2) = (F(n) − a·F(n−1)) / b`. This is what makes `L(0) = F(1) + b·F(−1)`
//! equal to 2, the constant term of `(2 − ax)/(1 − ax − bx²)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{rat, BivariatePoly, Rational};

/// The pair `(a, b)` of `F(n) = a·F(n−1) + b·F(n−2)` with cached `D = a² + 4b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SequenceParams {
    a: Rational,
    b: Rational,
    d: Rational,
}

impl SequenceParams {
    /// Rejects `b = 0` and `a² + 4b = 0`.
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::InvalidParams("b must be nonzero"));
        }
        let d = &a * &a + &b * rat(4);
        if d.is_zero() {
            return Err(Error::InvalidParams("a^2 + 4b must be nonzero"));
        }
        Ok(Self { a, b, d })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(rat(a), rat(b))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The discriminant `a² + 4b`.
    pub fn discriminant(&self) -> &Rational {
        &self.d
    }

    /// Parameters `(L(m), −(−b)^m)` of the stride-`m` multisection `F(mn)/F(m)`.
    pub fn multisection(&self, m: u64) -> Result<SequenceParams> {
        let a2 = lucas(self, m as i64);
        let b2 = -num_traits::pow(-self.b.clone(), m as usize);
        SequenceParams::new(a2, b2).map_err(|e| Error::UnsupportedDerivedParams(format!("stride {m} gives {e}")))
    }
}

impl fmt::Display for SequenceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={}, b={}", self.a, self.b)
    }
}

fn step_forward(p: &SequenceParams, prev: &Rational, prev2: &Rational) -> Rational {
    &p.a * prev + &p.b * prev2
}

fn step_backward(p: &SequenceParams, cur: &Rational, prev: &Rational) -> Rational {
    // F(n−2) from F(n) and F(n−1)
    (cur - &p.a * prev) / &p.b
}

/// `F(n)` for any integer `n` by direct unrolling of the recurrence.
pub fn fib(params: &SequenceParams, n: i64) -> Rational {
    let (mut lo, mut hi) = (Rational::zero(), Rational::one()); // F(0), F(1)
    match n {
        0 => lo,
        1 => hi,
        n if n > 1 => {
            for _ in 1..n {
                let next = step_forward(params, &hi, &lo);
                lo = core::mem::replace(&mut hi, next);
            }
            hi
        }
        n => {
            for _ in 0..n.unsigned_abs() {
                let below = step_backward(params, &hi, &lo);
                hi = core::mem::replace(&mut lo, below);
            }
            lo
        }
    }
}

/// `L(n) = F(n+1) + b·F(n−1)`.
pub fn lucas(params: &SequenceParams, n: i64) -> Rational {
    fib(params, n + 1) + params.b() * fib(params, n - 1)
}

/// `F(n)` by fast doubling: `F(2k) = F(k)·L(k)` and
/// `F(2k+1) = F(k+1)² + b·F(k)²`, in `O(log n)` multiplications.
///
/// The rational parameters are cleared first: with `a = A/d`, `b = B/d`, the
/// integers `G(n) = d^(n−1)·F(n)` satisfy `G(n) = A·G(n−1) + B·d·G(n−2)`.
pub fn fib_fast(params: &SequenceParams, n: u64) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    let d = params.a.denom().lcm(params.b.denom());
    let alpha = (&params.a * Rational::from_integer(d.clone())).to_integer();
    let beta = (&params.b * Rational::from_integer(d.clone())).to_integer() * &d;
    let g = fast_doubling_int(&alpha, &beta, n).0;
    if d.is_one() {
        Rational::from_integer(g)
    } else {
        Rational::new(g, num_traits::pow(d, (n - 1) as usize))
    }
}

/// `(G(n), G(n+1))` for the integer recurrence `G(n) = α·G(n−1) + β·G(n−2)`.
fn fast_doubling_int(alpha: &BigInt, beta: &BigInt, n: u64) -> (BigInt, BigInt) {
    let (mut g0, mut g1) = (BigInt::zero(), BigInt::one());
    for bit in (0..64 - n.leading_zeros()).rev() {
        // G(2k) = G(k)·(2G(k+1) − αG(k)),  G(2k+1) = G(k+1)² + βG(k)²
        let two_k = &g0 * ((&g1 << 1u32) - alpha * &g0);
        let two_k1 = &g1 * &g1 + beta * &g0 * &g0;
        if (n >> bit) & 1 == 1 {
            g1 = alpha * &two_k1 + beta * &two_k;
            g0 = two_k1;
        } else {
            g0 = two_k;
            g1 = two_k1;
        }
    }
    (g0, g1)
}

/// `F(n)` by binary powering of the companion matrix `[[a, b], [1, 0]]`.
/// Shares nothing with the doubling identities, so it cross-checks
/// [`fib_fast`] at large `n`.
pub fn fib_matrix(params: &SequenceParams, n: u64) -> Rational {
    type M = [[Rational; 2]; 2];
    fn mul(x: &M, y: &M) -> M {
        let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }
    let mut acc: M = [[rat(1), rat(0)], [rat(0), rat(1)]];
    let mut base: M = [[params.a.clone(), params.b.clone()], [rat(1), rat(0)]];
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    // M^n = [[F(n+1), b F(n)], [F(n), b F(n−1)]]
    acc[1][0].clone()
}

/// Memoized `F` and `L` for one parameter pair.
///
/// The cache lives in a `RefCell`, so a table is confined to the task that
/// owns it; build one table per thread.
#[derive(Debug)]
pub struct FibTable {
    params: SequenceParams,
    forward: RefCell<Vec<Rational>>,
    backward: RefCell<Vec<Rational>>,
}

impl FibTable {
    pub fn new(params: SequenceParams) -> Self {
        Self {
            params,
            forward: RefCell::new(vec![Rational::zero(), Rational::one()]),
            backward: RefCell::new(vec![Rational::zero()]),
        }
    }

    pub fn params(&self) -> &SequenceParams {
        &self.params
    }

    pub fn fib(&self, n: i64) -> Rational {
        if n >= 0 {
            let idx = n as usize;
            let mut fw = self.forward.borrow_mut();
            while fw.len() <= idx {
                let k = fw.len();
                let next = step_forward(&self.params, &fw[k - 1], &fw[k - 2]);
                fw.push(next);
            }
            fw[idx].clone()
        } else {
            // backward[k] holds F(−k)
            let idx = n.unsigned_abs() as usize;
            let mut bw = self.backward.borrow_mut();
            while bw.len() <= idx {
                let k = bw.len();
                let (cur, prev) = match k {
                    1 => (Rational::one(), Rational::zero()),
                    _ => (bw[k - 2].clone(), bw[k - 1].clone()),
                };
                // F(−k) from F(−k+2), F(−k+1)
                bw.push(step_backward(&self.params, &cur, &prev));
            }
            bw[idx].clone()
        }
    }

    pub fn lucas(&self, n: i64) -> Rational {
        self.fib(n + 1) + self.params.b() * self.fib(n - 1)
    }
}

/// `H(n) = 1 + 1/2 + … + 1/n`, with `H(0) = 0`.
pub fn harmonic(n: u64) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, i| acc + Rational::new(BigInt::one(), BigInt::from(i)))
}

/// `C(n) = binom(2n, n)/(n+1)`.
pub fn catalan(n: u64) -> BigInt {
    num_integer::binomial(BigInt::from(2 * n), BigInt::from(n)) / BigInt::from(n + 1)
}

/// Row `n` of the Eulerian triangle for permutations of `n+1` elements.
/// The row has `n+1` entries and sums to `(n+1)!`.
pub fn eulerian_row(n: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for size in 2..=n + 1 {
        // A(size, k) = (k+1)·A(size−1, k) + (size−k)·A(size−1, k−1)
        let mut next = Vec::with_capacity(size as usize);
        for k in 0..size as usize {
            let keep = row.get(k).map(|v| v * BigInt::from(k + 1)).unwrap_or_default();
            let grow = if k > 0 { &row[k - 1] * BigInt::from(size as usize - k) } else { BigInt::zero() };
            next.push(keep + grow);
        }
        row = next;
    }
    row
}

/// `E₁(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn eulerian_first(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    eulerian_row(n).swap_remove(k as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvolutionMode {
    /// `Σ F(i)F(n−i)` term by term.
    Direct,
    /// `((n−1)F(n+1) + b(n+1)F(n−1)) / (a² + 4b)`.
    Closed,
}

pub fn fib_convolution(params: &SequenceParams, n: u64, mode: ConvolutionMode) -> Rational {
    let n = n as i64;
    match mode {
        ConvolutionMode::Direct => (0..=n).map(|i| fib(params, i) * fib(params, n - i)).sum(),
        ConvolutionMode::Closed => {
            (rat(n - 1) * fib(params, n + 1) + params.b() * rat(n + 1) * fib(params, n - 1)) / params.discriminant()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FibOrLucas {
    Fib,
    Lucas,
}

impl FromStr for FibOrLucas {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fib" | "F" => Ok(Self::Fib),
            "lucas" | "L" => Ok(Self::Lucas),
            _ => Err(Error::UnknownName(s.into())),
        }
    }
}

/// `F(m·n + j)` or `L(m·n + j)`.
pub fn multisection_term(params: &SequenceParams, m: u64, j: u64, n: u64, kind: FibOrLucas) -> Rational {
    let idx = (m * n + j) as i64;
    match kind {
        FibOrLucas::Fib => fib(params, idx),
        FibOrLucas::Lucas => lucas(params, idx),
    }
}

/// `F(n)` as a polynomial in the indeterminates `a` and `b`.
pub fn fib_symbolic(n: u64) -> BivariatePoly {
    SymbolicTable::new().fib(n)
}

/// `L(n) = 2F(n+1) − a·F(n)` as a polynomial; this form stays inside `Z[a, b]`
/// at `n = 0`, where `F(n+1) + b·F(n−1)` would need `F(−1) = 1/b`.
pub fn lucas_symbolic(n: u64) -> BivariatePoly {
    SymbolicTable::new().lucas(n)
}

/// Memoized symbolic `F(n)` for `n ≥ 0`.
#[derive(Debug)]
pub struct SymbolicTable {
    forward: RefCell<Vec<BivariatePoly>>,
}

impl Default for SymbolicTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SymbolicTable {
    pub fn new() -> Self {
        Self { forward: RefCell::new(vec![BivariatePoly::zero(), BivariatePoly::constant(1)]) }
    }

    pub fn fib(&self, n: u64) -> BivariatePoly {
        let mut fw = self.forward.borrow_mut();
        let (a, b) = (BivariatePoly::a(), BivariatePoly::b());
        while fw.len() as u64 <= n {
            let k = fw.len();
            let next = &(&a * &fw[k - 1]) + &(&b * &fw[k - 2]);
            fw.push(next);
        }
        fw[n as usize].clone()
    }

    pub fn lucas(&self, n: u64) -> BivariatePoly {
        let two_next = &self.fib(n + 1) * &BivariatePoly::constant(2);
        &two_next - &(&BivariatePoly::a() * &self.fib(n))
    }
}

/// Handle on every sequence the command line and the series evaluator can
/// enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeqKind {
    GenFib,
    GenLucas,
    Harmonic,
    Catalan,
    /// `Σ F(i)F(n−i)`.
    Convolution,
    MultisectionFib {
        m: u64,
        j: u64,
    },
    MultisectionLucas {
        m: u64,
        j: u64,
    },
    /// `H(n)·F(n + shift)`.
    ProductHF {
        shift: u64,
    },
    /// `C(n)·F(n + shift)`.
    ProductCF {
        shift: u64,
    },
    /// `H(n)·L(n + shift)`.
    ProductHL {
        shift: u64,
    },
    /// `C(n)·L(n + shift)`.
    ProductCL {
        shift: u64,
    },
}

impl SeqKind {
    pub fn needs_params(&self) -> bool {
        !matches!(self, SeqKind::Harmonic | SeqKind::Catalan)
    }

    /// Term `n`. Negative `n` is accepted only by `GenFib` and `GenLucas`.
    pub fn term(&self, params: Option<&SequenceParams>, n: i64) -> Result<Rational> {
        let p = match (self.needs_params(), params) {
            (true, None) => return Err(Error::InvalidParams("this sequence needs a and b")),
            (_, p) => p,
        };
        let nn = || -> Result<u64> {
            u64::try_from(n).map_err(|_| Error::Precondition(format!("index {n} must be nonnegative")))
        };
        Ok(match *self {
            SeqKind::GenFib => fib(p.unwrap(), n),
            SeqKind::GenLucas => lucas(p.unwrap(), n),
            SeqKind::Harmonic => harmonic(nn()?),
            SeqKind::Catalan => Rational::from_integer(catalan(nn()?)),
            SeqKind::Convolution => fib_convolution(p.unwrap(), nn()?, ConvolutionMode::Direct),
            SeqKind::MultisectionFib { m, j } => multisection_term(p.unwrap(), m, j, nn()?, FibOrLucas::Fib),
            SeqKind::MultisectionLucas { m, j } => multisection_term(p.unwrap(), m, j, nn()?, FibOrLucas::Lucas),
            SeqKind::ProductHF { shift } => harmonic(nn()?) * fib(p.unwrap(), n + shift as i64),
            SeqKind::ProductCF { shift } => Rational::from_integer(catalan(nn()?)) * fib(p.unwrap(), n + shift as i64),
            SeqKind::ProductHL { shift } => harmonic(nn()?) * lucas(p.unwrap(), n + shift as i64),
            SeqKind::ProductCL { shift } => {
                Rational::from_integer(catalan(nn()?)) * lucas(p.unwrap(), n + shift as i64)
            }
        })
    }
}

impl fmt::Display for SeqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqKind::GenFib => f.write_str("fib"),
            SeqKind::GenLucas => f.write_str("lucas"),
            SeqKind::Harmonic => f.write_str("harmonic"),
            SeqKind::Catalan => f.write_str("catalan"),
            SeqKind::Convolution => f.write_str("convolution"),
            SeqKind::MultisectionFib { m, j } => write!(f, "msec-fib:{m}:{j}"),
            SeqKind::MultisectionLucas { m, j } => write!(f, "msec-lucas:{m}:{j}"),
            SeqKind::ProductHF { shift } => write!(f, "hf:{shift}"),
            SeqKind::ProductCF { shift } => write!(f, "cf:{shift}"),
            SeqKind::ProductHL { shift } => write!(f, "hl:{shift}"),
            SeqKind::ProductCL { shift } => write!(f, "cl:{shift}"),
        }
    }
}

impl FromStr for SeqKind {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) spellings; a product without a
    /// shift (`hf`) means shift 0.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let head = parts.next().unwrap_or_default();
        let nums: Vec<u64> =
            parts.map(|p| p.parse::<u64>().map_err(|_| Error::UnknownName(String::from(s)))).collect::<Result<_>>()?;
        let unknown = || Error::UnknownName(String::from(s));
        let shift = || match nums.as_slice() {
            [] => Ok(0),
            [k] => Ok(*k),
            _ => Err(unknown()),
        };
        let stride = || match nums.as_slice() {
            [m, j] if *m >= 1 => Ok((*m, *j)),
            _ => Err(unknown()),
        };
        let plain = |k: SeqKind| if nums.is_empty() { Ok(k) } else { Err(unknown()) };
        match head {
            "fib" | "F" => plain(SeqKind::GenFib),
            "lucas" | "L" => plain(SeqKind::GenLucas),
            "harmonic" | "H" => plain(SeqKind::Harmonic),
            "catalan" | "C" => plain(SeqKind::Catalan),
            "convolution" => plain(SeqKind::Convolution),
            "msec-fib" => stride().map(|(m, j)| SeqKind::MultisectionFib { m, j }),
            "msec-lucas" => stride().map(|(m, j)| SeqKind::MultisectionLucas { m, j }),
            "hf" => shift().map(|shift| SeqKind::ProductHF { shift }),
            "cf" => shift().map(|shift| SeqKind::ProductCF { shift }),
            "hl" => shift().map(|shift| SeqKind::ProductHL { shift }),
            "cl" => shift().map(|shift| SeqKind::ProductCL { shift }),
            _ => Err(unknown()),
        }
    }
}
