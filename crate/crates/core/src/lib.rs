//! Exact arithmetic for generalized Fibonacci and Lucas numbers and their
//! products with Catalan and harmonic numbers.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! - [`numerics`]: rationals, the quadratic extension `Q(√D)`, polynomials in
//!   the indeterminates `a`, `b`, and interval-backed [`numerics::BigFloat`].
//! - [`sequences`]: term computation for `F`, `L`, `H`, `C`, Eulerian rows,
//!   convolutions and multisections.
//! - [`identities`]: exact (rational or symbolic) checks of the addition,
//!   two-fold, Johnson, multiple-angle, shift and convolution identities.
//! - [`series`]: truncated formal power series over an exact field.
//! - [`genfunc`]: closed-form generating functions expanded as series, plus the
//!   termwise product oracle they are compared against.
//! - [`sums`]: certified numerical evaluation of convergent product series.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod genfunc;
pub mod identities;
pub mod numerics;
pub mod sequences;
pub mod series;
pub mod sums;

pub use error::{Error, Result};
pub use numerics::{BigFloat, BivariatePoly, QuadExt, Rational};
pub use sequences::{FibTable, SeqKind, SequenceParams};
pub use series::TruncSeries;
