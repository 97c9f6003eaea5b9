//! Certified arithmetic for tail probabilities of the hypergeometric
//! distribution.
//!
//! The crate has two halves. The first is a small numeric kernel: exact
//! rationals, arbitrary-precision dyadic floats with directed rounding,
//! intervals built from them, and an expression evaluator that can certify
//! inequalities between an exact rational and an expression involving
//! square roots, exponentials, logarithms and pi. The second half builds on
//! that kernel: exact hypergeometric and binomial distributions, a library
//! of lower and upper bounds on their tails, and stochastic-order checks.
//!
//! Everything that can be decided in exact rational arithmetic is decided
//! that way; intervals only enter when an expression is genuinely
//! irrational, and every interval carries rigorously rounded endpoints.

pub mod bounds;
pub mod comb;
pub mod dist;
pub mod dyadic;
pub mod expr;
pub mod hyp;
pub mod interval;
pub mod orders;
pub mod transcendental;

use num::BigRational;
use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A constructor or operation received parameters outside its domain.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// A conditional expectation was requested above the top of the support.
    #[error("empty tail: no probability mass at or above the threshold")]
    EmptyTail,
    /// A partial function was evaluated outside its mathematical domain
    /// (division by an interval containing zero, sqrt of a negative
    /// enclosure, log of an enclosure reaching zero, and similar).
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Formats a rational as `p/q` (or just `p` when the denominator is one).
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom() == &num::BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
