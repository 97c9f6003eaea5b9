//! Exact binomial coefficients and factorials.

use num::bigint::BigInt;
use num::traits::{One, Zero};

/// Binomial coefficient `C(n, k)` as an exact integer.
///
/// Returns zero when `k > n`, matching the combinatorial convention.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    // C(n, k) = C(n, n - k); iterate over the smaller index.
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(n - j);
        // Exact at every step: the running product is C(n, j + 1) * (j + 1)!
        // divided so far, and j + 1 consecutive integers always contain a
        // multiple of each divisor.
        acc /= BigInt::from(j + 1);
    }
    acc
}

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}
