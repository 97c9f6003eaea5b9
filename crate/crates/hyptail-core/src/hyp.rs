//! The hypergeometric law `H(n, i, k)` and its binomial companion.
//!
//! Parameters follow the sampling story: an urn of `n` items of which `i`
//! are special, a uniform draw of `k` items without replacement, and `H`
//! counting the special items in the draw. The companion binomial `X` draws
//! `k` times with replacement at success probability `i/n`. Everything here
//! is exact rational arithmetic.

use crate::comb::binom;
use crate::dist::{total_variation, DiscreteDist};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::traits::{One, Zero};
use num::BigRational;

/// Validated parameter triple: `1 <= i <= n` and `1 <= k <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HypParams {
    n: u64,
    i: u64,
    k: u64,
}

impl HypParams {
    pub fn new(n: u64, i: u64, k: u64) -> Result<HypParams> {
        if n == 0 || i == 0 || k == 0 || i > n || k > n {
            return Err(Error::InvalidParams(format!(
                "hypergeometric parameters need 1 <= i, k <= n, got n={}, i={}, k={}",
                n, i, k
            )));
        }
        Ok(HypParams { n, i, k })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn i(&self) -> u64 {
        self.i
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `E H = i k / n`.
    pub fn mean(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.i) * BigInt::from(self.k),
            BigInt::from(self.n),
        )
    }

    /// `Var H = k (i/n) (1 - i/n) (n-k)/(n-1)`, taken to be zero when
    /// `n = 1` where the correction factor is undefined.
    pub fn variance(&self) -> BigRational {
        if self.n == 1 {
            return BigRational::zero();
        }
        let n = BigInt::from(self.n);
        let num = BigInt::from(self.k)
            * BigInt::from(self.i)
            * BigInt::from(self.n - self.i)
            * BigInt::from(self.n - self.k);
        let den = &n * &n * BigInt::from(self.n - 1);
        BigRational::new(num, den)
    }

    /// Smallest integer at or above the mean: the canonical tail threshold.
    pub fn m_star(&self) -> u64 {
        let prod = self.i as u128 * self.k as u128;
        u64::try_from(prod.div_ceil(self.n as u128)).unwrap()
    }

    /// Support endpoints `[max(0, k - (n - i)), min(i, k)]`.
    pub fn support(&self) -> (u64, u64) {
        let lo = (self.k + self.i).saturating_sub(self.n);
        (lo, self.i.min(self.k))
    }

    /// Success probability `i/n` of the companion binomial.
    pub fn binom_p(&self) -> BigRational {
        BigRational::new(BigInt::from(self.i), BigInt::from(self.n))
    }
}

/// Integer weights `C(i, j) C(n-i, k-j)` over the support, for the relaxed
/// range `0 <= i, k <= n` (the public constructor demands `i, k >= 1`, but
/// conditioned remainders in identities legitimately hit the edges).
pub(crate) fn hyp_weights(n: u64, i: u64, k: u64) -> (i64, Vec<BigInt>) {
    debug_assert!(i <= n && k <= n);
    let lo = (k + i).saturating_sub(n);
    let hi = i.min(k);
    let mut w = Vec::with_capacity((hi - lo + 1) as usize);
    w.push(binom(i, lo) * binom(n - i, k - lo));
    for j in lo..hi {
        // w(j+1) = w(j) (i-j)(k-j) / ((j+1)(n-i-k+j+1)), exact at each step.
        let num = w.last().unwrap() * BigInt::from(i - j) * BigInt::from(k - j);
        let den = BigInt::from(j + 1) * BigInt::from(n + j + 1 - i - k);
        debug_assert!((&num % &den).is_zero());
        w.push(num / den);
    }
    (i64::try_from(lo).unwrap(), w)
}

/// The law of `H(n, i, k)` as an exact distribution.
pub fn hyp_dist(p: &HypParams) -> DiscreteDist {
    let (lo, w) = hyp_weights(p.n, p.i, p.k);
    DiscreteDist::from_weights(lo, w).expect("hypergeometric weights are valid")
}

/// The binomial law `Bin(k, p)` for rational `p` in `[0, 1]`.
pub fn bin_dist(k: u64, p: &BigRational) -> Result<DiscreteDist> {
    if p < &BigRational::zero() || p > &BigRational::one() {
        return Err(Error::InvalidParams(format!(
            "binomial success probability must lie in [0, 1], got {}",
            crate::rational_to_string(p)
        )));
    }
    let a = p.numer();
    let b = p.denom();
    let c = b - a;
    // Weights C(k, j) a^j (b-a)^(k-j) over denominator b^k; the degenerate
    // ends collapse to point masses.
    if a.is_zero() {
        return Ok(DiscreteDist::point(0));
    }
    if c.is_zero() {
        return Ok(DiscreteDist::point(i64::try_from(k).unwrap()));
    }
    let kk = usize::try_from(k).unwrap();
    let mut apow = Vec::with_capacity(kk + 1);
    let mut cpow = Vec::with_capacity(kk + 1);
    apow.push(BigInt::one());
    cpow.push(BigInt::one());
    for t in 1..=kk {
        let na = &apow[t - 1] * a;
        apow.push(na);
        let nc = &cpow[t - 1] * &c;
        cpow.push(nc);
    }
    let mut coef = BigInt::one();
    let mut w = Vec::with_capacity(kk + 1);
    for j in 0..=kk {
        w.push(&coef * &apow[j] * &cpow[kk - j]);
        if j < kk {
            coef = coef * BigInt::from(k - j as u64) / BigInt::from(j as u64 + 1);
        }
    }
    DiscreteDist::from_weights(0, w)
}

/// Summary statistics of one hypergeometric law, all exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypProfile {
    pub params: HypParams,
    pub mean: BigRational,
    pub variance: BigRational,
    /// `ceil(mean)`, the canonical tail threshold.
    pub m_star: u64,
    /// `P(H >= m_star)`.
    pub tail_at_mean: BigRational,
    /// `E |H - mean|`.
    pub mad: BigRational,
    /// `E[H | H >= m_star]`.
    pub tce_at_mean: BigRational,
    /// Smallest support point with cumulative probability at least 1/2.
    pub median: u64,
}

/// Computes the full profile from one pass over the distribution.
pub fn profile(p: &HypParams) -> HypProfile {
    let d = hyp_dist(p);
    let mean = p.mean();
    let m_star = p.m_star();
    let tail_at_mean = d.tail(&mean);
    let tce_at_mean = d
        .tce(&mean)
        .expect("the mean threshold always leaves tail mass");
    HypProfile {
        params: *p,
        mean: mean.clone(),
        variance: p.variance(),
        m_star,
        tail_at_mean,
        mad: d.mad(&mean),
        tce_at_mean,
        median: u64::try_from(d.median()).unwrap(),
    }
}

/// Closed form for the hypergeometric MAD around its mean:
/// `2 (m/n) (n - i - k + m) P(H = m)` with `m = ceil(mean)`.
pub fn mad_closed_hyp(p: &HypParams) -> BigRational {
    let d = hyp_dist(p);
    let m = p.m_star();
    let factor = BigRational::new(
        BigInt::from(2u32) * BigInt::from(m) * BigInt::from(p.n + m - p.i - p.k),
        BigInt::from(p.n),
    );
    factor * d.mass_at(i64::try_from(m).unwrap())
}

/// Closed form for the binomial MAD around its mean:
/// `2 m (1 - p) P(X = m)` with `m = ceil(k p)`.
pub fn mad_closed_bin(k: u64, p: &BigRational) -> Result<BigRational> {
    let d = bin_dist(k, p)?;
    let mean = BigRational::from(BigInt::from(k)) * p;
    let m = mean.ceil().to_integer();
    let m_i64 = i64::try_from(&m).expect("threshold fits i64");
    let one_minus = BigRational::one() - p;
    Ok(BigRational::from(BigInt::from(2u32) * m) * one_minus * d.mass_at(m_i64))
}

/// Tail probability through the inverse-moment identity
/// `P(H >= m) = [C(k,m) C(i,m) / C(n,m)] E[ 1 / C(Z + m, m) ]`,
/// where `Z` is hypergeometric with parameters `(n-m, i-m, k-m)`.
/// Valid for `1 <= m <= min(i, k)`.
pub fn tail_via_factorial_identity(p: &HypParams, m: u64) -> Result<BigRational> {
    if m < 1 || m > p.i.min(p.k) {
        return Err(Error::InvalidParams(format!(
            "threshold m must satisfy 1 <= m <= min(i, k), got m={} for i={}, k={}",
            m, p.i, p.k
        )));
    }
    let scale = BigRational::new(binom(p.k, m) * binom(p.i, m), binom(p.n, m));
    let (lo, w) = hyp_weights(p.n - m, p.i - m, p.k - m);
    let total: BigInt = w.iter().sum();
    let mut acc = BigRational::zero();
    for (idx, wj) in w.iter().enumerate() {
        if wj.is_zero() {
            continue;
        }
        let z = lo + idx as i64;
        let c = binom(u64::try_from(z).unwrap() + m, m);
        acc += BigRational::new(wj.clone(), &total * c);
    }
    Ok(scale * acc)
}

/// Total variation distance between `H(n, i, k)` and `Bin(k, i/n)`.
pub fn total_variation_vs_binomial(p: &HypParams) -> BigRational {
    let h = hyp_dist(p);
    let x = bin_dist(p.k, &p.binom_p()).expect("i/n lies in [0, 1]");
    total_variation(&h, &x)
}
