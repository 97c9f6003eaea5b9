//! Rigorous enclosures of pi, e^x and ln(x) at rational arguments.
//!
//! Each function evaluates an exact rational partial sum of a classical
//! series, bounds the truncation error explicitly, and returns an interval
//! that is guaranteed to contain the true value. Results are memoized per
//! (argument, precision): the bound library evaluates a handful of
//! constants like e^(-1/8) at the same precision over an entire parameter
//! sweep.

use crate::comb::factorial;
use crate::dyadic::{Dyadic, Round};
use crate::interval::Interval;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::BigRational;
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

struct Caches {
    pi: HashMap<u32, Interval>,
    e: HashMap<u32, Interval>,
    ln2: HashMap<u32, Interval>,
    exp: HashMap<(BigRational, u32), Interval>,
}

fn caches() -> &'static RwLock<Caches> {
    static CACHES: OnceLock<RwLock<Caches>> = OnceLock::new();
    CACHES.get_or_init(|| {
        RwLock::new(Caches {
            pi: HashMap::new(),
            e: HashMap::new(),
            ln2: HashMap::new(),
            exp: HashMap::new(),
        })
    })
}

/// Largest exponent magnitude accepted by `exp_rational`. e^x for |x| up to
/// a million is representable here (the exponent field is unbounded), but a
/// cap keeps accidental astronomical arguments from hanging the process.
const MAX_EXP_ARG: i64 = 1 << 20;

/// Taylor enclosure of e^f for rational f in [0, 1].
///
/// The partial sum is accumulated in integers over the common denominator
/// N! * q^N, so no intermediate gcd work happens; the truncation error is
/// at most 2/(N+1)! because consecutive term ratios are below 1/2.
fn taylor_exp_01(f: &BigRational, w: u32) -> Interval {
    debug_assert!(!f.is_negative() && *f <= BigRational::one());
    if f.is_zero() {
        return Interval::exact_dyadic(Dyadic::one(), w);
    }
    // Smallest N with (N+1)! >= 2^(w+3).
    let mut n: u64 = 1;
    let mut fact = BigInt::from(2); // (n+1)! for n = 1
    while fact.bits() <= w as u64 + 3 {
        n += 1;
        fact *= BigInt::from(n + 1);
    }
    let p = f.numer();
    let q = f.denom();
    let mut qpow = Vec::with_capacity(n as usize + 1);
    qpow.push(BigInt::one());
    for t in 1..=n as usize {
        let next = &qpow[t - 1] * q;
        qpow.push(next);
    }
    let n_fact = factorial(n);
    let mut b = n_fact.clone(); // N!/j! for the current j
    let mut ppow = BigInt::one();
    let mut acc = BigInt::zero();
    for j in 0..=n {
        acc += &b * &ppow * &qpow[(n - j) as usize];
        if j < n {
            b /= BigInt::from(j + 1);
            ppow *= p;
        }
    }
    let denom = n_fact * &qpow[n as usize];
    let sum = BigRational::new(acc, denom);
    let lo = Dyadic::from_rational(&sum, w, Round::Floor);
    let tail = Dyadic::pow2(-(w as i64 + 2));
    let hi = Dyadic::from_rational(&sum, w, Round::Ceil).add(&tail, w + 4, Round::Ceil);
    Interval::from_endpoints(lo, hi, w)
}

/// Enclosure of e itself.
pub fn e_enclosure(w: u32) -> Interval {
    if let Some(hit) = caches().read().unwrap().e.get(&w) {
        return hit.clone();
    }
    let v = taylor_exp_01(&BigRational::one(), w);
    caches().write().unwrap().e.insert(w, v.clone());
    v
}

/// Enclosure of e^q for an arbitrary rational q, split as q = z + f with
/// integer z and f in [0, 1).
pub fn exp_rational(q: &BigRational, w: u32) -> Result<Interval> {
    let key = (q.clone(), w);
    if let Some(hit) = caches().read().unwrap().exp.get(&key) {
        return Ok(hit.clone());
    }
    let zq = q.floor();
    let z = zq.to_integer().to_i64().filter(|z| z.abs() <= MAX_EXP_ARG).ok_or_else(|| {
        Error::Domain(format!("exp argument out of supported range: {}", q))
    })?;
    let f = q - zq;
    let core = taylor_exp_01(&f, w);
    let value = if z == 0 {
        core
    } else {
        let e = e_enclosure(w);
        let pw = e.pow_u64(z.unsigned_abs(), w);
        if z > 0 {
            core.mul(&pw, w)
        } else {
            // pw encloses a strictly positive value, so division succeeds.
            core.div(&pw, w)?
        }
    };
    caches().write().unwrap().exp.insert(key, value.clone());
    Ok(value)
}

/// Enclosure of arctan(1/x) for integer x >= 2, by the alternating series.
fn atan_inv(x: u64, w: u32) -> Interval {
    let xb = BigInt::from(x);
    let x2 = &xb * &xb;
    let threshold = BigRational::new(BigInt::one(), BigInt::one() << (w as u64 + 4));
    let mut sum = BigRational::zero();
    let mut xpow = xb.clone(); // x^(2j+1)
    let mut j: u64 = 0;
    loop {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * j + 1) * &xpow);
        if term < threshold {
            // `term` also bounds the truncation error of the alternating sum.
            let err = Dyadic::from_rational(&term, w, Round::Ceil);
            let lo = Dyadic::from_rational(&sum, w, Round::Floor).sub(&err, w + 4, Round::Floor);
            let hi = Dyadic::from_rational(&sum, w, Round::Ceil).add(&err, w + 4, Round::Ceil);
            return Interval::from_endpoints(lo, hi, w);
        }
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        xpow *= &x2;
        j += 1;
    }
}

/// Enclosure of pi via Machin's formula 16 atan(1/5) - 4 atan(1/239).
pub fn pi(w: u32) -> Interval {
    if let Some(hit) = caches().read().unwrap().pi.get(&w) {
        return hit.clone();
    }
    let a = atan_inv(5, w + 8);
    let b = atan_inv(239, w + 8);
    let sixteen = Interval::exact_dyadic(Dyadic::from_i64(16), w + 8);
    let four = Interval::exact_dyadic(Dyadic::from_i64(4), w + 8);
    let v = a.mul(&sixteen, w + 8).sub(&b.mul(&four, w + 8), w);
    caches().write().unwrap().pi.insert(w, v.clone());
    v
}

/// Enclosure of atanh(u) = sum u^(2j+1)/(2j+1) for rational u in [0, 1/2].
fn atanh_series(u: &BigRational, w: u32) -> Interval {
    debug_assert!(!u.is_negative() && *u <= BigRational::new(BigInt::one(), BigInt::from(2)));
    if u.is_zero() {
        return Interval::exact_dyadic(Dyadic::zero(), w);
    }
    let u2 = u * u;
    // Tail from term N+1 on is bounded by u^(2N+3) / (1 - u^2) <= (4/3) u^(2N+3).
    let threshold = BigRational::new(BigInt::from(3), BigInt::from(4) * (BigInt::one() << (w as u64 + 3)));
    let mut sum = BigRational::zero();
    let mut upow = u.clone(); // u^(2j+1)
    let mut j: u64 = 0;
    loop {
        if upow < threshold {
            let err_q = &upow * BigRational::new(BigInt::from(4), BigInt::from(3));
            let err = Dyadic::from_rational(&err_q, w, Round::Ceil);
            let lo = Dyadic::from_rational(&sum, w, Round::Floor);
            let hi = Dyadic::from_rational(&sum, w, Round::Ceil).add(&err, w + 4, Round::Ceil);
            return Interval::from_endpoints(lo, hi, w);
        }
        sum += BigRational::new(upow.numer().clone(), upow.denom() * BigInt::from(2 * j + 1));
        upow *= &u2;
        j += 1;
    }
}

/// Enclosure of ln 2 = 2 atanh(1/3).
pub fn ln2(w: u32) -> Interval {
    if let Some(hit) = caches().read().unwrap().ln2.get(&w) {
        return hit.clone();
    }
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let two = Interval::exact_dyadic(Dyadic::from_i64(2), w + 4);
    let v = atanh_series(&third, w + 4).mul(&two, w);
    caches().write().unwrap().ln2.insert(w, v.clone());
    v
}

/// Enclosure of ln(q) for a positive rational q.
///
/// Reduces q = m * 2^t with m in [1, 2), then ln(m) = 2 atanh((m-1)/(m+1))
/// with argument in [0, 1/3].
pub fn ln_rational(q: &BigRational, w: u32) -> Result<Interval> {
    if !q.is_positive() {
        return Err(Error::Domain(format!("ln of a non-positive rational: {}", q)));
    }
    if q.is_one() {
        return Ok(Interval::exact_dyadic(Dyadic::zero(), w));
    }
    let mut t: i64 = q.numer().bits() as i64 - q.denom().bits() as i64;
    let two = BigRational::from(BigInt::from(2));
    let mut m = if t >= 0 {
        q / BigRational::from(BigInt::one() << u64::try_from(t).unwrap())
    } else {
        q * BigRational::from(BigInt::one() << u64::try_from(-t).unwrap())
    };
    while m >= two {
        m /= &two;
        t += 1;
    }
    while m < BigRational::one() {
        m *= &two;
        t -= 1;
    }
    let u = (&m - BigRational::one()) / (&m + BigRational::one());
    let twoi = Interval::exact_dyadic(Dyadic::from_i64(2), w + 4);
    let ln_m = atanh_series(&u, w + 4).mul(&twoi, w + 4);
    if t == 0 {
        return Ok(Interval::from_endpoints(
            ln_m.lo().round(w, Round::Floor),
            ln_m.hi().round(w, Round::Ceil),
            w,
        ));
    }
    let tt = Interval::exact_dyadic(Dyadic::from_i64(t), w + 4);
    Ok(ln_m.add(&ln2(w + 4).mul(&tt, w + 4), w))
}
