//! Arbitrary-precision dyadic floats `mant * 2^exp` with directed rounding.
//!
//! These are the endpoints of the intervals used everywhere else. Every
//! operation takes an explicit precision (mantissa width in bits) and a
//! rounding direction, and guarantees `Floor` results never exceed the true
//! value while `Ceil` results never undershoot it. Exponents are unbounded,
//! so quantities like 300! (about 10^614) and Taylor-series dust (about
//! 2^-300000) coexist without overflow.

use num::bigint::{BigInt, Sign};
use num::traits::{One, Signed, Zero};
use num::BigRational;
use std::cmp::Ordering;
use std::fmt;

/// Rounding direction: `Floor` rounds toward minus infinity, `Ceil` toward
/// plus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
}

impl Round {
    /// The opposite direction.
    pub fn flip(self) -> Round {
        match self {
            Round::Floor => Round::Ceil,
            Round::Ceil => Round::Floor,
        }
    }
}

/// A dyadic rational `mant * 2^exp` in canonical form: `mant` is odd, or
/// zero with `exp == 0`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

/// `floor(a / b)` for i128, used for decimal-exponent estimates.
fn floordiv_i128(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Right-shift `m` by `s` bits, rounding in the requested direction.
/// Implemented over the magnitude so it does not depend on the sign
/// semantics of `BigInt >>`.
fn shr_dir(m: &BigInt, s: u64, dir: Round) -> BigInt {
    if s == 0 || m.is_zero() {
        return m.clone();
    }
    let mag = m.magnitude();
    let q = mag >> s;
    let inexact = mag.trailing_zeros().map_or(false, |t| t < s);
    match (m.sign(), dir) {
        (Sign::Plus, Round::Floor) => BigInt::from(q),
        (Sign::Plus, Round::Ceil) => {
            let q = BigInt::from(q);
            if inexact {
                q + 1
            } else {
                q
            }
        }
        (Sign::Minus, Round::Ceil) => -BigInt::from(q),
        (Sign::Minus, Round::Floor) => {
            let q = -BigInt::from(q);
            if inexact {
                q - 1
            } else {
                q
            }
        }
        (Sign::NoSign, _) => unreachable!("zero handled above"),
    }
}

/// Directed integer division `a / b` with `b > 0`.
fn div_dir(a: BigInt, b: &BigInt, dir: Round) -> BigInt {
    debug_assert!(b.is_positive());
    match dir {
        Round::Floor => num::Integer::div_floor(&a, b),
        Round::Ceil => -num::Integer::div_floor(&(-a), b),
    }
}

impl Dyadic {
    /// Builds `mant * 2^exp` and normalizes to canonical form.
    pub fn new(mant: BigInt, exp: i64) -> Dyadic {
        if mant.is_zero() {
            return Dyadic {
                mant,
                exp: 0,
            };
        }
        let t = mant.magnitude().trailing_zeros().unwrap_or(0);
        if t == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic {
                mant: shr_dir(&mant, t, Round::Floor),
                exp: exp.checked_add(i64::try_from(t).expect("shift fits i64")).expect("exponent overflow"),
            }
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Dyadic {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Dyadic {
        Dyadic { mant: BigInt::one(), exp: e }
    }

    pub fn from_bigint(v: BigInt) -> Dyadic {
        Dyadic::new(v, 0)
    }

    pub fn from_i64(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// Mantissa width in bits (zero for zero).
    pub fn mant_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exclusive upper bit position: the magnitude lies in
    /// `[2^(pos-1), 2^pos)`. Meaningless for zero.
    fn top_pos(&self) -> i128 {
        self.exp as i128 + self.mant.bits() as i128
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -self.mant.clone(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Rounds to at most `prec` mantissa bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = bits - prec as u64;
        Dyadic::new(
            shr_dir(&self.mant, drop, dir),
            self.exp + i64::try_from(drop).expect("shift fits i64"),
        )
    }

    /// `self + other`, rounded to `prec` bits in direction `dir`.
    ///
    /// When the operands' magnitudes are separated by far more than `prec`
    /// bits the smaller one is folded in as a one-ulp nudge instead of an
    /// exact alignment, which keeps huge exponent gaps cheap while staying
    /// on the correct side.
    pub fn add(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        if self.is_zero() {
            return other.round(prec, dir);
        }
        if other.is_zero() {
            return self.round(prec, dir);
        }
        let (big, small) = if self.top_pos() >= other.top_pos() {
            (self, other)
        } else {
            (other, self)
        };
        // |small| < 2^(big_top - prec - 2) cannot move the rounded result by
        // more than one ulp of the `prec`-bit answer.
        if prec < u32::MAX && small.top_pos() < big.top_pos() - prec as i128 - 2 {
            let r = big.round(prec, dir);
            let nudge_down = dir == Round::Floor && small.is_negative();
            let nudge_up = dir == Round::Ceil && small.is_positive();
            if nudge_down || nudge_up {
                let ulp = Dyadic::pow2(
                    i64::try_from(big.top_pos() - prec as i128).expect("exponent fits i64"),
                );
                let step = if nudge_up { ulp } else { ulp.neg() };
                // Exact add: the two exponents are within `prec` of each other.
                return r.add(&step, u32::MAX, dir).round(prec, dir);
            }
            return r;
        }
        let e = self.exp.min(other.exp);
        let sa = u64::try_from(self.exp - e).expect("aligned shift fits");
        let sb = u64::try_from(other.exp - e).expect("aligned shift fits");
        let m = (self.mant.clone() << sa) + (other.mant.clone() << sb);
        Dyadic::new(m, e).round(prec, dir)
    }

    /// `self + other` with no rounding.
    pub fn add_exact(&self, other: &Dyadic) -> Dyadic {
        self.add(other, u32::MAX, Round::Floor)
    }

    pub fn sub(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        self.add(&other.neg(), prec, dir)
    }

    pub fn sub_exact(&self, other: &Dyadic) -> Dyadic {
        self.add_exact(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic::new(
            &self.mant * &other.mant,
            self.exp.checked_add(other.exp).expect("exponent overflow"),
        )
        .round(prec, dir)
    }

    /// `self / other`, rounded to `prec` bits in direction `dir`.
    /// Panics if `other` is zero; callers guard the domain.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let s_signed = prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let s = u64::try_from(s_signed.max(0)).unwrap();
        let n = self.mant.clone() << s;
        // Absorb the divisor's sign into the numerator so the directed
        // integer division sees a positive divisor.
        let (n, d) = if other.mant.is_negative() {
            (-n, -other.mant.clone())
        } else {
            (n, other.mant.clone())
        };
        let q = div_dir(n, &d, dir);
        Dyadic::new(q, self.exp - other.exp - s as i64).round(prec, dir)
    }

    /// Square root of a non-negative dyadic, rounded in direction `dir`.
    /// Exact when the value is a perfect square of a dyadic.
    /// Panics on negative input; callers guard the domain.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(!self.is_negative(), "dyadic sqrt of negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut m = self.mant.clone();
        let mut e = self.exp;
        if e % 2 != 0 {
            m <<= 1u32;
            e -= 1;
        }
        let target = 2 * (prec as u64 + 2);
        if m.bits() < target {
            let mut extra = target - m.bits();
            if extra % 2 != 0 {
                extra += 1;
            }
            m <<= extra;
            e -= i64::try_from(extra).unwrap();
        }
        let r = num::integer::Roots::sqrt(&m);
        let exact = &r * &r == m;
        let mant = if exact || dir == Round::Floor { r } else { r + 1 };
        Dyadic::new(mant, e / 2).round(prec, dir)
    }

    /// Directed conversion from an exact rational. Exact whenever the
    /// rational is itself dyadic and fits in `prec` bits.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Dyadic {
        if q.numer().is_zero() {
            return Dyadic::zero();
        }
        let num = q.numer();
        let den = q.denom();
        let s = prec as i64 + 2 + den.bits() as i64 - num.magnitude().bits() as i64;
        let (nn, dd) = if s >= 0 {
            (num.clone() << u64::try_from(s).unwrap(), den.clone())
        } else {
            (num.clone(), den.clone() << u64::try_from(-s).unwrap())
        };
        let qq = div_dir(nn, &dd, dir);
        Dyadic::new(qq, -s).round(prec, dir)
    }

    /// Exact conversion to a rational.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from(self.mant.clone() << u64::try_from(self.exp).unwrap())
        } else {
            BigRational::new(
                self.mant.clone(),
                BigInt::one() << u64::try_from(-self.exp).unwrap(),
            )
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        // self = m 2^e vs a/b  <=>  m 2^e b vs a  (b > 0).
        let m = &self.mant;
        let e = self.exp;
        let a = q.numer();
        let b = q.denom();
        match (m.sign(), a.sign()) {
            (Sign::Minus, Sign::NoSign) | (Sign::Minus, Sign::Plus) | (Sign::NoSign, Sign::Plus) => {
                return Ordering::Less
            }
            (Sign::Plus, Sign::NoSign) | (Sign::Plus, Sign::Minus) | (Sign::NoSign, Sign::Minus) => {
                return Ordering::Greater
            }
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        let (lhs, rhs) = if e >= 0 {
            ((m.clone() << u64::try_from(e).unwrap()) * b, a.clone())
        } else {
            (m * b, a.clone() << u64::try_from(-e).unwrap())
        };
        lhs.cmp(&rhs)
    }

    /// Directed decimal rendering with `sig` significant digits, in
    /// scientific notation (`-1.2345e-6`). The emitted decimal is `<=` the
    /// true value for `Floor` and `>=` for `Ceil`; rendering is exact when
    /// the value fits in `sig` digits. Deterministic.
    pub fn to_decimal(&self, sig: u32, dir: Round) -> String {
        assert!(sig >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        // Decimal exponent estimate from the binary magnitude, then correct
        // by scaling until the digit count lands in [10^(sig-1), 10^sig).
        const LOG10_2_NUM: i128 = 301_029_995_663_981;
        const LOG10_2_DEN: i128 = 1_000_000_000_000_000;
        let mut dec_exp = floordiv_i128((self.top_pos() - 1) * LOG10_2_NUM, LOG10_2_DEN);
        let ten = BigInt::from(10);
        let low = ten.pow(sig - 1);
        let high = ten.pow(sig);
        let mut digits;
        loop {
            let p = sig as i128 - 1 - dec_exp;
            let mut nn = self.mant.clone();
            let mut dd = BigInt::one();
            if self.exp >= 0 {
                nn <<= u64::try_from(self.exp).unwrap();
            } else {
                dd <<= u64::try_from(-self.exp).unwrap();
            }
            if p >= 0 {
                nn *= ten.pow(u32::try_from(p).expect("decimal scale fits u32"));
            } else {
                dd *= ten.pow(u32::try_from(-p).expect("decimal scale fits u32"));
            }
            digits = div_dir(nn, &dd, dir);
            if digits.magnitude() < low.magnitude() {
                dec_exp -= 1;
                continue;
            }
            if digits.magnitude() >= high.magnitude() {
                // One digit too many; dividing again in the same direction
                // keeps the result on the correct side.
                digits = div_dir(digits, &ten, dir);
                dec_exp += 1;
            }
            break;
        }
        let neg = digits.is_negative();
        let mag = digits.magnitude().to_string();
        debug_assert_eq!(mag.len(), sig as usize);
        let (head, tail) = mag.split_at(1);
        let tail = tail.trim_end_matches('0');
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        out.push('e');
        out.push_str(&dec_exp.to_string());
        out
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        // Canonical form makes structural equality exact value equality.
        self.exp == other.exp && self.mant == other.mant
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.mant.sign();
        let sb = other.mant.sign();
        let rank = |s: Sign| match s {
            Sign::Minus => 0,
            Sign::NoSign => 1,
            Sign::Plus => 2,
        };
        if rank(sa) != rank(sb) {
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare magnitudes by bit position first to
        // avoid aligning wildly different exponents.
        let ta = self.top_pos();
        let tb = other.top_pos();
        if ta != tb {
            let mag = ta.cmp(&tb);
            return if sa == Sign::Plus { mag } else { mag.reverse() };
        }
        let e = self.exp.min(other.exp);
        let la = self.mant.clone() << u64::try_from(self.exp - e).unwrap();
        let lb = other.mant.clone() << u64::try_from(other.exp - e).unwrap();
        la.cmp(&lb)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(17, Round::Floor))
    }
}
