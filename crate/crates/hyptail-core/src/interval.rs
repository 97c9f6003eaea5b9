//! Closed intervals with dyadic endpoints.
//!
//! An `Interval` encloses one real number: the true value of whatever
//! expression produced it always lies in `[lo, hi]`. Operations round the
//! lower endpoint down and the upper endpoint up, so enclosure is preserved
//! through arbitrary composition.

use crate::dyadic::{Dyadic, Round};
use crate::{Error, Result};
use num::BigRational;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    precision_bits: u32,
}

impl Interval {
    /// Builds an interval from endpoints; panics if `lo > hi` (callers only
    /// construct from directed roundings of a single value).
    pub fn from_endpoints(lo: Dyadic, hi: Dyadic, precision_bits: u32) -> Interval {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi, precision_bits }
    }

    /// The degenerate interval `[v, v]` for a dyadic value.
    pub fn exact_dyadic(v: Dyadic, precision_bits: u32) -> Interval {
        Interval { lo: v.clone(), hi: v, precision_bits }
    }

    /// Tightest interval around a rational at the working precision. Width
    /// zero exactly when the rational is dyadic and fits.
    pub fn from_rational(q: &BigRational, precision_bits: u32) -> Interval {
        let lo = Dyadic::from_rational(q, precision_bits, Round::Floor);
        let hi = Dyadic::from_rational(q, precision_bits, Round::Ceil);
        Interval { lo, hi, precision_bits }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// True when the enclosure pins the value exactly.
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Exact width `hi - lo`.
    pub fn width(&self) -> Dyadic {
        self.hi.sub_exact(&self.lo)
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lo.cmp_rational(q) != Ordering::Greater && self.hi.cmp_rational(q) != Ordering::Less
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            precision_bits: self.precision_bits,
        }
    }

    pub fn add(&self, other: &Interval, prec: u32) -> Interval {
        Interval {
            lo: self.lo.add(&other.lo, prec, Round::Floor),
            hi: self.hi.add(&other.hi, prec, Round::Ceil),
            precision_bits: prec,
        }
    }

    pub fn sub(&self, other: &Interval, prec: u32) -> Interval {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Interval, prec: u32) -> Interval {
        // Exact endpoint products, then one directed rounding of the
        // extremes. Four products cover every sign configuration.
        let exact = u32::MAX;
        let c1 = self.lo.mul(&other.lo, exact, Round::Floor);
        let c2 = self.lo.mul(&other.hi, exact, Round::Floor);
        let c3 = self.hi.mul(&other.lo, exact, Round::Floor);
        let c4 = self.hi.mul(&other.hi, exact, Round::Floor);
        let lo = c1.clone().min(c2.clone()).min(c3.clone()).min(c4.clone());
        let hi = c1.max(c2).max(c3).max(c4);
        Interval {
            lo: lo.round(prec, Round::Floor),
            hi: hi.round(prec, Round::Ceil),
            precision_bits: prec,
        }
    }

    /// Interval division; errors when the divisor encloses zero.
    pub fn div(&self, other: &Interval, prec: u32) -> Result<Interval> {
        let sign_lo = other.lo.cmp(&Dyadic::zero());
        let sign_hi = other.hi.cmp(&Dyadic::zero());
        if sign_lo != Ordering::Greater && sign_hi != Ordering::Less {
            return Err(Error::Domain(
                "division by an interval containing zero".to_string(),
            ));
        }
        let c1 = self.lo.div(&other.lo, prec, Round::Floor);
        let c2 = self.lo.div(&other.hi, prec, Round::Floor);
        let c3 = self.hi.div(&other.lo, prec, Round::Floor);
        let c4 = self.hi.div(&other.hi, prec, Round::Floor);
        let lo = c1.clone().min(c2.clone()).min(c3.clone()).min(c4.clone());
        let u1 = self.lo.div(&other.lo, prec, Round::Ceil);
        let u2 = self.lo.div(&other.hi, prec, Round::Ceil);
        let u3 = self.hi.div(&other.lo, prec, Round::Ceil);
        let u4 = self.hi.div(&other.hi, prec, Round::Ceil);
        let hi = u1.max(u2).max(u3).max(u4);
        Ok(Interval { lo, hi, precision_bits: prec })
    }

    /// Square root. The argument must be mathematically non-negative; a
    /// lower endpoint that dipped below zero through rounding is clamped,
    /// but an entirely negative enclosure is a domain error.
    pub fn sqrt(&self, prec: u32) -> Result<Interval> {
        if self.hi.is_negative() {
            return Err(Error::Domain("sqrt of a negative enclosure".to_string()));
        }
        let lo_base = if self.lo.is_negative() { Dyadic::zero() } else { self.lo.clone() };
        Ok(Interval {
            lo: lo_base.sqrt(prec, Round::Floor),
            hi: self.hi.sqrt(prec, Round::Ceil),
            precision_bits: prec,
        })
    }

    /// Integer power by repeated squaring. Requires a non-negative base,
    /// which is all the evaluator ever needs (powers of e and of positive
    /// rationals).
    pub fn pow_u64(&self, mut e: u64, prec: u32) -> Interval {
        assert!(
            !self.lo.is_negative(),
            "pow_u64 expects a non-negative base interval"
        );
        let mut acc = Interval::exact_dyadic(Dyadic::one(), prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, prec);
            }
        }
        acc
    }

    /// Intersection of two enclosures of the same value. Panics if they are
    /// disjoint, which would mean one of them was unsound.
    pub fn intersect(&self, other: &Interval) -> Interval {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi <= other.hi { self.hi.clone() } else { other.hi.clone() };
        assert!(
            lo <= hi,
            "disjoint enclosures of one value: soundness violation"
        );
        Interval {
            lo,
            hi,
            precision_bits: self.precision_bits.max(other.precision_bits),
        }
    }
}
