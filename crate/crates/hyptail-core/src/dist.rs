//! Exact probability distributions on a finite window of integers.
//!
//! Masses are kept as integer weights over one common denominator, in a
//! canonical reduced form with strictly positive first and last weights.
//! That makes structural equality value equality, and lets tail sums, MADs
//! and conditional laws run on integer arithmetic with a single final
//! reduction.

use crate::{rational_to_string, Error, Result};
use num::bigint::BigInt;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::{BigRational, Integer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteDist {
    offset: i64,
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl DiscreteDist {
    /// Builds a distribution from non-negative integer weights starting at
    /// `offset`. Zero weights at either end are trimmed; interior zeros are
    /// allowed. Errors if every weight is zero or any is negative.
    pub fn from_weights(offset: i64, weights: Vec<BigInt>) -> Result<DiscreteDist> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidParams("negative weight".to_string()));
        }
        let first = weights.iter().position(|w| !w.is_zero());
        let first = match first {
            Some(f) => f,
            None => {
                return Err(Error::InvalidParams(
                    "all weights are zero".to_string(),
                ))
            }
        };
        let last = weights.iter().rposition(|w| !w.is_zero()).unwrap();
        let mut numer: Vec<BigInt> = weights[first..=last].to_vec();
        let offset = offset
            .checked_add(i64::try_from(first).unwrap())
            .ok_or_else(|| Error::InvalidParams("support offset overflow".to_string()))?;
        let denom: BigInt = numer.iter().sum();
        let mut g = denom.clone();
        for w in &numer {
            if g.is_one() {
                break;
            }
            if !w.is_zero() {
                g = g.gcd(w);
            }
        }
        let denom = if g.is_one() {
            denom
        } else {
            for w in &mut numer {
                *w /= &g;
            }
            denom / g
        };
        Ok(DiscreteDist { offset, numer, denom })
    }

    /// Builds a distribution from exact masses, which must be non-negative
    /// and sum to one.
    pub fn from_masses(offset: i64, masses: &[BigRational]) -> Result<DiscreteDist> {
        if masses.iter().any(|m| m.is_negative()) {
            return Err(Error::InvalidParams("negative mass".to_string()));
        }
        let total: BigRational = masses.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidParams(format!(
                "masses must sum to one, got {}",
                rational_to_string(&total)
            )));
        }
        let mut lcm = BigInt::from(1);
        for m in masses {
            lcm = lcm.lcm(m.denom());
        }
        let weights: Vec<BigInt> = masses.iter().map(|m| m.numer() * (&lcm / m.denom())).collect();
        DiscreteDist::from_weights(offset, weights)
    }

    /// The distribution concentrated at `j`.
    pub fn point(j: i64) -> DiscreteDist {
        DiscreteDist {
            offset: j,
            numer: vec![BigInt::from(1)],
            denom: BigInt::from(1),
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.numer.len()
    }

    pub fn is_empty(&self) -> bool {
        false // canonical form always has at least one positive weight
    }

    pub fn min_support(&self) -> i64 {
        self.offset
    }

    pub fn max_support(&self) -> i64 {
        self.offset + self.numer.len() as i64 - 1
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.numer
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// Mass at `j`, zero outside the support window.
    pub fn mass_at(&self, j: i64) -> BigRational {
        if j < self.offset || j > self.max_support() {
            return BigRational::zero();
        }
        let idx = usize::try_from(j - self.offset).unwrap();
        BigRational::new(self.numer[idx].clone(), self.denom.clone())
    }

    /// All masses in support order.
    pub fn masses(&self) -> Vec<BigRational> {
        self.numer
            .iter()
            .map(|w| BigRational::new(w.clone(), self.denom.clone()))
            .collect()
    }

    pub fn mean(&self) -> BigRational {
        let mut acc = BigInt::zero();
        for (idx, w) in self.numer.iter().enumerate() {
            acc += BigInt::from(self.offset + idx as i64) * w;
        }
        BigRational::new(acc, self.denom.clone())
    }

    pub fn variance(&self) -> BigRational {
        let mut s1 = BigInt::zero();
        let mut s2 = BigInt::zero();
        for (idx, w) in self.numer.iter().enumerate() {
            let j = BigInt::from(self.offset + idx as i64);
            s1 += &j * w;
            s2 += &j * &j * w;
        }
        let e1 = BigRational::new(s1, self.denom.clone());
        let e2 = BigRational::new(s2, self.denom.clone());
        e2 - &e1 * &e1
    }

    /// Index of the smallest support point `>= ceil(t)`, or `None` when the
    /// whole support lies below `ceil(t)`.
    fn tail_start(&self, t: &BigRational) -> Option<usize> {
        let m = t.ceil().to_integer();
        if m > BigInt::from(self.max_support()) {
            return None;
        }
        if m <= BigInt::from(self.offset) {
            return Some(0);
        }
        let m = m.to_i64().expect("threshold within i64 support range");
        Some(usize::try_from(m - self.offset).unwrap())
    }

    /// Upper tail probability `P(X >= ceil(t))`.
    pub fn tail(&self, t: &BigRational) -> BigRational {
        match self.tail_start(t) {
            None => BigRational::zero(),
            Some(start) => {
                let acc: BigInt = self.numer[start..].iter().sum();
                BigRational::new(acc, self.denom.clone())
            }
        }
    }

    /// `P(X <= j)`.
    pub fn cdf(&self, j: i64) -> BigRational {
        if j < self.offset {
            return BigRational::zero();
        }
        let end = usize::try_from((j - self.offset + 1).min(self.numer.len() as i64)).unwrap();
        let acc: BigInt = self.numer[..end].iter().sum();
        BigRational::new(acc, self.denom.clone())
    }

    /// Mean absolute deviation around an arbitrary rational center.
    pub fn mad(&self, center: &BigRational) -> BigRational {
        // |j - p/q| = |j q - p| / q keeps the accumulation in integers.
        let p = center.numer();
        let q = center.denom();
        let mut acc = BigInt::zero();
        for (idx, w) in self.numer.iter().enumerate() {
            let jq = BigInt::from(self.offset + idx as i64) * q;
            acc += (jq - p).abs() * w;
        }
        BigRational::new(acc, &self.denom * q)
    }

    /// Conditional expectation `E[X | X >= ceil(t)]`.
    pub fn tce(&self, t: &BigRational) -> Result<BigRational> {
        let start = self.tail_start(t).ok_or(Error::EmptyTail)?;
        let mut num = BigInt::zero();
        let mut den = BigInt::zero();
        for (idx, w) in self.numer.iter().enumerate().skip(start) {
            num += BigInt::from(self.offset + idx as i64) * w;
            den += w;
        }
        Ok(BigRational::new(num, den))
    }

    /// The law of `X` conditioned on `X >= ceil(t)`, exactly renormalized.
    pub fn conditional_tail(&self, t: &BigRational) -> Result<DiscreteDist> {
        let start = self.tail_start(t).ok_or(Error::EmptyTail)?;
        DiscreteDist::from_weights(
            self.offset + start as i64,
            self.numer[start..].to_vec(),
        )
    }

    /// Smallest support point `s` with `P(X <= s) >= 1/2`.
    pub fn median(&self) -> i64 {
        let mut acc = BigInt::zero();
        for (idx, w) in self.numer.iter().enumerate() {
            acc += w;
            if &acc * 2 >= self.denom {
                return self.offset + idx as i64;
            }
        }
        unreachable!("total mass is one")
    }

    pub fn is_point_mass(&self) -> bool {
        self.numer.len() == 1
    }
}

/// Total variation distance `sup_A |P(A) - Q(A)| = (1/2) sum_j |p_j - q_j|`.
pub fn total_variation(a: &DiscreteDist, b: &DiscreteDist) -> BigRational {
    let lo = a.min_support().min(b.min_support());
    let hi = a.max_support().max(b.max_support());
    let da = &a.denom;
    let db = &b.denom;
    let mut acc = BigInt::zero();
    for j in lo..=hi {
        let na = if j >= a.offset && j <= a.max_support() {
            a.numer[usize::try_from(j - a.offset).unwrap()].clone()
        } else {
            BigInt::zero()
        };
        let nb = if j >= b.offset && j <= b.max_support() {
            b.numer[usize::try_from(j - b.offset).unwrap()].clone()
        } else {
            BigInt::zero()
        };
        acc += (na * db - nb * da).abs();
    }
    BigRational::new(acc, BigInt::from(2) * da * db)
}
