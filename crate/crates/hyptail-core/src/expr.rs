//! Expression trees over rationals, pi, sqrt, exp and ln, with certified
//! inequality checking.
//!
//! `certify` decides `lhs REL rhs` for an exact rational `lhs` and an
//! expression `rhs`. Expressions that simplify to a rational (including
//! square roots of perfect squares) are compared exactly, so equalities
//! come back with a margin of exactly zero. Everything else is evaluated
//! as an interval at doubling precision until the enclosure separates from
//! `lhs` or the budget runs out, in which case the honest answer is
//! `Indeterminate`.

use crate::dyadic::{Dyadic, Round};
use crate::interval::Interval;
use crate::{transcendental, Error, Result};
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use num::BigRational;
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(BigRational),
    Pi,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
}

impl Expr {
    pub fn lit(v: i64) -> Expr {
        Expr::Lit(BigRational::from(BigInt::from(v)))
    }

    pub fn ratio(p: i64, q: i64) -> Expr {
        Expr::Lit(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn rational(q: BigRational) -> Expr {
        Expr::Lit(q)
    }

    pub fn big(v: BigInt) -> Expr {
        Expr::Lit(BigRational::from(v))
    }

    pub fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }

    pub fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn ln(self) -> Expr {
        Expr::Ln(Box::new(self))
    }

    /// Exact rational value of the expression, when one is syntactically
    /// certain: literals combined by field operations, square roots of
    /// perfect squares, exp(0) and ln(1). Returns `None` for anything
    /// genuinely irrational or out of domain; evaluation reports domain
    /// errors properly in that case.
    pub fn fold_rational(&self) -> Option<BigRational> {
        match self {
            Expr::Lit(q) => Some(q.clone()),
            Expr::Pi => None,
            Expr::Neg(a) => a.fold_rational().map(|q| -q),
            Expr::Add(a, b) => Some(a.fold_rational()? + b.fold_rational()?),
            Expr::Sub(a, b) => Some(a.fold_rational()? - b.fold_rational()?),
            Expr::Mul(a, b) => Some(a.fold_rational()? * b.fold_rational()?),
            Expr::Div(a, b) => {
                let bv = b.fold_rational()?;
                if bv.is_zero() {
                    None
                } else {
                    Some(a.fold_rational()? / bv)
                }
            }
            Expr::Sqrt(a) => {
                let v = a.fold_rational()?;
                if v.is_negative() {
                    return None;
                }
                let rn = num::integer::Roots::sqrt(v.numer());
                let rd = num::integer::Roots::sqrt(v.denom());
                if &(&rn * &rn) == v.numer() && &(&rd * &rd) == v.denom() {
                    Some(BigRational::new(rn, rd))
                } else {
                    None
                }
            }
            Expr::Exp(a) => {
                let v = a.fold_rational()?;
                if v.is_zero() {
                    Some(BigRational::one())
                } else {
                    None
                }
            }
            Expr::Ln(a) => {
                let v = a.fold_rational()?;
                if v.is_one() {
                    Some(BigRational::zero())
                } else {
                    None
                }
            }
        }
    }

    /// Evaluates to an enclosure. `precision_bits` is the requested
    /// precision; internally 32 guard bits are carried.
    pub fn eval_interval(&self, precision_bits: u32) -> Result<Interval> {
        let w = precision_bits.saturating_add(32);
        let iv = self.eval_at(w)?;
        Ok(Interval::from_endpoints(
            iv.lo().clone(),
            iv.hi().clone(),
            precision_bits,
        ))
    }

    fn eval_at(&self, w: u32) -> Result<Interval> {
        match self {
            Expr::Lit(q) => Ok(Interval::from_rational(q, w)),
            Expr::Pi => Ok(transcendental::pi(w)),
            Expr::Neg(a) => Ok(a.eval_at(w)?.neg()),
            Expr::Add(a, b) => Ok(a.eval_at(w)?.add(&b.eval_at(w)?, w)),
            Expr::Sub(a, b) => Ok(a.eval_at(w)?.sub(&b.eval_at(w)?, w)),
            Expr::Mul(a, b) => Ok(a.eval_at(w)?.mul(&b.eval_at(w)?, w)),
            Expr::Div(a, b) => a.eval_at(w)?.div(&b.eval_at(w)?, w),
            Expr::Sqrt(a) => a.eval_at(w)?.sqrt(w),
            Expr::Exp(a) => {
                if let Some(q) = a.fold_rational() {
                    return transcendental::exp_rational(&q, w);
                }
                let c = a.eval_at(w)?;
                let lo = transcendental::exp_rational(&c.lo().to_rational(), w)?;
                let hi = transcendental::exp_rational(&c.hi().to_rational(), w)?;
                Ok(Interval::from_endpoints(lo.lo().clone(), hi.hi().clone(), w))
            }
            Expr::Ln(a) => {
                if let Some(q) = a.fold_rational() {
                    return transcendental::ln_rational(&q, w);
                }
                let c = a.eval_at(w)?;
                if !c.lo().is_positive() {
                    return Err(Error::Domain(
                        "ln of an enclosure reaching zero or below".to_string(),
                    ));
                }
                let lo = transcendental::ln_rational(&c.lo().to_rational(), w)?;
                let hi = transcendental::ln_rational(&c.hi().to_rational(), w)?;
                Ok(Interval::from_endpoints(lo.lo().clone(), hi.hi().clone(), w))
            }
        }
    }
}

/// Comparison direction for `certify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Gt,
    Le,
    Lt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Le => "<=",
            Relation::Lt => "<",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    Holds,
    Fails,
    Indeterminate,
}

/// How the right-hand side was pinned down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RhsValue {
    Exact(BigRational),
    Enclosure { lo: Dyadic, hi: Dyadic },
}

impl RhsValue {
    /// Lower endpoint as a dyadic (exact rationals are rendered at 96 bits,
    /// rounded down).
    pub fn lo_dyadic(&self) -> Dyadic {
        match self {
            RhsValue::Exact(q) => Dyadic::from_rational(q, 96, Round::Floor),
            RhsValue::Enclosure { lo, .. } => lo.clone(),
        }
    }

    pub fn hi_dyadic(&self) -> Dyadic {
        match self {
            RhsValue::Exact(q) => Dyadic::from_rational(q, 96, Round::Ceil),
            RhsValue::Enclosure { hi, .. } => hi.clone(),
        }
    }
}

/// Outcome of a certified comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub lhs: BigRational,
    pub rhs: RhsValue,
    /// Certified lower bound on the margin by which the relation holds
    /// (negative when it fails, exactly zero only at exact equality).
    pub margin_lower_bound: Dyadic,
    /// Interval precision that decided the comparison; zero when it was
    /// settled by exact rational arithmetic.
    pub precision_used: u32,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == VerdictStatus::Holds
    }
}

/// Margin display precision. The margin is a one-sided bound, not an
/// enclosure, so a fixed generous mantissa is enough.
const MARGIN_BITS: u32 = 96;

fn margin_bound(rel: Relation, lhs: &BigRational, rhs_lo: &BigRational, rhs_hi: &BigRational) -> Dyadic {
    let slack = match rel {
        Relation::Ge | Relation::Gt => lhs - rhs_hi,
        Relation::Le | Relation::Lt => rhs_lo - lhs,
    };
    Dyadic::from_rational(&slack, MARGIN_BITS, Round::Floor)
}

fn decide_exact(rel: Relation, lhs: &BigRational, rhs: &BigRational) -> VerdictStatus {
    let cmp = lhs.cmp(rhs);
    let holds = match rel {
        Relation::Ge => cmp != Ordering::Less,
        Relation::Gt => cmp == Ordering::Greater,
        Relation::Le => cmp != Ordering::Greater,
        Relation::Lt => cmp == Ordering::Less,
    };
    if holds {
        VerdictStatus::Holds
    } else {
        VerdictStatus::Fails
    }
}

fn decide_interval(rel: Relation, lhs: &BigRational, enc: &Interval) -> Option<VerdictStatus> {
    let vs_lo = enc.lo().cmp_rational(lhs).reverse(); // lhs cmp lo
    let vs_hi = enc.hi().cmp_rational(lhs).reverse(); // lhs cmp hi
    match rel {
        Relation::Ge => {
            if vs_hi != Ordering::Less {
                Some(VerdictStatus::Holds)
            } else if vs_lo == Ordering::Less {
                Some(VerdictStatus::Fails)
            } else {
                None
            }
        }
        Relation::Gt => {
            if vs_hi == Ordering::Greater {
                Some(VerdictStatus::Holds)
            } else if vs_lo != Ordering::Greater {
                Some(VerdictStatus::Fails)
            } else {
                None
            }
        }
        Relation::Le => {
            if vs_lo != Ordering::Greater {
                Some(VerdictStatus::Holds)
            } else if vs_hi == Ordering::Greater {
                Some(VerdictStatus::Fails)
            } else {
                None
            }
        }
        Relation::Lt => {
            if vs_lo == Ordering::Less {
                Some(VerdictStatus::Holds)
            } else if vs_hi != Ordering::Less {
                Some(VerdictStatus::Fails)
            } else {
                None
            }
        }
    }
}

/// Decides `lhs REL rhs` with a certified answer.
///
/// `budget_bits` caps the interval precision; it must be at least 32.
/// Precision starts at 64 (or the budget, if smaller) and doubles up to the
/// budget, intersecting successive enclosures. Domain errors inside the
/// expression propagate as errors rather than verdicts.
pub fn certify(lhs: &BigRational, rel: Relation, rhs: &Expr, budget_bits: u32) -> Result<Verdict> {
    if budget_bits < 32 {
        return Err(Error::InvalidParams(format!(
            "certification budget must be at least 32 bits, got {}",
            budget_bits
        )));
    }
    if let Some(rv) = rhs.fold_rational() {
        let status = decide_exact(rel, lhs, &rv);
        let margin = margin_bound(rel, lhs, &rv, &rv);
        return Ok(Verdict {
            status,
            lhs: lhs.clone(),
            rhs: RhsValue::Exact(rv),
            margin_lower_bound: margin,
            precision_used: 0,
        });
    }
    let mut prec = budget_bits.min(64);
    let mut enc: Option<Interval> = None;
    loop {
        let fresh = rhs.eval_interval(prec)?;
        let cur = match &enc {
            Some(prev) => prev.intersect(&fresh),
            None => fresh,
        };
        let decided = decide_interval(rel, lhs, &cur);
        let lo_q = cur.lo().to_rational();
        let hi_q = cur.hi().to_rational();
        if let Some(status) = decided {
            return Ok(Verdict {
                status,
                lhs: lhs.clone(),
                margin_lower_bound: margin_bound(rel, lhs, &lo_q, &hi_q),
                rhs: RhsValue::Enclosure {
                    lo: cur.lo().clone(),
                    hi: cur.hi().clone(),
                },
                precision_used: prec,
            });
        }
        if prec >= budget_bits {
            return Ok(Verdict {
                status: VerdictStatus::Indeterminate,
                lhs: lhs.clone(),
                margin_lower_bound: margin_bound(rel, lhs, &lo_q, &hi_q),
                rhs: RhsValue::Enclosure {
                    lo: cur.lo().clone(),
                    hi: cur.hi().clone(),
                },
                precision_used: prec,
            });
        }
        enc = Some(cur);
        prec = prec.saturating_mul(2).min(budget_bits);
    }
}
