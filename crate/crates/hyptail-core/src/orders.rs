//! Stochastic and likelihood-ratio order comparisons, division free.
//!
//! Both orders are decided on integer cross-products of the weight vectors,
//! so every answer is exact, and a failed comparison hands back a concrete
//! counterexample that can be rechecked independently.

use crate::dist::DiscreteDist;
use num::bigint::BigInt;
use num::traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    /// `a <=_st b`: every upper tail of `a` is no larger than that of `b`.
    Stochastic,
    /// `a <=_lr b`: the weight ratio of `b` to `a` never decreases.
    LikelihoodRatio,
}

/// Where a claimed ordering breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// A threshold `t` with `P(a >= t) > P(b >= t)`.
    Threshold(i64),
    /// Points `lo < hi` with `P_a(lo) P_b(hi) < P_a(hi) P_b(lo)`.
    Pair { lo: i64, hi: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderWitness {
    pub kind: OrderKind,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl OrderWitness {
    fn ok(kind: OrderKind) -> OrderWitness {
        OrderWitness {
            kind,
            holds: true,
            counterexample: None,
        }
    }

    fn broken(kind: OrderKind, at: Counterexample) -> OrderWitness {
        OrderWitness {
            kind,
            holds: false,
            counterexample: Some(at),
        }
    }
}

/// Weight of `d` at the absolute point `j`, zero outside the window.
fn weight_at(d: &DiscreteDist, j: i64) -> BigInt {
    if j < d.min_support() || j > d.max_support() {
        return BigInt::zero();
    }
    d.numerators()[usize::try_from(j - d.offset()).unwrap()].clone()
}

/// Decides whether `a <=_st b`.
///
/// Tails are compared as integer cross-products `S_a(t) D_b <= S_b(t) D_a`
/// with `S` the suffix weight sums and `D` the common denominators. Only
/// thresholds inside the union of the supports can discriminate.
pub fn st_order(a: &DiscreteDist, b: &DiscreteDist) -> OrderWitness {
    let lo = a.min_support().min(b.min_support());
    let hi = a.max_support().max(b.max_support());
    let da = a.denominator();
    let db = b.denominator();
    let mut sa = BigInt::zero();
    let mut sb = BigInt::zero();
    let mut worst: Option<i64> = None;
    for t in (lo..=hi).rev() {
        sa += weight_at(a, t);
        sb += weight_at(b, t);
        if &sa * db > &sb * da {
            // Remember the lowest offending threshold; keep scanning so the
            // reported counterexample is deterministic and minimal.
            worst = Some(t);
        }
    }
    match worst {
        None => OrderWitness::ok(OrderKind::Stochastic),
        Some(t) => OrderWitness::broken(OrderKind::Stochastic, Counterexample::Threshold(t)),
    }
}

/// Decides whether `a <=_lr b`.
///
/// The defining condition is `P_a(m) P_b(m') >= P_a(m') P_b(m)` for every
/// pair `m < m'`. Denominators cancel, so the products run on raw integer
/// weights. When neither vector has an interior zero the full quadratic
/// check collapses to a support-shape test plus adjacent pairs: any pair
/// inequality factors through the chain of adjacent ones because the
/// intermediate weights are strictly positive and cancel.
pub fn lr_order(a: &DiscreteDist, b: &DiscreteDist) -> OrderWitness {
    let kind = OrderKind::LikelihoodRatio;
    let contiguous =
        |d: &DiscreteDist| d.numerators().iter().all(|w| !w.is_zero());
    if contiguous(a) && contiguous(b) {
        let (la, ha) = (a.min_support(), a.max_support());
        let (lb, hb) = (b.min_support(), b.max_support());
        if lb < la {
            return OrderWitness::broken(kind, Counterexample::Pair { lo: lb, hi: la });
        }
        if hb < ha {
            return OrderWitness::broken(kind, Counterexample::Pair { lo: hb, hi: ha });
        }
        for m in lb..ha.min(hb) {
            let lhs = weight_at(a, m) * weight_at(b, m + 1);
            let rhs = weight_at(a, m + 1) * weight_at(b, m);
            if lhs < rhs {
                return OrderWitness::broken(kind, Counterexample::Pair { lo: m, hi: m + 1 });
            }
        }
        return OrderWitness::ok(kind);
    }
    // Interior zeros break the chaining argument, so fall back to all pairs.
    let lo = a.min_support().min(b.min_support());
    let hi = a.max_support().max(b.max_support());
    for m in lo..hi {
        let am = weight_at(a, m);
        let bm = weight_at(b, m);
        for mp in (m + 1)..=hi {
            let lhs = &am * weight_at(b, mp);
            let rhs = weight_at(a, mp) * &bm;
            if lhs < rhs {
                return OrderWitness::broken(kind, Counterexample::Pair { lo: m, hi: mp });
            }
        }
    }
    OrderWitness::ok(kind)
}
