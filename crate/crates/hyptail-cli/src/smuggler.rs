//! The inspection game: how many marked items should slip into a shipment?
//!
//! A shipment holds `n` items, `i` of them marked; an inspector samples `k`
//! uniformly without replacement and raises an alarm when the count of
//! marked items reaches its typical level, that is, at least `ceil(ik/n)`.
//! The shipper's success chance at `i` is therefore
//! `1 - P(H(n, i, k) >= ceil(ik/n))`, and the question is which `i`
//! maximizes it. All arithmetic is exact, so ties are genuine ties.

use crate::{CliError, Result};
use hyptail_core::hyp::{profile, HypParams};
use hyptail_core::rational_to_string;
use num::BigRational;
use num::One;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmugglerEntry {
    pub i: u64,
    /// `P(H >= ceil(ik/n))`, exact.
    pub alarm: String,
    /// `1 - alarm`, exact.
    pub evasion: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmugglerResult {
    pub n: u64,
    pub k: u64,
    pub per_i: Vec<SmugglerEntry>,
    /// Every `i` attaining the best evasion probability, ascending.
    pub argmax: Vec<u64>,
    pub max_evasion: String,
}

pub fn optimize(n: u64, k: u64) -> Result<SmugglerResult> {
    if n == 0 || k == 0 || k > n {
        return Err(CliError::Usage(format!(
            "need 1 <= k <= n, got n={}, k={}",
            n, k
        )));
    }
    let mut per_i = Vec::with_capacity(usize::try_from(n).unwrap());
    let mut best: Option<BigRational> = None;
    let mut argmax: Vec<u64> = Vec::new();
    for i in 1..=n {
        let p = HypParams::new(n, i, k).expect("coordinates are in range");
        let pr = profile(&p);
        let evasion = BigRational::one() - &pr.tail_at_mean;
        match &best {
            Some(b) if *b > evasion => {}
            Some(b) if *b == evasion => argmax.push(i),
            _ => {
                best = Some(evasion.clone());
                argmax = vec![i];
            }
        }
        per_i.push(SmugglerEntry {
            i,
            alarm: rational_to_string(&pr.tail_at_mean),
            evasion: rational_to_string(&evasion),
        });
    }
    Ok(SmugglerResult {
        n,
        k,
        per_i,
        argmax,
        max_evasion: rational_to_string(&best.expect("n >= 1 yields at least one entry")),
    })
}
