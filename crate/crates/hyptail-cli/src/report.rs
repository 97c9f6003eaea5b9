//! Aggregate summaries folded from a sweep's row stream.

use crate::row::CheckRow;
use hyptail_core::dyadic::Dyadic;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// How many undecided-row samples a report keeps verbatim. Failing rows are
/// never capped: a counterexample list must be complete to be a finding.
pub const SAMPLE_CAP: usize = 200;

/// How many smallest non-negative margins a report tracks per bound.
pub const NEAR_EQUALITY_CAP: usize = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusTotals {
    pub holds: u64,
    pub fails: u64,
    pub indeterminate: u64,
    pub not_applicable: u64,
}

impl StatusTotals {
    pub fn total(&self) -> u64 {
        self.holds + self.fails + self.indeterminate + self.not_applicable
    }
}

/// A comparison that held with almost nothing to spare.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearEquality {
    /// Row identifier; carries a `:label` suffix when the bound certifies
    /// several comparisons per point.
    pub bound_id: String,
    pub n: u64,
    pub i: u64,
    pub k: u64,
    /// Certified margin lower bound, decimal, rounded down.
    pub margin: String,
}

/// Running minimum of the normalized tail-to-shape ratio, tracked as an
/// enclosure so the conclusion survives the rounding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjHalfStats {
    pub applicable_points: u64,
    /// Lower endpoint of the minimum ratio over the grid, rounded down.
    pub min_ratio_lo: String,
    /// Upper endpoint of the minimum ratio over the grid, rounded up.
    pub min_ratio_hi: String,
    pub argmin_n: u64,
    pub argmin_i: u64,
    pub argmin_k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n_min: u64,
    pub n_max: u64,
    /// Coordinate restrictions in their canonical text forms.
    pub i_filter: String,
    pub k_filter: String,
    pub budget_bits: u32,
    pub bounds: Vec<String>,
    /// Grid points visited.
    pub points: u64,
    /// Rows emitted (one per sub-verdict or gated-out check).
    pub rows: u64,
    /// Per-bound status counts; every bound sums to `points`.
    pub totals: BTreeMap<String, StatusTotals>,
    /// Every failing theorem-class row, uncapped.
    pub failures: Vec<CheckRow>,
    /// Sample rows for undecided checks, capped.
    pub indeterminates: Vec<CheckRow>,
    /// Every failing conjecture-class row, uncapped. These are findings,
    /// not errors.
    pub conjecture_counterexamples: Vec<CheckRow>,
    /// Per bound, the points where a comparison held with the least room
    /// to spare, smallest certified margin first.
    pub extremes: BTreeMap<String, Vec<NearEquality>>,
    pub conj_half: Option<ConjHalfStats>,
}

impl SweepReport {
    /// True when every theorem-class check either held or was gated out.
    pub fn clean(&self) -> bool {
        self.totals.iter().all(|(name, t)| {
            let conjecture = matches!(
                name.parse::<hyptail_core::bounds::BoundId>(),
                Ok(id) if id.is_conjecture()
            );
            conjecture || (t.fails == 0 && t.indeterminate == 0)
        })
    }
}

/// Bounded tracker for the smallest non-negative margins. Ordering ties are
/// broken by arrival order, so the result is independent of thread count as
/// long as candidates arrive in a fixed order.
pub struct NearEqualityTracker {
    entries: Vec<(Dyadic, u64, NearEquality)>,
    seq: u64,
}

impl NearEqualityTracker {
    pub fn new() -> NearEqualityTracker {
        NearEqualityTracker {
            entries: Vec::new(),
            seq: 0,
        }
    }

    pub fn push(&mut self, margin: Dyadic, entry: NearEquality) {
        debug_assert!(!margin.is_negative());
        let seq = self.seq;
        self.seq += 1;
        let key = (margin, seq, entry);
        let pos = self
            .entries
            .partition_point(|(m, s, _)| (m, s) < (&key.0, &key.1));
        self.entries.insert(pos, key);
        self.entries.truncate(NEAR_EQUALITY_CAP);
    }

    pub fn into_vec(self) -> Vec<NearEquality> {
        self.entries.into_iter().map(|(_, _, e)| e).collect()
    }
}

impl Default for NearEqualityTracker {
    fn default() -> Self {
        NearEqualityTracker::new()
    }
}
