//! Flat, serializable rows for check results.
//!
//! One [`CheckRow`] per sub-verdict (or one per gated-out check). All
//! numeric fields are strings: exactly known quantities stay `p/q`
//! rationals, enclosure endpoints and margins are directed 17-digit
//! decimals so a printed lower endpoint never overstates and an upper
//! endpoint never understates.

use hyptail_core::bounds::{BoundCheck, Certificate, CheckPoint};
use hyptail_core::dyadic::Round;
use hyptail_core::expr::RhsValue;
use hyptail_core::orders::Counterexample;
use hyptail_core::rational_to_string;
use serde::{Deserialize, Serialize};

/// Significant digits used for decimal rendering of dyadic endpoints.
pub const DECIMAL_DIGITS: u32 = 17;

/// CSV column order; keep in step with the field order of [`CheckRow`].
/// Written up front so even a rowless file carries the schema.
pub const CSV_HEADER: [&str; 11] = [
    "bound_id",
    "n",
    "i",
    "k",
    "hypotheses_met",
    "status",
    "lhs",
    "rhs_lo",
    "rhs_hi",
    "margin_lower_bound",
    "detail",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    /// Bound name, suffixed `:label` when the check has several verdicts.
    pub bound_id: String,
    pub n: Option<u64>,
    pub i: Option<u64>,
    pub k: Option<u64>,
    pub hypotheses_met: bool,
    pub status: String,
    /// Exact rational, empty for order verdicts and gated-out checks.
    pub lhs: String,
    /// Right-hand side lower endpoint: the exact rational when the
    /// comparison was settled symbolically, else a decimal rounded down.
    pub rhs_lo: String,
    /// Right-hand side upper endpoint; equals `rhs_lo` in the exact case.
    pub rhs_hi: String,
    /// Decimal lower bound on the margin, rounded down.
    pub margin_lower_bound: String,
    pub detail: String,
}

/// Grid coordinates attached to a row; absent fields serialize as blanks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Coords {
    pub n: Option<u64>,
    pub i: Option<u64>,
    pub k: Option<u64>,
}

impl Coords {
    pub fn grid(n: u64, i: u64, k: u64) -> Coords {
        Coords {
            n: Some(n),
            i: Some(i),
            k: Some(k),
        }
    }

    /// Natural coordinates of a standalone check, plus any parameters that
    /// do not fit the three columns (binomial probabilities).
    pub fn for_point(point: &CheckPoint) -> (Coords, String) {
        match point {
            CheckPoint::Hyp { n, i, k } => (Coords::grid(*n, *i, *k), String::new()),
            CheckPoint::Binomial { k, p } => (
                Coords {
                    k: Some(*k),
                    ..Coords::default()
                },
                format!("p={}", rational_to_string(p)),
            ),
            CheckPoint::BinomialPair { k, p, q } => (
                Coords {
                    k: Some(*k),
                    ..Coords::default()
                },
                format!("p={} q={}", rational_to_string(p), rational_to_string(q)),
            ),
            CheckPoint::Factorial { n } => (
                Coords {
                    n: Some(*n),
                    ..Coords::default()
                },
                String::new(),
            ),
        }
    }
}

fn join_detail(extra: &str, base: String) -> String {
    match (extra.is_empty(), base.is_empty()) {
        (true, _) => base,
        (false, true) => extra.to_string(),
        (false, false) => format!("{}; {}", extra, base),
    }
}

/// Flattens one check into rows, one per sub-verdict.
pub fn rows_for_check(coords: Coords, extra_detail: &str, check: &BoundCheck) -> Vec<CheckRow> {
    let base = |bound_id: String| CheckRow {
        bound_id,
        n: coords.n,
        i: coords.i,
        k: coords.k,
        hypotheses_met: check.hypotheses_met,
        status: check.status().name().to_string(),
        lhs: String::new(),
        rhs_lo: String::new(),
        rhs_hi: String::new(),
        margin_lower_bound: String::new(),
        detail: String::new(),
    };
    if !check.hypotheses_met {
        let mut row = base(check.id.name().to_string());
        row.detail = join_detail(extra_detail, format!("unmet: {}", check.unmet.join(", ")));
        return vec![row];
    }
    let labelled = check.verdicts.len() > 1;
    check
        .verdicts
        .iter()
        .map(|sv| {
            let id = if labelled {
                format!("{}:{}", check.id.name(), sv.label)
            } else {
                check.id.name().to_string()
            };
            let mut row = base(id);
            row.status = sv.status().name().to_string();
            match &sv.certificate {
                Certificate::Compare(v) => {
                    row.lhs = rational_to_string(&v.lhs);
                    // Exact right-hand sides stay lossless rationals; only
                    // genuine enclosures fall back to directed decimals.
                    match &v.rhs {
                        RhsValue::Exact(q) => {
                            row.rhs_lo = rational_to_string(q);
                            row.rhs_hi = row.rhs_lo.clone();
                        }
                        RhsValue::Enclosure { .. } => {
                            row.rhs_lo =
                                v.rhs.lo_dyadic().to_decimal(DECIMAL_DIGITS, Round::Floor);
                            row.rhs_hi = v.rhs.hi_dyadic().to_decimal(DECIMAL_DIGITS, Round::Ceil);
                        }
                    }
                    row.margin_lower_bound = v
                        .margin_lower_bound
                        .to_decimal(DECIMAL_DIGITS, Round::Floor);
                    row.detail =
                        join_detail(extra_detail, format!("precision_bits={}", v.precision_used));
                }
                Certificate::Order(w) => {
                    let note = match w.counterexample {
                        None => "order holds".to_string(),
                        Some(Counterexample::Threshold(t)) => {
                            format!("counterexample threshold={}", t)
                        }
                        Some(Counterexample::Pair { lo, hi }) => {
                            format!("counterexample pair=({},{})", lo, hi)
                        }
                    };
                    row.detail = join_detail(extra_detail, note);
                }
            }
            row
        })
        .collect()
}
