//! Grid sweeps: run a set of checks over `(n, i, k)` ranges, stream rows,
//! and fold aggregates.
//!
//! Points are computed in chunks. Inside a chunk the work is distributed
//! over a rayon pool, but results are folded and emitted strictly in grid
//! order, so the output is a pure function of the configuration: the thread
//! count changes the wall time and nothing else.

use crate::grid::{Filter, Grid};
use crate::report::{
    ConjHalfStats, NearEquality, NearEqualityTracker, StatusTotals, SweepReport, SAMPLE_CAP,
};
use crate::row::{rows_for_check, CheckRow, Coords, DECIMAL_DIGITS};
use crate::{CliError, Result};
use hyptail_core::bounds::{
    check_at_hyp_point, check_robbins, conj_half_ratio, BoundCheck, BoundId, Certificate,
    CheckStatus,
};
use hyptail_core::dyadic::{Dyadic, Round};
use hyptail_core::hyp::HypParams;
use hyptail_core::interval::Interval;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

/// Precision for the normalized-ratio enclosures tracked alongside the
/// sharper-constant conjecture. Fixed so the statistics do not move with
/// the certification budget.
pub const CONJ_RATIO_BITS: u32 = 128;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub grid: Grid,
    /// Subset of [`BoundId::GRID`]; deduplicated and put in canonical order.
    pub bounds: Vec<BoundId>,
    pub budget_bits: u32,
    /// Worker threads; 0 picks the rayon default.
    pub threads: usize,
    /// Points per parallel chunk.
    pub chunk_points: usize,
}

impl SweepConfig {
    pub fn new(grid: Grid, bounds: Vec<BoundId>, budget_bits: u32) -> SweepConfig {
        SweepConfig {
            grid,
            bounds,
            budget_bits,
            threads: 1,
            chunk_points: 256,
        }
    }
}

struct PointOutcome {
    n: u64,
    i: u64,
    k: u64,
    checks: Vec<BoundCheck>,
    conj_ratio: Option<Interval>,
}

fn compute_point(
    (n, i, k): (u64, u64, u64),
    bounds: &[BoundId],
    budget_bits: u32,
    robbins_memo: &HashMap<u64, BoundCheck>,
    want_ratio: bool,
) -> Result<PointOutcome> {
    let p = HypParams::new(n, i, k).expect("grid coordinates are valid");
    let mut checks = Vec::with_capacity(bounds.len());
    for &id in bounds {
        let check = if id == BoundId::Robbins {
            robbins_memo
                .get(&n)
                .expect("memo covers every grid n")
                .clone()
        } else {
            check_at_hyp_point(id, &p, budget_bits)?.expect("grid bounds produce checks")
        };
        checks.push(check);
    }
    let conj_ratio = if want_ratio {
        conj_half_ratio(&p, CONJ_RATIO_BITS)?
    } else {
        None
    };
    Ok(PointOutcome {
        n,
        i,
        k,
        checks,
        conj_ratio,
    })
}

struct ConjHalfFold {
    applicable: u64,
    min_lo: Dyadic,
    min_hi: Dyadic,
    argmin: (u64, u64, u64),
}

/// Runs the sweep, handing each row to `on_row` in canonical order.
pub fn run_sweep<F>(cfg: &SweepConfig, mut on_row: F) -> Result<SweepReport>
where
    F: FnMut(&CheckRow) -> Result<()>,
{
    let mut bounds = cfg.bounds.clone();
    bounds.sort();
    bounds.dedup();
    if bounds.is_empty() {
        return Err(CliError::Usage("no bounds selected".into()));
    }
    if let Some(id) = bounds.iter().find(|id| !BoundId::GRID.contains(id)) {
        return Err(CliError::Usage(format!(
            "bound {} is not grid-checkable",
            id
        )));
    }
    let points = cfg.grid.points();
    let want_ratio = bounds.contains(&BoundId::ConjHalf);

    // The factorial envelope depends on n alone; certify it once per n.
    let mut robbins_memo: HashMap<u64, BoundCheck> = HashMap::new();
    if bounds.contains(&BoundId::Robbins) {
        for &(n, _, _) in &points {
            if !robbins_memo.contains_key(&n) {
                robbins_memo.insert(n, check_robbins(n, cfg.budget_bits)?);
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot build thread pool: {}", e)))?;

    let mut totals: BTreeMap<String, StatusTotals> = bounds
        .iter()
        .map(|id| (id.name().to_string(), StatusTotals::default()))
        .collect();
    let mut rows_emitted: u64 = 0;
    let mut failures: Vec<CheckRow> = Vec::new();
    let mut indeterminates: Vec<CheckRow> = Vec::new();
    let mut conjecture_counterexamples: Vec<CheckRow> = Vec::new();
    let mut extremes: BTreeMap<String, NearEqualityTracker> = bounds
        .iter()
        .map(|id| (id.name().to_string(), NearEqualityTracker::new()))
        .collect();
    let mut conj_fold: Option<ConjHalfFold> = None;

    let chunk_points = cfg.chunk_points.max(1);
    for chunk in points.chunks(chunk_points) {
        let outcomes: Vec<PointOutcome> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&pt| compute_point(pt, &bounds, cfg.budget_bits, &robbins_memo, want_ratio))
                .collect::<Result<Vec<_>>>()
        })?;
        for out in outcomes {
            for check in &out.checks {
                let slot = totals
                    .get_mut(check.id.name())
                    .expect("totals were seeded from the bound list");
                match check.status() {
                    CheckStatus::Holds => slot.holds += 1,
                    CheckStatus::Fails => slot.fails += 1,
                    CheckStatus::Indeterminate => slot.indeterminate += 1,
                    CheckStatus::NotApplicable => slot.not_applicable += 1,
                }
                let rows = rows_for_check(Coords::grid(out.n, out.i, out.k), "", check);
                for row in &rows {
                    on_row(row)?;
                    rows_emitted += 1;
                    match row.status.as_str() {
                        "fails" => {
                            // Counterexample lists are only findings if they
                            // are complete, so these are never truncated.
                            if check.id.is_conjecture() {
                                conjecture_counterexamples.push(row.clone());
                            } else {
                                failures.push(row.clone());
                            }
                        }
                        "indeterminate" => {
                            if indeterminates.len() < SAMPLE_CAP {
                                indeterminates.push(row.clone());
                            }
                        }
                        _ => {}
                    }
                }
                for (sv, row) in check.verdicts.iter().zip(&rows) {
                    if let Certificate::Compare(v) = &sv.certificate {
                        if sv.status() == CheckStatus::Holds
                            && !v.margin_lower_bound.is_negative()
                        {
                            extremes
                                .get_mut(check.id.name())
                                .expect("extremes were seeded from the bound list")
                                .push(
                                    v.margin_lower_bound.clone(),
                                    NearEquality {
                                        bound_id: row.bound_id.clone(),
                                        n: out.n,
                                        i: out.i,
                                        k: out.k,
                                        margin: v
                                            .margin_lower_bound
                                            .to_decimal(DECIMAL_DIGITS, Round::Floor),
                                    },
                                );
                        }
                    }
                }
            }
            if let Some(ratio) = &out.conj_ratio {
                match &mut conj_fold {
                    None => {
                        conj_fold = Some(ConjHalfFold {
                            applicable: 1,
                            min_lo: ratio.lo().clone(),
                            min_hi: ratio.hi().clone(),
                            argmin: (out.n, out.i, out.k),
                        });
                    }
                    Some(fold) => {
                        fold.applicable += 1;
                        if *ratio.lo() < fold.min_lo {
                            fold.min_lo = ratio.lo().clone();
                            fold.argmin = (out.n, out.i, out.k);
                        }
                        if *ratio.hi() < fold.min_hi {
                            fold.min_hi = ratio.hi().clone();
                        }
                    }
                }
            }
        }
    }

    let conj_half = conj_fold.map(|f| ConjHalfStats {
        applicable_points: f.applicable,
        min_ratio_lo: f.min_lo.to_decimal(DECIMAL_DIGITS, Round::Floor),
        min_ratio_hi: f.min_hi.to_decimal(DECIMAL_DIGITS, Round::Ceil),
        argmin_n: f.argmin.0,
        argmin_i: f.argmin.1,
        argmin_k: f.argmin.2,
    });

    Ok(SweepReport {
        n_min: cfg.grid.n_min,
        n_max: cfg.grid.n_max,
        i_filter: cfg.grid.i_filter.canon('i'),
        k_filter: cfg.grid.k_filter.canon('k'),
        budget_bits: cfg.budget_bits,
        bounds: bounds.iter().map(|b| b.name().to_string()).collect(),
        points: u64::try_from(points.len()).unwrap(),
        rows: rows_emitted,
        totals,
        failures,
        indeterminates,
        conjecture_counterexamples,
        extremes: extremes
            .into_iter()
            .map(|(name, t)| (name, t.into_vec()))
            .collect(),
        conj_half,
    })
}

/// Sweeps one conjecture over the full `(i, k)` grid up to `n_max`,
/// discarding rows and returning only the aggregate report.
pub fn probe_conjecture(
    id: BoundId,
    n_max: u64,
    budget_bits: u32,
    threads: usize,
) -> Result<SweepReport> {
    if !id.is_conjecture() {
        return Err(CliError::Usage(format!(
            "{} is a theorem-class check, not a conjecture",
            id
        )));
    }
    let grid = Grid::new(1, n_max, Filter::All, Filter::All)?;
    let mut cfg = SweepConfig::new(grid, vec![id], budget_bits);
    cfg.threads = threads;
    run_sweep(&cfg, |_| Ok(()))
}
