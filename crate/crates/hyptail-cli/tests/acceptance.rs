//! The acceptance gate for the whole workspace: one test per criterion,
//! each ending in a single PASS/FAIL line (visible under `--nocapture`;
//! cargo's own per-test status line mirrors it).
//!
//! Exhaustive sweeps use exact rational arithmetic throughout, so every
//! tolerance here is either zero (identities) or a certified enclosure
//! margin. Timed criteria assert generous single-core wall-clock limits.

use hyptail_cli::grid::{Filter, Grid};
use hyptail_cli::report::SweepReport;
use hyptail_cli::smuggler;
use hyptail_cli::sweep::{probe_conjecture, run_sweep, SweepConfig};
use hyptail_core::bounds::{check_robbins, BoundId, CheckStatus};
use hyptail_core::dist::DiscreteDist;
use hyptail_core::expr::{certify, Expr, Relation, VerdictStatus};
use hyptail_core::hyp::{
    bin_dist, hyp_dist, mad_closed_bin, mad_closed_hyp, tail_via_factorial_identity, HypParams,
};
use hyptail_core::orders::{lr_order, st_order};
use num::bigint::BigInt;
use num::traits::Zero;
use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const BUDGET: u32 = 256;

fn conclude(name: &str, ok: bool, detail: &str) {
    println!("{} {}: {}", if ok { "PASS" } else { "FAIL" }, name, detail);
    assert!(ok, "{}: {}", name, detail);
}

fn rat(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn full_grid_sweep(n_max: u64, bounds: Vec<BoundId>) -> SweepReport {
    let grid = Grid::new(1, n_max, Filter::All, Filter::All).unwrap();
    run_sweep(&SweepConfig::new(grid, bounds, BUDGET), |_| Ok(())).unwrap()
}

#[test]
fn c01_theorem1_exhaustive() {
    let start = Instant::now();
    let grid = Grid::new(1, 150, Filter::All, Filter::parse('k', "<=n/8").unwrap()).unwrap();
    let report = run_sweep(&SweepConfig::new(grid, vec![BoundId::Theorem1], BUDGET), |_| {
        Ok(())
    })
    .unwrap();
    let elapsed = start.elapsed();
    let t = &report.totals["theorem1"];
    let ok = t.holds == report.points
        && t.fails == 0
        && t.indeterminate == 0
        && t.not_applicable == 0
        && elapsed.as_secs_f64() < 60.0;
    conclude(
        "criterion 01 theorem1 exhaustive n<=150 k<=n/8",
        ok,
        &format!("{} points hold in {:.2?}", t.holds, elapsed),
    );
}

#[test]
fn c02_theorem2_exhaustive() {
    let start = Instant::now();
    let report = full_grid_sweep(100, vec![BoundId::Theorem2]);
    let elapsed = start.elapsed();
    let t = &report.totals["theorem2"];
    let ok = t.fails == 0 && t.indeterminate == 0 && t.holds > 0 && elapsed.as_secs_f64() < 120.0;
    conclude(
        "criterion 02 theorem2 exhaustive n<=100 at 256 bits",
        ok,
        &format!(
            "{} applicable points hold, {} gated out, in {:.2?}",
            t.holds, t.not_applicable, elapsed
        ),
    );
}

#[test]
fn c03_constant_tail_floor_exhaustive() {
    let report = full_grid_sweep(100, vec![BoundId::Corollary049]);
    let t = &report.totals["corollary049"];
    let ok = t.fails == 0 && t.indeterminate == 0 && t.holds > 0;
    conclude(
        "criterion 03 corollary049 exhaustive n<=100",
        ok,
        &format!("{} applicable points hold", t.holds),
    );
}

#[test]
fn c04_exact_identity_suite() {
    let start = Instant::now();
    let mut mad_checks: u64 = 0;
    let mut factorial_checks: u64 = 0;
    for n in 1..=120u64 {
        for k in 1..=n {
            for i in 1..=k {
                let p = HypParams::new(n, i, k).unwrap();
                let d = hyp_dist(&p);
                let mean = p.mean();
                let tail = d.tail(&mean);
                let tce = d.tce(&mean).unwrap();
                let mad = d.mad(&mean);

                // Closed-form MAD against the direct sum.
                assert_eq!(mad_closed_hyp(&p), mad, "hyp mad at ({},{},{})", n, i, k);
                // Link between MAD, tail mass, and conditional mean.
                assert_eq!(
                    &mad * rat(1, 2),
                    &tail * (&tce - &mean),
                    "mad identity at ({},{},{})",
                    n,
                    i,
                    k
                );

                // Marked-count / draw-count exchange leaves the law fixed.
                let swapped = HypParams::new(n, k, i).unwrap();
                assert_eq!(d, hyp_dist(&swapped), "i<->k swap at ({},{},{})", n, i, k);

                // Marking the other n-i items mirrors the law onto k - H.
                if 2 * i <= n {
                    let comp = HypParams::new(n, n - i, k).unwrap();
                    let dc = hyp_dist(&comp);
                    assert_eq!(
                        d.min_support() + dc.max_support(),
                        i64::try_from(k).unwrap(),
                        "complement support at ({},{},{})",
                        n,
                        i,
                        k
                    );
                    let mut rev = d.masses();
                    rev.reverse();
                    assert_eq!(rev, dc.masses(), "complement masses at ({},{},{})", n, i, k);
                }

                // Binomial closed-form MAD for both companion laws.
                let q = rat(i, n);
                let x = bin_dist(k, &q).unwrap();
                let x_mean = BigRational::from(BigInt::from(k)) * &q;
                assert_eq!(
                    mad_closed_bin(k, &q).unwrap(),
                    x.mad(&x_mean),
                    "bin mad at k={} p={}/{}",
                    k,
                    i,
                    n
                );
                if i != k {
                    let q2 = rat(k, n);
                    let x2 = bin_dist(i, &q2).unwrap();
                    let x2_mean = BigRational::from(BigInt::from(i)) * &q2;
                    assert_eq!(
                        mad_closed_bin(i, &q2).unwrap(),
                        x2.mad(&x2_mean),
                        "bin mad at k={} p={}/{}",
                        i,
                        k,
                        n
                    );
                }
                mad_checks += 1;

                // Tail through the inverse-moment identity, every threshold.
                if n <= 60 {
                    for m in 1..=i {
                        let via = tail_via_factorial_identity(&p, m).unwrap();
                        let direct = d.tail(&BigRational::from(BigInt::from(m)));
                        assert_eq!(via, direct, "factorial tail at ({},{},{}) m={}", n, i, k, m);
                        factorial_checks += 1;
                    }
                }
            }
        }
    }
    conclude(
        "criterion 04 exact identity suite n<=120",
        true,
        &format!(
            "{} points, {} inverse-moment tails, all exactly equal, in {:.2?}",
            mad_checks,
            factorial_checks,
            start.elapsed()
        ),
    );
}

fn random_dist(rng: &mut ChaCha8Rng) -> DiscreteDist {
    loop {
        let len = rng.gen_range(1..=8usize);
        let offset = rng.gen_range(-3..=3i64);
        let w: Vec<BigInt> = (0..len)
            .map(|_| BigInt::from(rng.gen_range(0..=9u32)))
            .collect();
        if w.iter().any(|x| !x.is_zero()) {
            return DiscreteDist::from_weights(offset, w).unwrap();
        }
    }
}

#[test]
fn c05_order_suite() {
    // Exhaustive conditional-comparison chain over the grid.
    let report = full_grid_sweep(100, vec![BoundId::TceConj]);
    let t = &report.totals["tce_conj"];
    let grid_ok = t.holds == report.points && t.fails == 0 && t.indeterminate == 0;

    // Randomized implication checks on small ad-hoc distributions.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0517_ac3e);
    let mut lr_holds: u64 = 0;
    let mut st_holds: u64 = 0;
    for trial in 0..10_000u32 {
        let a = random_dist(&mut rng);
        let b = match trial % 5 {
            // Identical laws: both orders hold reflexively.
            0 => a.clone(),
            // Upward shift: stochastic dominance by construction.
            1 => {
                let masses = a.masses();
                DiscreteDist::from_masses(a.min_support() + rng.gen_range(0..=2i64), &masses)
                    .unwrap()
            }
            _ => random_dist(&mut rng),
        };
        let wlr = lr_order(&a, &b);
        let wst = st_order(&a, &b);
        if wlr.holds {
            lr_holds += 1;
            assert!(wst.holds, "lr without st on trial {}: {:?} {:?}", trial, a, b);
        }
        if wst.holds {
            st_holds += 1;
            assert!(
                a.mean() <= b.mean(),
                "st without mean order on trial {}: {:?} {:?}",
                trial,
                a,
                b
            );
        }
    }
    let coverage_ok = lr_holds > 100 && st_holds >= lr_holds && st_holds > 1000;
    conclude(
        "criterion 05 order suite",
        grid_ok && coverage_ok,
        &format!(
            "tce_conj holds at all {} points; implications checked on 10000 pairs ({} lr, {} st)",
            t.holds, lr_holds, st_holds
        ),
    );
}

#[test]
fn c06_tail_floor_and_binomial_transfer() {
    let start = Instant::now();
    let report = full_grid_sweep(120, vec![BoundId::BerryEsseen, BoundId::Ehm]);
    let be = &report.totals["berry_esseen"];
    let ehm = &report.totals["ehm"];
    let sweep_ok =
        be.fails == 0 && be.indeterminate == 0 && ehm.fails == 0 && ehm.indeterminate == 0;

    // The analytic floor exceeds 1/4 exactly when the variance clears
    // (5583/2500)^2 = 4.98718224. The threshold's reduced denominator
    // carries 5^8, which no variance with n <= 120 can produce, so no grid
    // point sits exactly on it and the strict form is checkable everywhere.
    let threshold = rat(31_169_889, 6_250_000);
    let quarter = rat(1, 4);
    let mut above: u64 = 0;
    let mut remark_ok = true;
    for n in 2..=120u64 {
        for i in 1..=n {
            for k in 1..=n {
                let p = HypParams::new(n, i, k).unwrap();
                let var = p.variance();
                if var <= threshold {
                    continue;
                }
                let rhs = Expr::ratio(1, 2)
                    .sub(Expr::ratio(5583, 10_000).div(Expr::rational(var).sqrt()));
                let v = certify(&quarter, Relation::Lt, &rhs, BUDGET).unwrap();
                if v.status != VerdictStatus::Holds {
                    remark_ok = false;
                }
                above += 1;
            }
        }
    }
    conclude(
        "criterion 06 berry_esseen and ehm n<=120 plus quarter floor",
        sweep_ok && remark_ok && above > 0,
        &format!(
            "{} + {} applicable points hold; floor > 1/4 at all {} high-variance points, in {:.2?}",
            be.holds,
            ehm.holds,
            above,
            start.elapsed()
        ),
    );
}

#[test]
fn c07_single_marked_item_sharpness() {
    let mut checked: u64 = 0;
    for n in 1..=150u64 {
        for k in 1..=n {
            let p = HypParams::new(n, 1, k).unwrap();
            let d = hyp_dist(&p);
            let tail = d.tail(&p.mean());
            let target = rat(k, n);
            assert_eq!(tail, target, "tail at ({},1,{})", n, k);
            let v = certify(&tail, Relation::Ge, &Expr::rational(target), 64).unwrap();
            assert_eq!(v.status, VerdictStatus::Holds);
            assert!(v.margin_lower_bound.is_zero(), "margin at ({},1,{})", n, k);
            assert_eq!(v.precision_used, 0, "exact decision expected");
            checked += 1;
        }
    }
    conclude(
        "criterion 07 sharpness of k/n at i=1",
        true,
        &format!("{} (n,k) pairs with margin exactly zero", checked),
    );
}

#[test]
fn c08_single_item_optimal_for_smuggler() {
    let mut pairs: u64 = 0;
    let mut ok = true;
    for n in 8..=150u64 {
        for k in 1..=n / 8 {
            let result = smuggler::optimize(n, k).unwrap();
            if !result.argmax.contains(&1) {
                ok = false;
                println!("argmax misses i=1 at n={} k={}: {:?}", n, k, result.argmax);
            }
            pairs += 1;
        }
    }
    conclude(
        "criterion 08 smuggler argmax contains i=1 for n>=8k",
        ok,
        &format!("{} (n,k) pairs", pairs),
    );
}

#[test]
fn c09_conjecture_probes() {
    let probe_4k = probe_conjecture(BoundId::Theorem1At4k, 100, BUDGET, 1).unwrap();
    let t4k = &probe_4k.totals["theorem1_at_4k"];
    let a_ok = t4k.fails == 0 && t4k.indeterminate == 0 && t4k.holds > 0;

    let probe_quarter = probe_conjecture(BoundId::ConjQuarter, 100, BUDGET, 1).unwrap();
    let tq = &probe_quarter.totals["conj_quarter"];
    let b_ok = tq.fails == 0 && tq.indeterminate == 0 && tq.holds > 0;

    let probe_half = probe_conjecture(BoundId::ConjHalf, 100, BUDGET, 1).unwrap();
    let th = &probe_half.totals["conj_half"];
    let stats = probe_half.conj_half.as_ref().expect("applicable points exist");
    let min_lo: f64 = stats.min_ratio_lo.parse().unwrap();
    let c_ok = th.fails == 0 && th.indeterminate == 0 && min_lo >= 0.3535;

    conclude(
        "criterion 09 conjecture probes n<=100",
        a_ok && b_ok && c_ok,
        &format!(
            "4k-gate: {} hold; quarter floor: {} hold; half-constant min ratio {} at ({},{},{})",
            t4k.holds, tq.holds, stats.min_ratio_lo, stats.argmin_n, stats.argmin_i, stats.argmin_k
        ),
    );
}

#[test]
fn c10_factorial_envelope_range() {
    let mut ok = true;
    for n in 1..=300u64 {
        let check = check_robbins(n, BUDGET).unwrap();
        if check.status() != CheckStatus::Holds {
            ok = false;
            println!("factorial envelope undecided at n={}", n);
        }
    }
    conclude(
        "criterion 10 factorial envelope strict for n<=300 at 256 bits",
        ok,
        "300 values, both sides strict",
    );
}

#[test]
fn c11_csv_determinism_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let csv = dir.path().join(format!("{}.csv", name));
        let json = dir.path().join(format!("{}.json", name));
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_hyptail"))
            .args([
                "sweep",
                "--n-max",
                "40",
                "--bounds",
                "all",
                "--precision-bits",
                "256",
                "--threads",
                threads,
                "--out",
                csv.to_str().unwrap(),
                "--report",
                json.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "sweep failed: {:?}", out);
        (std::fs::read(csv).unwrap(), std::fs::read(json).unwrap())
    };
    let (csv_one, json_one) = run("1", "one");
    let (csv_two, json_two) = run("2", "two");
    let ok = csv_one == csv_two && json_one == json_two && !csv_one.is_empty();
    conclude(
        "criterion 11 byte-identical output across worker counts",
        ok,
        &format!(
            "full suite n<=40: {} CSV bytes, {} report bytes, threads 1 vs 2",
            csv_one.len(),
            json_one.len()
        ),
    );
}
