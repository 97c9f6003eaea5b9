use clap::{Parser, Subcommand, ValueEnum};
use hyptail_cli::grid::{Filter, Grid};
use hyptail_cli::row::{rows_for_check, Coords, CSV_HEADER};
use hyptail_cli::smuggler;
use hyptail_cli::sweep::{probe_conjecture, run_sweep, SweepConfig};
use hyptail_cli::{parse_rational, CliError, Result};
use hyptail_core::bounds::{
    check_at_hyp_point, check_berend_kontorovich, check_greenberg_mohri, check_median_tce,
    check_robbins, check_tce_binom_monotone, BoundCheck, BoundId, CheckStatus,
};
use hyptail_core::hyp::HypParams;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_PRECISION_BITS: u32 = 1024;
const PRECISION_ENV: &str = "HYPTAIL_PRECISION_BITS";

#[derive(Parser)]
#[command(
    name = "hyptail",
    version,
    about = "Certified tail bounds for sampling without replacement"
)]
struct Cli {
    /// Certification budget in bits. Falls back to HYPTAIL_PRECISION_BITS,
    /// then to 1024.
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Certify bounds at one point and print their verdict rows.
    Check {
        /// Bound identifier, e.g. theorem1 or berend_kontorovich. Omitted:
        /// every bound applicable at the (n, i, k) triple.
        #[arg(long)]
        bound: Option<String>,
        /// Population size (hypergeometric and factorial checks).
        #[arg(long)]
        n: Option<u64>,
        /// Number of special items in the population.
        #[arg(long)]
        i: Option<u64>,
        /// Sample size, or trial count for binomial checks.
        #[arg(long)]
        k: Option<u64>,
        /// Success probability as a fraction, e.g. 1/3 (binomial checks).
        #[arg(long)]
        p: Option<String>,
        /// Second success probability (paired binomial checks).
        #[arg(long)]
        q: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run a set of bounds over an (n, i, k) grid and summarize.
    Sweep {
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        /// Comma-separated bound ids, or "all" for every grid-checkable one.
        #[arg(long, alias = "bounds", default_value = "all")]
        checks: String,
        /// Restrict i: "all", "<=12", "=1", "<=n/8", or "n/4<i<=n/2".
        #[arg(long, default_value = "all")]
        i_filter: String,
        /// Restrict k; same forms as --i-filter.
        #[arg(long, default_value = "all")]
        k_filter: String,
        /// Destination for the payload picked by --format; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv streams one row per verdict; json writes the summary report.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Additionally write the JSON summary report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads; 0 uses all cores. The output does not depend on
        /// this.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Find the special-item count that maximizes the evasion probability.
    Optimize {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Scan a conjecture over the full grid up to n-max.
    Probe {
        /// Conjecture id: conj_half, conj_quarter, or theorem1_at_4k.
        #[arg(long)]
        conjecture: String,
        #[arg(long)]
        n_max: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}

fn resolve_precision(flag: Option<u32>) -> Result<u32> {
    if let Some(bits) = flag {
        return Ok(bits);
    }
    match std::env::var(PRECISION_ENV) {
        Ok(s) => s.trim().parse::<u32>().map_err(|_| {
            CliError::Usage(format!(
                "{} must be an unsigned integer, got {:?}",
                PRECISION_ENV, s
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_PRECISION_BITS),
        Err(std::env::VarError::NotUnicode(_)) => Err(CliError::Usage(format!(
            "{} is not valid unicode",
            PRECISION_ENV
        ))),
    }
}

fn need<T>(v: Option<T>, flag: &str, id: BoundId) -> Result<T> {
    v.ok_or_else(|| CliError::Usage(format!("{} requires {}", id, flag)))
}

fn need_rational(v: Option<&str>, flag: &str, id: BoundId) -> Result<num::BigRational> {
    parse_rational(need(v, flag, id)?)
}

fn run_check_point(
    id: BoundId,
    n: Option<u64>,
    i: Option<u64>,
    k: Option<u64>,
    p: Option<&str>,
    q: Option<&str>,
    budget_bits: u32,
) -> Result<BoundCheck> {
    match id {
        BoundId::Robbins => check_robbins(need(n, "--n", id)?, budget_bits).map_err(CliError::from),
        BoundId::BerendKontorovich | BoundId::GreenbergMohri | BoundId::MedianTce => {
            let k = need(k, "--k", id)?;
            let p = need_rational(p, "--p", id)?;
            let check = match id {
                BoundId::BerendKontorovich => check_berend_kontorovich(k, &p, budget_bits)?,
                BoundId::GreenbergMohri => check_greenberg_mohri(k, &p, budget_bits)?,
                _ => check_median_tce(k, &p, budget_bits)?,
            };
            Ok(check)
        }
        BoundId::TceBinomMonotone => {
            let k = need(k, "--k", id)?;
            let p = need_rational(p, "--p", id)?;
            let q = need_rational(q, "--q", id)?;
            Ok(check_tce_binom_monotone(k, &p, &q, budget_bits)?)
        }
        _ => {
            let params = HypParams::new(
                need(n, "--n", id)?,
                need(i, "--i", id)?,
                need(k, "--k", id)?,
            )?;
            Ok(check_at_hyp_point(id, &params, budget_bits)?
                .expect("every non-grid bound is dispatched above"))
        }
    }
}

fn write_json<W: Write, T: serde::Serialize>(mut w: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    Ok(())
}

/// CSV writer with the schema row already emitted, so even a sweep that
/// matches no grid points produces a header-only file.
fn csv_start<W: Write>(w: W) -> Result<csv::Writer<W>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    w.write_record(CSV_HEADER)?;
    Ok(w)
}

fn sink(out: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let budget_bits = resolve_precision(cli.precision_bits)?;
    match cli.command {
        Command::Check {
            bound,
            n,
            i,
            k,
            p,
            q,
            format,
        } => {
            let checks = match bound {
                Some(name) => {
                    let id: BoundId = name.parse()?;
                    vec![run_check_point(id, n, i, k, p.as_deref(), q.as_deref(), budget_bits)?]
                }
                None => {
                    if p.is_some() || q.is_some() {
                        return Err(CliError::Usage(
                            "--p/--q pick a binomial law; pass --bound to use them".into(),
                        ));
                    }
                    let (n, i, k) = match (n, i, k) {
                        (Some(n), Some(i), Some(k)) => (n, i, k),
                        _ => {
                            return Err(CliError::Usage(
                                "check needs --n, --i and --k (or a single --bound)".into(),
                            ))
                        }
                    };
                    let params = HypParams::new(n, i, k)?;
                    let mut checks = Vec::new();
                    for id in BoundId::ALL {
                        if let Some(check) = check_at_hyp_point(id, &params, budget_bits)? {
                            checks.push(check);
                        }
                    }
                    checks
                }
            };
            let mut rows = Vec::new();
            for check in &checks {
                let (coords, extra) = Coords::for_point(&check.point);
                rows.extend(rows_for_check(coords, &extra, check));
            }
            let stdout = io::stdout();
            match format {
                Format::Json => write_json(stdout.lock(), &rows)?,
                Format::Csv => {
                    let mut w = csv_start(stdout.lock())?;
                    for row in &rows {
                        w.serialize(row)?;
                    }
                    w.flush()?;
                }
            }
            let trouble = checks.iter().any(|check| {
                !check.id.is_conjecture()
                    && matches!(
                        check.status(),
                        CheckStatus::Fails | CheckStatus::Indeterminate
                    )
            });
            Ok(if trouble {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Sweep {
            n_min,
            n_max,
            checks,
            i_filter,
            k_filter,
            out,
            format,
            report,
            threads,
        } => {
            let bounds = parse_bounds(&checks)?;
            let grid = Grid::new(
                n_min,
                n_max,
                Filter::parse('i', &i_filter)?,
                Filter::parse('k', &k_filter)?,
            )?;
            let mut cfg = SweepConfig::new(grid, bounds, budget_bits);
            cfg.threads = threads;
            let summary = match format {
                Format::Csv => {
                    let mut w = csv_start(sink(out.as_ref())?)?;
                    let summary = run_sweep(&cfg, |row| {
                        w.serialize(row)?;
                        Ok(())
                    })?;
                    w.flush()?;
                    summary
                }
                Format::Json => {
                    let summary = run_sweep(&cfg, |_| Ok(()))?;
                    write_json(sink(out.as_ref())?, &summary)?;
                    summary
                }
            };
            if let Some(path) = report {
                write_json(BufWriter::new(File::create(&path)?), &summary)?;
            }
            Ok(if summary.clean() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Optimize { n, k } => {
            let result = smuggler::optimize(n, k)?;
            write_json(io::stdout().lock(), &result)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Probe {
            conjecture,
            n_max,
            threads,
        } => {
            let id: BoundId = conjecture.parse()?;
            let summary = probe_conjecture(id, n_max, budget_bits, threads)?;
            write_json(io::stdout().lock(), &summary)?;
            // Counterexamples to a conjecture are findings in the report,
            // not failures of the run.
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_bounds(input: &str) -> Result<Vec<BoundId>> {
    let s = input.trim();
    if s.eq_ignore_ascii_case("all") {
        return Ok(BoundId::GRID.to_vec());
    }
    s.split(',')
        .map(|part| part.trim().parse::<BoundId>().map_err(CliError::from))
        .collect()
}
