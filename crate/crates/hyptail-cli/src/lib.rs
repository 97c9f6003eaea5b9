//! Command-line driver around `hyptail-core`: grid sweeps with streaming
//! row output, an optimizer for the inspection game, and conjecture probes.
//!
//! Everything here is deliberately deterministic: rows are emitted in a
//! fixed point-major order, aggregates are folded in that same order, and
//! all numeric rendering goes through directed dyadic decimals. Two runs
//! over the same grid produce byte-identical row files no matter how many
//! worker threads computed them.

pub mod grid;
pub mod report;
pub mod row;
pub mod smuggler;
pub mod sweep;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] hyptail_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid argument: {0}")]
    Usage(String),
}

impl CliError {
    /// Process exit code for this error: 2 for bad invocations, 3 for I/O
    /// and serialization trouble.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Parses a rational given as `a/b` or a plain integer.
pub fn parse_rational(s: &str) -> Result<num::BigRational> {
    use num::bigint::BigInt;
    use num::traits::Zero;
    use std::str::FromStr;
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim())
            .map_err(|_| CliError::Usage(format!("not an integer: {:?}", t.trim())))
    };
    let q = match s.split_once('/') {
        Some((a, b)) => {
            let den = parse_int(b)?;
            if den.is_zero() {
                return Err(CliError::Usage("zero denominator".into()));
            }
            num::BigRational::new(parse_int(a)?, den)
        }
        None => num::BigRational::from(parse_int(s)?),
    };
    Ok(q)
}
