//! Sweep grids and the little filter language for their coordinates.
//!
//! A filter constrains one coordinate (`i` or `k`) per value of `n`. The
//! accepted forms, shown for `k`, are:
//!
//! * `all`
//! * `k<=12` (absolute cap)
//! * `k=3` (exact value)
//! * `k<=n/8` or `k<=n` (fractional cap, checked as `8k <= n`)
//! * `n/8<k<=n/4` (half-open fractional window)
//!
//! The variable letter is optional in the single-comparison forms, so
//! `<=n/8` works for either coordinate.

use crate::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    All,
    Le(u64),
    Eq(u64),
    /// `v * den <= n * num`.
    FracLe { num: u64, den: u64 },
    /// `n * lo_num < v * lo_den` and `v * hi_den <= n * hi_num`.
    FracWindow {
        lo_num: u64,
        lo_den: u64,
        hi_num: u64,
        hi_den: u64,
    },
}

impl Filter {
    pub fn admits(&self, v: u64, n: u64) -> bool {
        let v = v as u128;
        let n = n as u128;
        match *self {
            Filter::All => true,
            Filter::Le(c) => v <= c as u128,
            Filter::Eq(c) => v == c as u128,
            Filter::FracLe { num, den } => v * den as u128 <= n * num as u128,
            Filter::FracWindow {
                lo_num,
                lo_den,
                hi_num,
                hi_den,
            } => v * lo_den as u128 > n * lo_num as u128 && v * hi_den as u128 <= n * hi_num as u128,
        }
    }

    /// Canonical text form for the coordinate named `var`; parses back to
    /// the same filter.
    pub fn canon(&self, var: char) -> String {
        fn frac(num: u64, den: u64) -> String {
            match (num, den) {
                (1, 1) => "n".to_string(),
                (1, d) => format!("n/{}", d),
                (m, 1) => format!("{}n", m),
                (m, d) => format!("{}n/{}", m, d),
            }
        }
        match *self {
            Filter::All => "all".to_string(),
            Filter::Le(c) => format!("{}<={}", var, c),
            Filter::Eq(c) => format!("{}={}", var, c),
            Filter::FracLe { num, den } => format!("{}<={}", var, frac(num, den)),
            Filter::FracWindow {
                lo_num,
                lo_den,
                hi_num,
                hi_den,
            } => format!(
                "{}<{}<={}",
                frac(lo_num, lo_den),
                var,
                frac(hi_num, hi_den)
            ),
        }
    }

    /// Parses a filter for the coordinate named `var`.
    pub fn parse(var: char, input: &str) -> Result<Filter> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "all" {
            return Ok(Filter::All);
        }
        let bad = || CliError::Usage(format!("cannot parse {:?} as a filter for {}", input, var));
        // Window form: `<frac> < var <= <frac>`.
        let window_pat = format!("<{}<=", var);
        if let Some(pos) = s.find(&window_pat) {
            let (lo_num, lo_den) = parse_frac(&s[..pos]).ok_or_else(bad)?;
            let (hi_num, hi_den) = parse_frac(&s[pos + window_pat.len()..]).ok_or_else(bad)?;
            return Ok(Filter::FracWindow {
                lo_num,
                lo_den,
                hi_num,
                hi_den,
            });
        }
        // Single comparison, variable prefix optional.
        let rest = s.strip_prefix(var).unwrap_or(&s);
        if let Some(rhs) = rest.strip_prefix("<=") {
            if rhs.starts_with('n') {
                let (num, den) = parse_frac(rhs).ok_or_else(bad)?;
                return Ok(Filter::FracLe { num, den });
            }
            return rhs.parse::<u64>().map(Filter::Le).map_err(|_| bad());
        }
        if let Some(rhs) = rest.strip_prefix('=') {
            return rhs.parse::<u64>().map(Filter::Eq).map_err(|_| bad());
        }
        Err(bad())
    }
}

/// Parses `n` as `(1, 1)` and `n/8` as `(1, 8)`.
fn parse_frac(s: &str) -> Option<(u64, u64)> {
    let rest = s.strip_prefix('n')?;
    if rest.is_empty() {
        return Some((1, 1));
    }
    let den: u64 = rest.strip_prefix('/')?.parse().ok()?;
    if den == 0 {
        return None;
    }
    Some((1, den))
}

/// A rectangular sweep region: `n` in `[n_min, n_max]`, with `i` and `k`
/// each ranging over `1..=n` through their filters.
#[derive(Clone, Debug)]
pub struct Grid {
    pub n_min: u64,
    pub n_max: u64,
    pub i_filter: Filter,
    pub k_filter: Filter,
}

impl Grid {
    pub fn new(n_min: u64, n_max: u64, i_filter: Filter, k_filter: Filter) -> Result<Grid> {
        if n_min < 1 || n_min > n_max {
            return Err(CliError::Usage(format!(
                "need 1 <= n_min <= n_max, got {}..={}",
                n_min, n_max
            )));
        }
        Ok(Grid {
            n_min,
            n_max,
            i_filter,
            k_filter,
        })
    }

    /// All admitted points in the canonical order: `n` ascending, then `k`,
    /// then `i`. This order fixes the row stream and every aggregate fold.
    pub fn points(&self) -> Vec<(u64, u64, u64)> {
        let mut pts = Vec::new();
        for n in self.n_min..=self.n_max {
            for k in 1..=n {
                if !self.k_filter.admits(k, n) {
                    continue;
                }
                for i in 1..=n {
                    if self.i_filter.admits(i, n) {
                        pts.push((n, i, k));
                    }
                }
            }
        }
        pts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(Filter::parse('k', "all").unwrap(), Filter::All);
        assert_eq!(Filter::parse('k', "k<=12").unwrap(), Filter::Le(12));
        assert_eq!(Filter::parse('k', "<=12").unwrap(), Filter::Le(12));
        assert_eq!(Filter::parse('i', "i=1").unwrap(), Filter::Eq(1));
        assert_eq!(
            Filter::parse('k', "k<=n/8").unwrap(),
            Filter::FracLe { num: 1, den: 8 }
        );
        assert_eq!(
            Filter::parse('k', "<=n").unwrap(),
            Filter::FracLe { num: 1, den: 1 }
        );
        assert_eq!(
            Filter::parse('k', "n/8<k<=n/4").unwrap(),
            Filter::FracWindow {
                lo_num: 1,
                lo_den: 8,
                hi_num: 1,
                hi_den: 4
            }
        );
        assert_eq!(Filter::parse('k', " k <= n / 8 ").unwrap(), Filter::FracLe { num: 1, den: 8 });
    }

    #[test]
    fn parse_rejects() {
        for bad in ["", "k", "k<12", "k<=n/0", "k<=x", "n/8<i<=n/4_js", "q<=3", "k>=2"] {
            assert!(Filter::parse('k', bad).is_err(), "{:?}", bad);
        }
        // Window written for the wrong variable.
        assert!(Filter::parse('i', "n/8<k<=n/4").is_err());
    }

    #[test]
    fn canon_round_trips() {
        for text in ["all", "k<=12", "k=3", "k<=n/8", "k<=n", "n/8<k<=n/4"] {
            let f = Filter::parse('k', text).unwrap();
            assert_eq!(f.canon('k'), text);
            assert_eq!(Filter::parse('k', &f.canon('k')).unwrap(), f);
        }
    }

    #[test]
    fn admits_semantics() {
        let f = Filter::parse('k', "k<=n/8").unwrap();
        assert!(f.admits(2, 16));
        assert!(!f.admits(3, 16));
        assert!(f.admits(1, 8));
        assert!(!f.admits(1, 7));
        let w = Filter::parse('k', "n/8<k<=n/4").unwrap();
        assert!(!w.admits(2, 16)); // 2 <= 16/8
        assert!(w.admits(3, 16));
        assert!(w.admits(4, 16));
        assert!(!w.admits(5, 16));
    }

    #[test]
    fn points_order_and_count() {
        let g = Grid::new(2, 3, Filter::All, Filter::All).unwrap();
        assert_eq!(
            g.points(),
            vec![
                (2, 1, 1),
                (2, 2, 1),
                (2, 1, 2),
                (2, 2, 2),
                (3, 1, 1),
                (3, 2, 1),
                (3, 3, 1),
                (3, 1, 2),
                (3, 2, 2),
                (3, 3, 2),
                (3, 1, 3),
                (3, 2, 3),
                (3, 3, 3),
            ]
        );
        let g = Grid::new(1, 16, Filter::Eq(1), Filter::parse('k', "k<=n/8").unwrap()).unwrap();
        // Only n in {8..16} admit k = 1; i is pinned to 1.
        assert_eq!(g.points().len(), 9 + 1); // n = 16 admits k in {1, 2}
        assert!(Grid::new(0, 5, Filter::All, Filter::All).is_err());
        assert!(Grid::new(6, 5, Filter::All, Filter::All).is_err());
    }
}
