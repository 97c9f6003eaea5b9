//! The catalogue of tail, MAD and expectation bounds with certified checks.
//!
//! Every entry follows the same discipline: hypotheses are evaluated in
//! exact integer arithmetic, the asserted inequality is handed to
//! [`certify`](crate::expr::certify) with the measured quantity on the left
//! and a symbolic right-hand side, and the answer comes back as a
//! [`BoundCheck`] carrying the raw verdicts. Nothing in here rounds before
//! the comparison is decided.

use crate::expr::{certify, Expr, Relation, Verdict, VerdictStatus};
use crate::interval::Interval;
use crate::dist::total_variation;
use crate::hyp::{bin_dist, hyp_dist, profile, HypParams};
use crate::orders::{lr_order, st_order, OrderWitness};
use crate::Result;
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use num::BigRational;
use std::fmt;
use std::str::FromStr;

/// Identifiers for every check the library knows how to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundId {
    /// Tail at the mean is at least `k/n` when `n >= 8k`.
    Theorem1,
    /// Variance-shaped lower bound on the tail at the mean.
    Theorem2,
    /// Constant lower bound `49/1000` under mild non-degeneracy.
    Corollary049,
    /// Central-limit style lower bound `1/2 - 0.5583 / sqrt(Var)`.
    BerryEsseen,
    /// Binomial comparison: tail transfer and total-variation cap.
    Ehm,
    /// Variance-shaped lower bound on the mean absolute deviation.
    MadLower,
    /// Upper bound on the conditional expectation above the mean.
    TceUpper,
    /// Lower bound on the central point mass relative to the binomial.
    PointMassRatio,
    /// Two-sided factorial envelope, strict on both sides.
    Robbins,
    /// With mean at most one, the zero class outweighs the upper tail.
    SmallMean1,
    /// With mean at most one, the one class outweighs the upper tail.
    SmallMean2,
    /// Binomial MAD is at least `sqrt(Var/2)` for central `p`.
    BerendKontorovich,
    /// Binomial tail at the mean is at least `1/4` for `p > 1/k`.
    GreenbergMohri,
    /// When the mean is a median, the tail expectation gap is at most one
    /// standard deviation.
    MedianTce,
    /// Conditioned tails order likelihood-ratio-wise, hence stochastically,
    /// hence in tail expectation.
    TceConj,
    /// Binomial tail expectations grow with the success probability at
    /// every threshold.
    TceBinomMonotone,
    /// Conjectured sharper constant `1/(2 sqrt 2)` in the variance-shaped
    /// tail bound.
    ConjHalf,
    /// Conjectured constant lower bound `1/4` under symmetric mean gates.
    ConjQuarter,
    /// Conjectured relaxation of the `k/n` tail bound down to `n >= 4k`.
    Theorem1At4k,
}

impl BoundId {
    /// Every identifier, in canonical order.
    pub const ALL: [BoundId; 19] = [
        BoundId::Theorem1,
        BoundId::Theorem2,
        BoundId::Corollary049,
        BoundId::BerryEsseen,
        BoundId::Ehm,
        BoundId::MadLower,
        BoundId::TceUpper,
        BoundId::PointMassRatio,
        BoundId::Robbins,
        BoundId::SmallMean1,
        BoundId::SmallMean2,
        BoundId::BerendKontorovich,
        BoundId::GreenbergMohri,
        BoundId::MedianTce,
        BoundId::TceConj,
        BoundId::TceBinomMonotone,
        BoundId::ConjHalf,
        BoundId::ConjQuarter,
        BoundId::Theorem1At4k,
    ];

    /// The checks that make sense at a single grid point `(n, i, k)`.
    /// [`BoundId::TceBinomMonotone`] compares two binomials and is driven
    /// separately.
    pub const GRID: [BoundId; 18] = [
        BoundId::Theorem1,
        BoundId::Theorem2,
        BoundId::Corollary049,
        BoundId::BerryEsseen,
        BoundId::Ehm,
        BoundId::MadLower,
        BoundId::TceUpper,
        BoundId::PointMassRatio,
        BoundId::Robbins,
        BoundId::SmallMean1,
        BoundId::SmallMean2,
        BoundId::BerendKontorovich,
        BoundId::GreenbergMohri,
        BoundId::MedianTce,
        BoundId::TceConj,
        BoundId::ConjHalf,
        BoundId::ConjQuarter,
        BoundId::Theorem1At4k,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BoundId::Theorem1 => "theorem1",
            BoundId::Theorem2 => "theorem2",
            BoundId::Corollary049 => "corollary049",
            BoundId::BerryEsseen => "berry_esseen",
            BoundId::Ehm => "ehm",
            BoundId::MadLower => "mad_lower",
            BoundId::TceUpper => "tce_upper",
            BoundId::PointMassRatio => "point_mass_ratio",
            BoundId::Robbins => "robbins",
            BoundId::SmallMean1 => "small_mean1",
            BoundId::SmallMean2 => "small_mean2",
            BoundId::BerendKontorovich => "berend_kontorovich",
            BoundId::GreenbergMohri => "greenberg_mohri",
            BoundId::MedianTce => "median_tce",
            BoundId::TceConj => "tce_conj",
            BoundId::TceBinomMonotone => "tce_binom_monotone",
            BoundId::ConjHalf => "conj_half",
            BoundId::ConjQuarter => "conj_quarter",
            BoundId::Theorem1At4k => "theorem1_at_4k",
        }
    }

    /// Conjecture-class checks report evidence; a failure is a finding,
    /// not an error.
    pub fn is_conjecture(&self) -> bool {
        matches!(
            self,
            BoundId::ConjHalf | BoundId::ConjQuarter | BoundId::Theorem1At4k
        )
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundId {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<BoundId> {
        BoundId::ALL
            .iter()
            .copied()
            .find(|b| b.name() == s)
            .ok_or_else(|| crate::Error::InvalidParams(format!("unknown bound id: {:?}", s)))
    }
}

/// The object a check was evaluated on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckPoint {
    Hyp { n: u64, i: u64, k: u64 },
    Binomial { k: u64, p: BigRational },
    BinomialPair { k: u64, p: BigRational, q: BigRational },
    Factorial { n: u64 },
}

impl CheckPoint {
    fn hyp(p: &HypParams) -> CheckPoint {
        CheckPoint::Hyp {
            n: p.n(),
            i: p.i(),
            k: p.k(),
        }
    }
}

impl fmt::Display for CheckPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckPoint::Hyp { n, i, k } => write!(f, "H({}, {}, {})", n, i, k),
            CheckPoint::Binomial { k, p } => {
                write!(f, "Bin({}, {})", k, crate::rational_to_string(p))
            }
            CheckPoint::BinomialPair { k, p, q } => write!(
                f,
                "Bin({}, {}) vs Bin({}, {})",
                k,
                crate::rational_to_string(p),
                k,
                crate::rational_to_string(q)
            ),
            CheckPoint::Factorial { n } => write!(f, "{}!", n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Holds,
    Fails,
    Indeterminate,
    NotApplicable,
}

impl CheckStatus {
    fn severity(self) -> u8 {
        match self {
            CheckStatus::Holds => 0,
            CheckStatus::Indeterminate => 1,
            CheckStatus::Fails => 2,
            CheckStatus::NotApplicable => 0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CheckStatus::Holds => "holds",
            CheckStatus::Fails => "fails",
            CheckStatus::Indeterminate => "indeterminate",
            CheckStatus::NotApplicable => "not_applicable",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<VerdictStatus> for CheckStatus {
    fn from(v: VerdictStatus) -> CheckStatus {
        match v {
            VerdictStatus::Holds => CheckStatus::Holds,
            VerdictStatus::Fails => CheckStatus::Fails,
            VerdictStatus::Indeterminate => CheckStatus::Indeterminate,
        }
    }
}

/// The evidence behind one sub-verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// A certified numeric comparison.
    Compare(Verdict),
    /// An exact order comparison with an optional counterexample.
    Order(OrderWitness),
}

/// One labelled conclusion inside a check. Most bounds carry exactly one;
/// two-sided or staged bounds carry several.
#[derive(Clone, Debug, PartialEq)]
pub struct SubVerdict {
    pub label: String,
    pub certificate: Certificate,
}

impl SubVerdict {
    fn compare(label: &str, v: Verdict) -> SubVerdict {
        SubVerdict {
            label: label.to_string(),
            certificate: Certificate::Compare(v),
        }
    }

    fn order(label: &str, w: OrderWitness) -> SubVerdict {
        SubVerdict {
            label: label.to_string(),
            certificate: Certificate::Order(w),
        }
    }

    pub fn status(&self) -> CheckStatus {
        match &self.certificate {
            Certificate::Compare(v) => v.status.into(),
            Certificate::Order(w) => {
                if w.holds {
                    CheckStatus::Holds
                } else {
                    CheckStatus::Fails
                }
            }
        }
    }
}

/// Outcome of running one bound at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub id: BoundId,
    pub point: CheckPoint,
    pub hypotheses_met: bool,
    /// Human-readable names of the hypotheses that failed, empty when met.
    pub unmet: Vec<&'static str>,
    /// Empty exactly when the hypotheses are unmet.
    pub verdicts: Vec<SubVerdict>,
}

impl BoundCheck {
    fn not_applicable(id: BoundId, point: CheckPoint, unmet: Vec<&'static str>) -> BoundCheck {
        debug_assert!(!unmet.is_empty());
        BoundCheck {
            id,
            point,
            hypotheses_met: false,
            unmet,
            verdicts: Vec::new(),
        }
    }

    fn decided(id: BoundId, point: CheckPoint, verdicts: Vec<SubVerdict>) -> BoundCheck {
        BoundCheck {
            id,
            point,
            hypotheses_met: true,
            unmet: Vec::new(),
            verdicts,
        }
    }

    fn single(id: BoundId, point: CheckPoint, v: Verdict) -> BoundCheck {
        BoundCheck::decided(id, point, vec![SubVerdict::compare("bound", v)])
    }

    /// The worst sub-verdict, or `NotApplicable` when gated out.
    pub fn status(&self) -> CheckStatus {
        if !self.hypotheses_met {
            return CheckStatus::NotApplicable;
        }
        self.verdicts
            .iter()
            .map(|s| s.status())
            .max_by_key(|s| s.severity())
            .expect("met hypotheses imply at least one verdict")
    }
}

/// Accumulates hypothesis outcomes, remembering the failed ones by name.
struct Gates {
    unmet: Vec<&'static str>,
}

impl Gates {
    fn new() -> Gates {
        Gates { unmet: Vec::new() }
    }

    fn require(&mut self, ok: bool, label: &'static str) -> &mut Gates {
        if !ok {
            self.unmet.push(label);
        }
        self
    }

    fn met(&self) -> bool {
        self.unmet.is_empty()
    }
}

fn bi(v: u64) -> BigInt {
    BigInt::from(v)
}

fn rat(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// `e^{-1/8} / (4 sqrt 2)`, the constant in the variance-shaped tail bound.
fn tail_constant() -> Expr {
    Expr::ratio(-1, 8)
        .exp()
        .div(Expr::lit(4).mul(Expr::lit(2).sqrt()))
}

/// The shared shape `sqrt((n-1)/n) sqrt(Var) / (1 + sqrt(1 + Var (n-1)/(n-k)))`.
/// Callers must have checked `k < n` and `n >= 2`.
fn tail_shape(p: &HypParams) -> Expr {
    let var = p.variance();
    let nm1_over_n = rat(bi(p.n() - 1), bi(p.n()));
    let boost = rat(bi(p.n() - 1), bi(p.n() - p.k()));
    Expr::rational(nm1_over_n)
        .sqrt()
        .mul(Expr::rational(var.clone()).sqrt())
        .div(Expr::lit(1).add(Expr::lit(1).add(Expr::rational(var * boost)).sqrt()))
}

/// Gates shared by the variance-shaped bounds: mean in `[1, min(i,k) - 2]`
/// and `(n-i)(n-k)/n > 1`. The lower mean gate can be made strict.
fn concentration_gates(p: &HypParams, strict_low: bool) -> Gates {
    let mut g = Gates::new();
    let ik = bi(p.i()) * bi(p.k());
    if strict_low {
        g.require(ik > bi(p.n()), "mean > 1");
    } else {
        g.require(ik >= bi(p.n()), "mean >= 1");
    }
    let m = p.i().min(p.k());
    let ik = bi(p.i()) * bi(p.k());
    g.require(
        m >= 3 && ik <= bi(p.n()) * bi(m - 2),
        "mean <= min(i,k) - 2",
    );
    g.require(
        bi(p.n() - p.i()) * bi(p.n() - p.k()) > bi(p.n()),
        "(n-i)(n-k)/n > 1",
    );
    g
}

/// Tail at the mean is at least `k/n` once `n >= 8k`.
pub fn check_theorem1(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let mut g = Gates::new();
    g.require(p.n() as u128 >= 8 * p.k() as u128, "n >= 8k");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(BoundId::Theorem1, point, g.unmet));
    }
    let pr = profile(p);
    let rhs = Expr::rational(rat(bi(p.k()), bi(p.n())));
    let v = certify(&pr.tail_at_mean, Relation::Ge, &rhs, budget_bits)?;
    Ok(BoundCheck::single(BoundId::Theorem1, point, v))
}

/// Variance-shaped lower bound on the tail at the mean.
pub fn check_theorem2(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let g = concentration_gates(p, false);
    if !g.met() {
        return Ok(BoundCheck::not_applicable(BoundId::Theorem2, point, g.unmet));
    }
    let pr = profile(p);
    let rhs = tail_constant().mul(tail_shape(p));
    let v = certify(&pr.tail_at_mean, Relation::Ge, &rhs, budget_bits)?;
    Ok(BoundCheck::single(BoundId::Theorem2, point, v))
}

/// Constant lower bound `49/1000` on the tail at the mean.
pub fn check_corollary049(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let mut g = concentration_gates(p, false);
    g.require(p.n() >= 4, "n >= 4");
    let var = p.variance();
    g.require(var >= BigRational::one(), "variance >= 1");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(
            BoundId::Corollary049,
            point,
            g.unmet,
        ));
    }
    let pr = profile(p);
    let rhs = Expr::ratio(49, 1000);
    let v = certify(&pr.tail_at_mean, Relation::Ge, &rhs, budget_bits)?;
    Ok(BoundCheck::single(BoundId::Corollary049, point, v))
}

/// Central-limit flavoured lower bound `1/2 - 0.5583 / sqrt(Var)`.
pub fn check_berry_esseen(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let var = p.variance();
    let mut g = Gates::new();
    g.require(var.is_positive(), "variance > 0");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(
            BoundId::BerryEsseen,
            point,
            g.unmet,
        ));
    }
    let pr = profile(p);
    let rhs = Expr::ratio(1, 2).sub(Expr::ratio(5583, 10000).div(Expr::rational(var).sqrt()));
    let v = certify(&pr.tail_at_mean, Relation::Ge, &rhs, budget_bits)?;
    Ok(BoundCheck::single(BoundId::BerryEsseen, point, v))
}

/// Binomial comparison sub-verdicts: the tail transfers up to
/// `(k-1)/(n-1)`, and the total variation distance stays below it.
pub fn check_ehm(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let mut g = Gates::new();
    // Variance of the companion binomial, `k (i/n) (1 - i/n)`, at least 1.
    let binvar_num = bi(p.k()) * bi(p.i()) * bi(p.n() - p.i());
    g.require(binvar_num >= bi(p.n()) * bi(p.n()), "k(i/n)(1-i/n) >= 1");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(BoundId::Ehm, point, g.unmet));
    }
    let slack = rat(bi(p.k() - 1), bi(p.n() - 1));
    let h = hyp_dist(p);
    let x = bin_dist(p.k(), &p.binom_p()).expect("i/n lies in [0, 1]");
    let mean = p.mean();
    let tail_h = h.tail(&mean);
    let tail_x = x.tail(&mean);
    let v_tail = certify(
        &tail_h,
        Relation::Ge,
        &Expr::rational(tail_x - &slack),
        budget_bits,
    )?;
    let tv = total_variation(&h, &x);
    let v_tv = certify(&tv, Relation::Le, &Expr::rational(slack), budget_bits)?;
    Ok(BoundCheck::decided(
        BoundId::Ehm,
        point,
        vec![
            SubVerdict::compare("tail", v_tail),
            SubVerdict::compare("tv", v_tv),
        ],
    ))
}

/// Variance-shaped lower bound on the mean absolute deviation.
pub fn check_mad_lower(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let g = concentration_gates(p, true);
    if !g.met() {
        return Ok(BoundCheck::not_applicable(BoundId::MadLower, point, g.unmet));
    }
    let pr = profile(p);
    let inner = rat(bi(p.n() - 1), bi(p.n())) * p.variance();
    let rhs = Expr::ratio(-1, 8)
        .exp()
        .div(Expr::lit(2).mul(Expr::lit(2).sqrt()))
        .mul(Expr::rational(inner).sqrt());
    let v = certify(&pr.mad, Relation::Ge, &rhs, budget_bits)?;
    Ok(BoundCheck::single(BoundId::MadLower, point, v))
}

/// Upper bound on the conditional expectation above the mean.
pub fn check_tce_upper(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let mut g = Gates::new();
    g.require(p.k() < p.n(), "k < n");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(BoundId::TceUpper, point, g.unmet));
    }
    let pr = profile(p);
    let inner = p.variance() * rat(bi(p.n() - 1), bi(p.n() - p.k())) + BigRational::one();
    let rhs = Expr::big(bi(pr.m_star)).add(Expr::rational(inner).sqrt());
    let v = certify(&pr.tce_at_mean, Relation::Le, &rhs, budget_bits)?;
    Ok(BoundCheck::single(BoundId::TceUpper, point, v))
}

/// Lower bound on the central point mass relative to its binomial twin.
pub fn check_point_mass_ratio(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let m = p.m_star();
    let minik = p.i().min(p.k());
    let mut g = Gates::new();
    g.require(m >= 2, "ceil(mean) >= 2");
    g.require(minik >= 4 && m <= minik - 2, "ceil(mean) <= min(i,k) - 2");
    g.require(
        bi(p.n() - p.i()) * bi(p.n() - p.k()) > bi(p.n()),
        "(n-i)(n-k)/n > 1",
    );
    if !g.met() {
        return Ok(BoundCheck::not_applicable(
            BoundId::PointMassRatio,
            point,
            g.unmet,
        ));
    }
    let h = hyp_dist(p);
    let x = bin_dist(p.k(), &p.binom_p()).expect("i/n lies in [0, 1]");
    let m_i64 = i64::try_from(m).unwrap();
    let ratio = h.mass_at(m_i64) / x.mass_at(m_i64);
    let inner = rat(
        bi(p.i()) * bi(p.n() - p.i()) * bi(p.n() - p.k()),
        bi(p.i() - m) * bi(p.n() + m - p.i() - p.k()) * bi(p.n()),
    );
    let rhs = Expr::ratio(-1, 8)
        .exp()
        .div(Expr::lit(2))
        .mul(Expr::rational(inner).sqrt());
    let v = certify(&ratio, Relation::Ge, &rhs, budget_bits)?;
    Ok(BoundCheck::single(BoundId::PointMassRatio, point, v))
}

/// Strict two-sided factorial envelope:
/// `sqrt(2 pi n) (n/e)^n e^{1/(12n+1)} < n! < sqrt(2 pi n) (n/e)^n e^{1/(12n)}`.
pub fn check_robbins(n: u64, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::Factorial { n };
    let mut g = Gates::new();
    g.require(n >= 1, "n >= 1");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(BoundId::Robbins, point, g.unmet));
    }
    let fact = BigRational::from(crate::comb::factorial(n));
    let base = || {
        let two_pi_n = Expr::lit(2).mul(Expr::Pi).mul(Expr::big(bi(n)));
        let n_to_n = Expr::big(num::pow::pow(bi(n), usize::try_from(n).unwrap()));
        two_pi_n.sqrt().mul(n_to_n.div(Expr::big(bi(n)).exp()))
    };
    let lower = base().mul(Expr::rational(rat(BigInt::one(), bi(12 * n + 1))).exp());
    let upper = base().mul(Expr::rational(rat(BigInt::one(), bi(12 * n))).exp());
    let v_lower = certify(&fact, Relation::Gt, &lower, budget_bits)?;
    let v_upper = certify(&fact, Relation::Lt, &upper, budget_bits)?;
    Ok(BoundCheck::decided(
        BoundId::Robbins,
        point,
        vec![
            SubVerdict::compare("lower", v_lower),
            SubVerdict::compare("upper", v_upper),
        ],
    ))
}

fn small_mean_check(p: &HypParams, which: BoundId, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let mut g = Gates::new();
    g.require(bi(p.i()) * bi(p.k()) <= bi(p.n()), "mean <= 1");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(which, point, g.unmet));
    }
    let d = hyp_dist(p);
    let at = if which == BoundId::SmallMean1 { 0 } else { 1 };
    let lhs = d.mass_at(at);
    let two = BigRational::from(BigInt::from(2));
    let rhs = Expr::rational(d.tail(&two));
    let v = certify(&lhs, Relation::Ge, &rhs, budget_bits)?;
    Ok(BoundCheck::single(which, point, v))
}

/// With mean at most one, `P(H = 0) >= P(H >= 2)`.
pub fn check_small_mean1(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    small_mean_check(p, BoundId::SmallMean1, budget_bits)
}

/// With mean at most one, `P(H = 1) >= P(H >= 2)`.
pub fn check_small_mean2(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    small_mean_check(p, BoundId::SmallMean2, budget_bits)
}

/// Binomial MAD lower bound `sqrt(Var/2)` for `p` in `[1/k, 1 - 1/k]`.
pub fn check_berend_kontorovich(k: u64, p: &BigRational, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::Binomial { k, p: p.clone() };
    let mut g = Gates::new();
    g.require(k >= 2, "k >= 2");
    let inv_k = rat(BigInt::one(), bi(k.max(1)));
    g.require(p >= &inv_k, "p >= 1/k");
    g.require(p <= &(BigRational::one() - &inv_k), "p <= 1 - 1/k");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(
            BoundId::BerendKontorovich,
            point,
            g.unmet,
        ));
    }
    let d = bin_dist(k, p)?;
    let mean = BigRational::from(bi(k)) * p;
    let mad = d.mad(&mean);
    let var = BigRational::from(bi(k)) * p * (BigRational::one() - p);
    let rhs = Expr::rational(var / BigRational::from(BigInt::from(2))).sqrt();
    let v = certify(&mad, Relation::Ge, &rhs, budget_bits)?;
    Ok(BoundCheck::single(BoundId::BerendKontorovich, point, v))
}

/// Binomial tail at the mean is at least `1/4` once `p > 1/k`.
pub fn check_greenberg_mohri(k: u64, p: &BigRational, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::Binomial { k, p: p.clone() };
    let mut g = Gates::new();
    g.require(k >= 1, "k >= 1");
    g.require(
        k >= 1 && p > &rat(BigInt::one(), bi(k.max(1))),
        "p > 1/k",
    );
    g.require(p <= &BigRational::one(), "p <= 1");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(
            BoundId::GreenbergMohri,
            point,
            g.unmet,
        ));
    }
    let d = bin_dist(k, p)?;
    let mean = BigRational::from(bi(k)) * p;
    let lhs = d.tail(&mean);
    let v = certify(&lhs, Relation::Ge, &Expr::ratio(1, 4), budget_bits)?;
    Ok(BoundCheck::single(BoundId::GreenbergMohri, point, v))
}

/// When the mean is a median, `tce` at the mean is at most
/// `mean + sqrt(Var)`.
pub fn check_median_tce(k: u64, p: &BigRational, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::Binomial { k, p: p.clone() };
    let mut g = Gates::new();
    g.require(
        p >= &BigRational::zero() && p <= &BigRational::one(),
        "0 <= p <= 1",
    );
    if !g.met() {
        return Ok(BoundCheck::not_applicable(BoundId::MedianTce, point, g.unmet));
    }
    let d = bin_dist(k, p)?;
    let mean = BigRational::from(bi(k)) * p;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let below = d.cdf(mean.floor().to_integer().try_into().unwrap());
    let above = d.tail(&mean);
    let mut g = Gates::new();
    g.require(below >= half && above >= half, "mean is a median");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(BoundId::MedianTce, point, g.unmet));
    }
    let lhs = d.tce(&mean).expect("median gate leaves tail mass");
    let var = BigRational::from(bi(k)) * p * (BigRational::one() - p);
    let rhs = Expr::rational(mean).add(Expr::rational(var).sqrt());
    let v = certify(&lhs, Relation::Le, &rhs, budget_bits)?;
    Ok(BoundCheck::single(BoundId::MedianTce, point, v))
}

/// Conditioned on their upper tails at the mean, the hypergeometric sits
/// below its binomial twin in likelihood ratio, hence stochastically, hence
/// in conditional expectation. No gate: the claim is global.
pub fn check_tce_conj(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let mean = p.mean();
    let h = hyp_dist(p);
    let x = bin_dist(p.k(), &p.binom_p()).expect("i/n lies in [0, 1]");
    let h_star = h.conditional_tail(&mean).expect("tail at mean is nonempty");
    let x_star = x.conditional_tail(&mean).expect("tail at mean is nonempty");
    let w_lr = lr_order(&h_star, &x_star);
    let w_st = st_order(&h_star, &x_star);
    let tce_h = h.tce(&mean).expect("tail at mean is nonempty");
    let tce_x = x.tce(&mean).expect("tail at mean is nonempty");
    let v_tce = certify(&tce_h, Relation::Le, &Expr::rational(tce_x), budget_bits)?;
    Ok(BoundCheck::decided(
        BoundId::TceConj,
        point,
        vec![
            SubVerdict::order("lr", w_lr),
            SubVerdict::order("st", w_st),
            SubVerdict::compare("tce", v_tce),
        ],
    ))
}

/// Binomial tail expectations are monotone in the success probability:
/// for `0 < p <= q < 1` and every threshold `m` in `0..=k`,
/// `tce(Bin(k, p), m) <= tce(Bin(k, q), m)`.
pub fn check_tce_binom_monotone(
    k: u64,
    p: &BigRational,
    q: &BigRational,
    budget_bits: u32,
) -> Result<BoundCheck> {
    let point = CheckPoint::BinomialPair {
        k,
        p: p.clone(),
        q: q.clone(),
    };
    let mut g = Gates::new();
    g.require(p > &BigRational::zero(), "p > 0");
    g.require(p <= q, "p <= q");
    g.require(q < &BigRational::one(), "q < 1");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(
            BoundId::TceBinomMonotone,
            point,
            g.unmet,
        ));
    }
    let dp = bin_dist(k, p)?;
    let dq = bin_dist(k, q)?;
    let mut verdicts = Vec::with_capacity(usize::try_from(k).unwrap() + 1);
    for m in 0..=k {
        let t = BigRational::from(bi(m));
        let lhs = dp.tce(&t).expect("positive p keeps every tail alive");
        let rhs = dq.tce(&t).expect("positive q keeps every tail alive");
        let v = certify(&lhs, Relation::Le, &Expr::rational(rhs), budget_bits)?;
        verdicts.push(SubVerdict::compare(&format!("m={}", m), v));
    }
    Ok(BoundCheck::decided(BoundId::TceBinomMonotone, point, verdicts))
}

/// Conjectured sharper constant `1/(2 sqrt 2)` in the variance-shaped tail
/// bound, under the same gates.
pub fn check_conj_half(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let g = concentration_gates(p, false);
    if !g.met() {
        return Ok(BoundCheck::not_applicable(BoundId::ConjHalf, point, g.unmet));
    }
    let pr = profile(p);
    let rhs = Expr::lit(1)
        .div(Expr::lit(2).mul(Expr::lit(2).sqrt()))
        .mul(tail_shape(p));
    let v = certify(&pr.tail_at_mean, Relation::Ge, &rhs, budget_bits)?;
    Ok(BoundCheck::single(BoundId::ConjHalf, point, v))
}

/// Enclosure of the normalized ratio `tail / shape`, where `shape` is the
/// variance-dependent factor of the tail bound. The infimum of this ratio
/// over a grid is the empirical best constant; the sharper-constant
/// conjecture says it never drops below `1/(2 sqrt 2)`. Returns `None`
/// when the gates are unmet.
pub fn conj_half_ratio(p: &HypParams, precision_bits: u32) -> Result<Option<Interval>> {
    if !concentration_gates(p, false).met() {
        return Ok(None);
    }
    let pr = profile(p);
    let expr = Expr::rational(pr.tail_at_mean).div(tail_shape(p));
    Ok(Some(expr.eval_interval(precision_bits)?))
}

/// Conjectured constant lower bound `1/4` when both the mean and the
/// complementary factor `(n-i)(n-k)/n` are at least `1/2`.
pub fn check_conj_quarter(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let mut g = Gates::new();
    g.require(bi(2) * bi(p.i()) * bi(p.k()) >= bi(p.n()), "mean >= 1/2");
    g.require(
        bi(2) * bi(p.n() - p.i()) * bi(p.n() - p.k()) >= bi(p.n()),
        "(n-i)(n-k)/n >= 1/2",
    );
    if !g.met() {
        return Ok(BoundCheck::not_applicable(
            BoundId::ConjQuarter,
            point,
            g.unmet,
        ));
    }
    let pr = profile(p);
    let v = certify(
        &pr.tail_at_mean,
        Relation::Ge,
        &Expr::ratio(1, 4),
        budget_bits,
    )?;
    Ok(BoundCheck::single(BoundId::ConjQuarter, point, v))
}

/// Conjectured relaxation of the `k/n` tail bound down to `n >= 4k`.
pub fn check_theorem1_at_4k(p: &HypParams, budget_bits: u32) -> Result<BoundCheck> {
    let point = CheckPoint::hyp(p);
    let mut g = Gates::new();
    g.require(p.n() as u128 >= 4 * p.k() as u128, "n >= 4k");
    if !g.met() {
        return Ok(BoundCheck::not_applicable(
            BoundId::Theorem1At4k,
            point,
            g.unmet,
        ));
    }
    let pr = profile(p);
    let rhs = Expr::rational(rat(bi(p.k()), bi(p.n())));
    let v = certify(&pr.tail_at_mean, Relation::Ge, &rhs, budget_bits)?;
    Ok(BoundCheck::single(BoundId::Theorem1At4k, point, v))
}

/// Runs one grid-checkable bound at the point `(n, i, k)`. Binomial bounds
/// use the companion `Bin(k, i/n)`, the factorial envelope uses `n`.
/// Returns `None` for identifiers that are not grid-checkable.
pub fn check_at_hyp_point(
    id: BoundId,
    p: &HypParams,
    budget_bits: u32,
) -> Result<Option<BoundCheck>> {
    let q = p.binom_p();
    let check = match id {
        BoundId::Theorem1 => check_theorem1(p, budget_bits)?,
        BoundId::Theorem2 => check_theorem2(p, budget_bits)?,
        BoundId::Corollary049 => check_corollary049(p, budget_bits)?,
        BoundId::BerryEsseen => check_berry_esseen(p, budget_bits)?,
        BoundId::Ehm => check_ehm(p, budget_bits)?,
        BoundId::MadLower => check_mad_lower(p, budget_bits)?,
        BoundId::TceUpper => check_tce_upper(p, budget_bits)?,
        BoundId::PointMassRatio => check_point_mass_ratio(p, budget_bits)?,
        BoundId::Robbins => check_robbins(p.n(), budget_bits)?,
        BoundId::SmallMean1 => check_small_mean1(p, budget_bits)?,
        BoundId::SmallMean2 => check_small_mean2(p, budget_bits)?,
        BoundId::BerendKontorovich => check_berend_kontorovich(p.k(), &q, budget_bits)?,
        BoundId::GreenbergMohri => check_greenberg_mohri(p.k(), &q, budget_bits)?,
        BoundId::MedianTce => check_median_tce(p.k(), &q, budget_bits)?,
        BoundId::TceConj => check_tce_conj(p, budget_bits)?,
        BoundId::TceBinomMonotone => return Ok(None),
        BoundId::ConjHalf => check_conj_half(p, budget_bits)?,
        BoundId::ConjQuarter => check_conj_quarter(p, budget_bits)?,
        BoundId::Theorem1At4k => check_theorem1_at_4k(p, budget_bits)?,
    };
    Ok(Some(check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{Dyadic, Round};
    use crate::expr::RhsValue;
    use std::cmp::Ordering;

    const BUDGET: u32 = 1024;

    fn params(n: u64, i: u64, k: u64) -> HypParams {
        HypParams::new(n, i, k).unwrap()
    }

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    /// Parses a decimal literal into an exact rational.
    fn dec(s: &str) -> BigRational {
        let neg = s.starts_with('-');
        let body = s.trim_start_matches('-');
        let (int_part, frac_part) = match body.split_once('.') {
            Some((a, b)) => (a, b),
            None => (body, ""),
        };
        let digits: String = format!("{}{}", int_part, frac_part);
        let num = BigInt::from_str(&digits).unwrap();
        let den = num::pow::pow(BigInt::from(10), frac_part.len());
        let q = BigRational::new(num, den);
        if neg {
            -q
        } else {
            q
        }
    }

    fn single_verdict(c: &BoundCheck) -> &Verdict {
        assert_eq!(c.verdicts.len(), 1);
        match &c.verdicts[0].certificate {
            Certificate::Compare(v) => v,
            Certificate::Order(_) => panic!("expected a comparison certificate"),
        }
    }

    fn assert_rhs_encloses(v: &Verdict, reference: &str) {
        let q = dec(reference);
        let tol = BigRational::new(
            BigInt::one(),
            num::pow::pow(
                BigInt::from(10),
                reference.split('.').nth(1).map_or(0, |f| f.len()),
            ),
        );
        let lo = v.rhs.lo_dyadic();
        let hi = v.rhs.hi_dyadic();
        assert!(
            lo.cmp_rational(&(&q + &tol)) != Ordering::Greater,
            "enclosure low end {} above reference {}",
            lo,
            reference
        );
        assert!(
            hi.cmp_rational(&(&q - &tol)) != Ordering::Less,
            "enclosure high end {} below reference {}",
            hi,
            reference
        );
    }

    #[test]
    fn bound_id_round_trips() {
        for id in BoundId::ALL {
            assert_eq!(BoundId::from_str(id.name()).unwrap(), id);
        }
        assert!(BoundId::from_str("nope").is_err());
        assert_eq!(BoundId::ALL.len(), BoundId::GRID.len() + 1);
        assert!(BoundId::ConjHalf.is_conjecture());
        assert!(BoundId::ConjQuarter.is_conjecture());
        assert!(BoundId::Theorem1At4k.is_conjecture());
        assert!(!BoundId::Theorem1.is_conjecture());
        assert!(!BoundId::TceConj.is_conjecture());
    }

    #[test]
    fn theorem1_exact_at_margin() {
        // At (16, 1, 2) the tail equals k/n exactly: margin zero, settled
        // by rational arithmetic alone.
        let c = check_theorem1(&params(16, 1, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.precision_used, 0);
        assert!(v.margin_lower_bound.is_zero());
        assert_eq!(v.rhs, RhsValue::Exact(ratio(1, 8)));
    }

    #[test]
    fn theorem1_gate() {
        let c = check_theorem1(&params(10, 2, 3), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert_eq!(c.unmet, vec!["n >= 8k"]);
        assert!(c.verdicts.is_empty());
    }

    #[test]
    fn theorem2_at_20_10_4() {
        let c = check_theorem2(&params(20, 10, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.lhs, ratio(3435, 4845));
        assert_eq!(v.precision_used, 64);
        assert_rhs_encloses(v, "0.0577972944006636902089072811660528566658900597");
        assert!(v.margin_lower_bound > Dyadic::from_rational(&dec("0.65"), 96, Round::Floor));
    }

    #[test]
    fn theorem2_at_30_15_6() {
        let c = check_theorem2(&params(30, 15, 6), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.lhs, ratio(176, 261));
        assert_rhs_encloses(v, "0.0662090656835820940254811895687543650717797459");
    }

    #[test]
    fn theorem2_gate_small_window() {
        // min(i, k) - 2 = 0 leaves no room for the mean.
        let c = check_theorem2(&params(12, 6, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert_eq!(c.unmet, vec!["mean <= min(i,k) - 2"]);
    }

    #[test]
    fn corollary049_at_30_15_6() {
        let c = check_corollary049(&params(30, 15, 6), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.precision_used, 0);
        assert_eq!(v.lhs, ratio(176, 261));
        assert_eq!(v.rhs, RhsValue::Exact(ratio(49, 1000)));
    }

    #[test]
    fn corollary049_variance_gate() {
        // (20, 10, 4) passes the window gates but Var = 16/19 < 1.
        let c = check_corollary049(&params(20, 10, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert_eq!(c.unmet, vec!["variance >= 1"]);
    }

    #[test]
    fn berry_esseen_at_20_10_4() {
        let c = check_berry_esseen(&params(20, 10, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_rhs_encloses(v, "-0.108393320044689511053476760397205855624047323");
    }

    #[test]
    fn berry_esseen_degenerate_gate() {
        // Drawing every item pins the count: variance zero.
        let c = check_berry_esseen(&params(9, 4, 9), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert_eq!(c.unmet, vec!["variance > 0"]);
    }

    #[test]
    fn ehm_at_8_4_4() {
        let c = check_ehm(&params(8, 4, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        assert_eq!(c.verdicts.len(), 2);
        assert_eq!(c.verdicts[0].label, "tail");
        assert_eq!(c.verdicts[1].label, "tv");
        let Certificate::Compare(v_tail) = &c.verdicts[0].certificate else {
            panic!()
        };
        assert_eq!(v_tail.lhs, ratio(53, 70));
        assert_eq!(v_tail.rhs, RhsValue::Exact(ratio(29, 112)));
        let Certificate::Compare(v_tv) = &c.verdicts[1].certificate else {
            panic!()
        };
        assert_eq!(v_tv.lhs, ratio(39, 280));
        assert_eq!(v_tv.rhs, RhsValue::Exact(ratio(3, 7)));
        assert_eq!(v_tv.precision_used, 0);
    }

    #[test]
    fn ehm_gate() {
        // k (i/n)(1 - i/n) = 3 * (2/10)(8/10) = 12/25 < 1.
        let c = check_ehm(&params(10, 2, 3), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert_eq!(c.unmet, vec!["k(i/n)(1-i/n) >= 1"]);
    }

    #[test]
    fn mad_lower_at_20_10_4() {
        let c = check_mad_lower(&params(20, 10, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.lhs, ratio(216, 323));
        assert_rhs_encloses(v, "0.279070024021105654156663522665643545609773748");
    }

    #[test]
    fn mad_lower_at_30_15_6() {
        let c = check_mad_lower(&params(30, 15, 6), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.lhs, ratio(364, 435));
        assert_rhs_encloses(v, "0.341789580678976711015833434630847302827799408");
    }

    #[test]
    fn mad_lower_strict_gate() {
        // Mean exactly one is excluded: the gate is strict below.
        let c = check_mad_lower(&params(16, 4, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert!(c.unmet.contains(&"mean > 1"));
    }

    #[test]
    fn tce_upper_at_20_10_4() {
        // Var (n-1)/(n-k) is exactly one here, so the bound is m* + sqrt 2.
        let c = check_tce_upper(&params(20, 10, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.lhs, ratio(566, 229));
        assert_rhs_encloses(v, "3.41421356237309504880168872420969807856967188");
    }

    #[test]
    fn tce_upper_full_draw_gate() {
        let c = check_tce_upper(&params(5, 3, 5), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert_eq!(c.unmet, vec!["k < n"]);
    }

    #[test]
    fn point_mass_ratio_at_20_10_4() {
        let c = check_point_mass_ratio(&params(20, 10, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.lhs, ratio(360, 323));
        assert_rhs_encloses(v, "0.493330766028041293218097606247186573676942334");
    }

    #[test]
    fn point_mass_ratio_gate() {
        // ceil(mean) = 1 at (12, 6, 2).
        let c = check_point_mass_ratio(&params(12, 6, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert!(c.unmet.contains(&"ceil(mean) >= 2"));
    }

    #[test]
    fn robbins_small_n() {
        for n in 1..=12 {
            let c = check_robbins(n, 256).unwrap();
            assert_eq!(c.status(), CheckStatus::Holds, "n = {}", n);
            assert_eq!(c.verdicts.len(), 2);
            assert_eq!(c.verdicts[0].label, "lower");
            assert_eq!(c.verdicts[1].label, "upper");
        }
    }

    #[test]
    fn robbins_n1_enclosures() {
        let c = check_robbins(1, 256).unwrap();
        let Certificate::Compare(v_lower) = &c.verdicts[0].certificate else {
            panic!()
        };
        assert_eq!(v_lower.lhs, ratio(1, 1));
        assert_rhs_encloses(v_lower, "0.995870161462797250212006133211458395599603904");
        let Certificate::Compare(v_upper) = &c.verdicts[1].certificate else {
            panic!()
        };
        assert_rhs_encloses(v_upper, "1.00227444918222665850506387823241500445737456");
    }

    #[test]
    fn small_mean_equality_point() {
        // At (6, 2, 3): P(0) = P(H >= 2) = 1/5, so the first check holds
        // with margin exactly zero.
        let c1 = check_small_mean1(&params(6, 2, 3), BUDGET).unwrap();
        assert_eq!(c1.status(), CheckStatus::Holds);
        let v = single_verdict(&c1);
        assert_eq!(v.lhs, ratio(1, 5));
        assert!(v.margin_lower_bound.is_zero());
        let c2 = check_small_mean2(&params(6, 2, 3), BUDGET).unwrap();
        assert_eq!(single_verdict(&c2).lhs, ratio(3, 5));
        assert_eq!(c2.status(), CheckStatus::Holds);
    }

    #[test]
    fn small_mean_gate() {
        let c = check_small_mean1(&params(10, 5, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert_eq!(c.unmet, vec!["mean <= 1"]);
    }

    #[test]
    fn berend_kontorovich_equality_case() {
        // Bin(2, 1/2): mad = 1/2 and sqrt(Var/2) = sqrt(1/4) folds to 1/2.
        let c = check_berend_kontorovich(2, &ratio(1, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.precision_used, 0, "perfect square should fold");
        assert!(v.margin_lower_bound.is_zero());
        assert_eq!(v.rhs, RhsValue::Exact(ratio(1, 2)));
    }

    #[test]
    fn berend_kontorovich_interior_case() {
        let c = check_berend_kontorovich(5, &ratio(2, 5), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.lhs, ratio(2592, 3125));
        assert_rhs_encloses(v, "0.774596669241483377035853079956479922166584341");
    }

    #[test]
    fn berend_kontorovich_gates() {
        let c = check_berend_kontorovich(5, &ratio(1, 6), BUDGET).unwrap();
        assert_eq!(c.unmet, vec!["p >= 1/k"]);
        let c = check_berend_kontorovich(5, &ratio(9, 10), BUDGET).unwrap();
        assert_eq!(c.unmet, vec!["p <= 1 - 1/k"]);
        let c = check_berend_kontorovich(1, &ratio(1, 2), BUDGET).unwrap();
        assert!(c.unmet.contains(&"k >= 2"));
    }

    #[test]
    fn greenberg_mohri_cases() {
        let c = check_greenberg_mohri(3, &ratio(1, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        assert_eq!(single_verdict(&c).lhs, ratio(1, 2));
        // p = 1/k is outside the strict gate.
        let c = check_greenberg_mohri(3, &ratio(1, 3), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert_eq!(c.unmet, vec!["p > 1/k"]);
    }

    #[test]
    fn median_tce_cases() {
        // Bin(4, 1/2): Var = 1, the square root folds, everything exact.
        let c = check_median_tce(4, &ratio(1, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.lhs, ratio(28, 11));
        assert_eq!(v.precision_used, 0);
        assert_eq!(v.rhs, RhsValue::Exact(ratio(3, 1)));
        // Bin(3, 1/2): the half-integer mean is still a median.
        let c = check_median_tce(3, &ratio(1, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        assert_eq!(single_verdict(&c).lhs, ratio(9, 4));
        // Bin(2, 1/4): the upper tail at the mean is below one half.
        let c = check_median_tce(2, &ratio(1, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert_eq!(c.unmet, vec!["mean is a median"]);
    }

    #[test]
    fn tce_conj_at_4_2_2() {
        let c = check_tce_conj(&params(4, 2, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        assert_eq!(c.verdicts.len(), 3);
        assert_eq!(c.verdicts[0].label, "lr");
        assert_eq!(c.verdicts[1].label, "st");
        assert_eq!(c.verdicts[2].label, "tce");
        let Certificate::Compare(v) = &c.verdicts[2].certificate else {
            panic!()
        };
        assert_eq!(v.lhs, ratio(6, 5));
        assert_eq!(v.rhs, RhsValue::Exact(ratio(4, 3)));
    }

    #[test]
    fn tce_binom_monotone_small() {
        let c = check_tce_binom_monotone(2, &ratio(1, 4), &ratio(1, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        assert_eq!(c.verdicts.len(), 3);
        let expect = [
            (ratio(1, 2), ratio(1, 1)),
            (ratio(8, 7), ratio(4, 3)),
            (ratio(2, 1), ratio(2, 1)),
        ];
        for (sv, (lhs, rhs)) in c.verdicts.iter().zip(expect) {
            let Certificate::Compare(v) = &sv.certificate else {
                panic!()
            };
            assert_eq!(v.lhs, lhs);
            assert_eq!(v.rhs, RhsValue::Exact(rhs));
        }
        // Equality at the top threshold: margin exactly zero.
        let Certificate::Compare(top) = &c.verdicts[2].certificate else {
            panic!()
        };
        assert!(top.margin_lower_bound.is_zero());
        let c = check_tce_binom_monotone(2, &ratio(1, 2), &ratio(1, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
        assert_eq!(c.unmet, vec!["p <= q"]);
    }

    #[test]
    fn conj_half_at_20_10_4() {
        let c = check_conj_half(&params(20, 10, 4), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_rhs_encloses(v, "0.130985829483120006081945379302983393716168158");
    }

    #[test]
    fn conj_half_ratio_encloses_reference() {
        // tail / shape at (20, 10, 4): (3435/4845) / 0.370483873..., with a
        // tolerance of one ulp in the reference's last digit since the
        // enclosure itself is far tighter than 45 decimals.
        let iv = conj_half_ratio(&params(20, 10, 4), 128).unwrap().unwrap();
        let reference = &ratio(3435, 4845) / dec("0.370483873067435854235887950280576919311574712");
        let tol = BigRational::new(BigInt::one(), num::pow::pow(BigInt::from(10), 44));
        assert!(iv.lo().cmp_rational(&(&reference + &tol)) != Ordering::Greater);
        assert!(iv.hi().cmp_rational(&(&reference - &tol)) != Ordering::Less);
        // Coarse sanity: the ratio sits just above 1.91.
        assert!(iv.lo().cmp_rational(&dec("1.91")) == Ordering::Greater);
        assert!(iv.hi().cmp_rational(&dec("1.92")) == Ordering::Less);
        // Gated-out points answer None.
        assert!(conj_half_ratio(&params(12, 6, 2), 128).unwrap().is_none());
    }

    #[test]
    fn conj_quarter_at_4_2_2() {
        let c = check_conj_quarter(&params(4, 2, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.lhs, ratio(5, 6));
        assert_eq!(v.precision_used, 0);
    }

    #[test]
    fn theorem1_at_4k_boundary() {
        // n = 4k exactly, and the tail equals k/n: margin zero.
        let c = check_theorem1_at_4k(&params(8, 1, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::Holds);
        let v = single_verdict(&c);
        assert_eq!(v.lhs, ratio(1, 4));
        assert!(v.margin_lower_bound.is_zero());
        let c = check_theorem1_at_4k(&params(7, 1, 2), BUDGET).unwrap();
        assert_eq!(c.status(), CheckStatus::NotApplicable);
    }

    #[test]
    fn grid_dispatch_covers_everything() {
        let p = params(20, 10, 4);
        for id in BoundId::GRID {
            let c = check_at_hyp_point(id, &p, BUDGET).unwrap();
            let c = c.expect("grid ids produce checks");
            assert_eq!(c.id, id);
        }
        assert!(check_at_hyp_point(BoundId::TceBinomMonotone, &p, BUDGET)
            .unwrap()
            .is_none());
    }

    #[test]
    fn grid_smoke_exhaustive_tiny() {
        // Every bound on every point with n <= 12: nothing fails, nothing
        // stays undecided, conjectures included.
        for n in 1..=12 {
            for i in 1..=n {
                for k in 1..=n {
                    let p = params(n, i, k);
                    for id in BoundId::GRID {
                        let c = check_at_hyp_point(id, &p, 512).unwrap().unwrap();
                        let s = c.status();
                        assert!(
                            s == CheckStatus::Holds || s == CheckStatus::NotApplicable,
                            "{} at ({}, {}, {}): {:?}",
                            id,
                            n,
                            i,
                            k,
                            s
                        );
                    }
                }
            }
        }
    }
}
