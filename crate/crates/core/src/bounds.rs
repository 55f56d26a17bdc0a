//! Closed-form bounds on `p_λ(r, ℓ₁, ℓ₂, m)`, the probability that a uniformly
//! random presentation with `r` generators and `m` cyclically reduced
//! relators of lengths in `[ℓ₁, ℓ₂]` is power-free, minimal and `C'(λ)`.
//!
//! * [`lower_bound`]: `1 - m·NC¹/CR - C(m,2)·NC²/CR²` with the exact lemma
//!   bounds, clamped at 0.
//! * [`lower_bound_rough`]: `1 - 8m²rℓ₂²(ℓ₂-ℓ₁+1)(2r-1)^{-λℓ₂-1}`.
//! * [`upper_bound`]: the product bound for equal-length relators, built by
//!   counting the choices left for each relator once the earlier ones fix
//!   `2(i-1)ℓ` forbidden prefixes of length `⌈λℓ⌉`.
//! * [`upper_bound_rough`]: its `m' = ⌊m/2⌋` simplification.
//!
//! Values are exact rationals unless `(2r-1)^{ℓ₂}` exceeds the configured
//! bit budget, in which case they are evaluated in log domain.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::checker::Lambda;
use crate::counting::{cr, cr_excess_ln, cr_range_ln, fr, nc1, nc1_range_ln, nc2, nc2_ln};
use crate::error::{Error, Result};
use crate::numeric::{log_sub_exp, log_sum_exp, pow, ratio_ln, ratio_to_f64};

/// Coordinates of a bound evaluation or an experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParamPoint {
    pub r: u32,
    pub l1: u32,
    pub l2: u32,
    pub m: u32,
    pub lambda: Lambda,
}

impl ParamPoint {
    pub fn new(r: u32, l1: u32, l2: u32, m: u32, lambda: Lambda) -> Result<ParamPoint> {
        let p = ParamPoint { r, l1, l2, m, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn equal_length(r: u32, len: u32, m: u32, lambda: Lambda) -> Result<ParamPoint> {
        ParamPoint::new(r, len, len, m, lambda)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r < 2 {
            return Err(Error::InvalidRank(self.r));
        }
        if self.l1 < 1 || self.l1 > self.l2 {
            return Err(Error::InvalidParams(format!("need 1 ≤ ℓ1 ≤ ℓ2, got [{}, {}]", self.l1, self.l2)));
        }
        if self.m < 1 {
            return Err(Error::InvalidParams("need at least one relator".into()));
        }
        Ok(())
    }

    pub fn is_equal_length(&self) -> bool {
        self.l1 == self.l2
    }
}

/// A probability bound, exact or as a natural log (`-inf` encodes 0).
#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Exact(BigRational),
    Log(f64),
}

impl BoundValue {
    pub fn zero() -> BoundValue {
        BoundValue::Exact(BigRational::zero())
    }

    pub fn one() -> BoundValue {
        BoundValue::Exact(BigRational::one())
    }

    pub fn ln(&self) -> f64 {
        match self {
            BoundValue::Exact(q) => ratio_ln(q),
            BoundValue::Log(l) => *l,
        }
    }

    pub fn log10(&self) -> f64 {
        self.ln() / std::f64::consts::LN_10
    }

    /// As a probability; underflows to 0.
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(q) => ratio_to_f64(q),
            BoundValue::Log(l) => l.exp(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            BoundValue::Exact(q) => q.is_zero(),
            BoundValue::Log(l) => *l == f64::NEG_INFINITY,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            BoundValue::Exact(q) => Some(q),
            BoundValue::Log(_) => None,
        }
    }

    pub fn mode(&self) -> EvalMode {
        match self {
            BoundValue::Exact(_) => EvalMode::Exact,
            BoundValue::Log(_) => EvalMode::Log,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundNote {
    /// An informative value.
    Proper,
    /// The formula went to or below 0 and was clamped; says nothing.
    Vacuous,
    /// `FR(r, ⌈λℓ⌉) < 2mℓ`: the probability is provably 0.
    ZeroClause,
    /// `m' = 0`: empty product, trivially 1.
    EmptyProduct,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bound {
    pub value: BoundValue,
    pub note: BoundNote,
}

impl Bound {
    fn proper(value: BoundValue) -> Bound {
        Bound { value, note: BoundNote::Proper }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    #[default]
    Auto,
    Exact,
    Log,
}

/// Which formula bounds the first `⌈λℓ⌉`-block of a relator in the upper bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaFirst {
    /// `FR(r, ⌈λℓ⌉) - 2(i-1)ℓ`.
    #[default]
    Statement,
    /// `FR(r, ℓ) - 2(i-1)ℓ`.
    Proof,
}

/// Cap on the number of choices for the first block when the remainder
/// `s = ℓ mod ⌈λℓ⌉` is zero, i.e. when the block starts the relator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FirstBlockCap {
    /// `FR(r, ⌈λℓ⌉)`: the block has no predecessor, so all `2r` first letters are possible.
    #[default]
    FreelyReduced,
    /// `(2r-1)^{⌈λℓ⌉}` for every block. Undercounts when `s = 0` and is then
    /// not a valid upper bound (e.g. `r=2, ℓ=2, m=1, λ=1/6` gives 1/2 < 2/3).
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundOptions {
    pub mode: EvalMode,
    /// `Auto` uses exact arithmetic while `(2r-1)^{ℓ₂}` has at most this many
    /// bits and a product of `m` such numbers at most 64 times as many.
    pub exact_bits_limit: u64,
    pub alpha_first: AlphaFirst,
    pub first_block: FirstBlockCap,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions {
            mode: EvalMode::Auto,
            exact_bits_limit: 4096,
            alpha_first: AlphaFirst::Statement,
            first_block: FirstBlockCap::FreelyReduced,
        }
    }
}

impl BoundOptions {
    /// `factors` is the number of `(2r-1)^{ℓ₂}`-sized numbers multiplied together.
    fn use_exact(&self, r: u32, l2: u32, factors: u64) -> bool {
        match self.mode {
            EvalMode::Exact => true,
            EvalMode::Log => false,
            EvalMode::Auto => {
                let bits = (l2 as f64) * ((2 * r - 1) as f64).log2();
                let limit = self.exact_bits_limit as f64;
                bits <= limit && bits * factors.max(1) as f64 <= EXACT_PRODUCT_FACTOR * limit
            }
        }
    }
}

/// `Auto` also falls back to logs once a product of bounds would exceed this
/// multiple of `exact_bits_limit`.
const EXACT_PRODUCT_FACTOR: f64 = 64.0;

fn ln_base(r: u32) -> f64 {
    ((2 * r - 1) as f64).ln()
}

fn big(x: BigUint) -> BigInt {
    BigInt::from(x)
}

fn rat(x: BigUint) -> BigRational {
    BigRational::from_integer(big(x))
}

/// `p≤_λ(r, ℓ₁, ℓ₂, m)`.
pub fn lower_bound(params: &ParamPoint, opts: &BoundOptions) -> Result<Bound> {
    params.validate()?;
    let ParamPoint { r, l1, l2, m, lambda } = *params;
    let (l1, l2) = (l1 as u64, l2 as u64);
    let pairs = m as u64 * (m as u64 - 1) / 2;
    if opts.use_exact(r, l2 as u32, 2) {
        let total: BigUint = (l1..=l2).map(|l| cr(r, l)).sum();
        let nc1_sum: BigUint = (l1..=l2).map(|l| nc1(r, l, lambda)).sum();
        let single = BigRational::new(big(nc1_sum * m), big(total.clone()));
        let double = BigRational::new(big(nc2(r, l1, l2, lambda) * pairs), big(&total * &total));
        let v = BigRational::one() - single - double;
        if v.is_positive() {
            Ok(Bound::proper(BoundValue::Exact(v)))
        } else {
            Ok(Bound { value: BoundValue::zero(), note: BoundNote::Vacuous })
        }
    } else {
        let total = cr_range_ln(r, l1, l2);
        let single = (m as f64).ln() + nc1_range_ln(r, l1, l2, lambda) - total;
        let double = if pairs == 0 { f64::NEG_INFINITY } else { (pairs as f64).ln() + nc2_ln(r, l1, l2, lambda) - 2.0 * total };
        let lost = log_sum_exp([single, double]);
        if lost >= 0.0 {
            Ok(Bound { value: BoundValue::Log(f64::NEG_INFINITY), note: BoundNote::Vacuous })
        } else {
            Ok(Bound::proper(BoundValue::Log((-lost.exp()).ln_1p())))
        }
    }
}

fn theorem_lower_ln(r: u32, l1: u32, l2: u32, m: f64, lambda: Lambda) -> f64 {
    let l2f = l2 as f64;
    8f64.ln() + 2.0 * m.ln() + (r as f64).ln() + 2.0 * l2f.ln() + ((l2 - l1 + 1) as f64).ln()
        + (-lambda.to_f64() * l2f - 1.0) * ln_base(r)
}

/// `ln(8m²rℓ₂²(ℓ₂-ℓ₁+1)(2r-1)^{-λℓ₂-1})`, the bound on `1 - p≤`.
pub fn theorem_lower_error_ln(params: &ParamPoint) -> Result<f64> {
    params.validate()?;
    Ok(theorem_lower_ln(params.r, params.l1, params.l2, params.m as f64, params.lambda))
}

/// `max(0, 1 - 8m²rℓ₂²(ℓ₂-ℓ₁+1)(2r-1)^{-λℓ₂-1})`, in log domain.
pub fn lower_bound_rough(params: &ParamPoint) -> Result<Bound> {
    let t = theorem_lower_error_ln(params)?;
    if t >= 0.0 {
        return Ok(Bound { value: BoundValue::Log(f64::NEG_INFINITY), note: BoundNote::Vacuous });
    }
    Ok(Bound::proper(BoundValue::Log((-t.exp()).ln_1p())))
}

fn check_upper_args(r: u32, len: u32, m: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidRank(r));
    }
    if len < 1 || m < 1 {
        return Err(Error::InvalidParams(format!("need ℓ ≥ 1 and m ≥ 1, got ℓ={len}, m={m}")));
    }
    Ok(())
}

/// True when `FR(r, ⌈λℓ⌉) < 2mℓ`, which forces `p_λ(r, ℓ, ℓ, m) = 0`.
pub fn zero_clause(r: u32, len: u32, m: u32, lambda: Lambda) -> bool {
    let c = lambda.ceil_times(len as u64);
    fr(r, c) < BigUint::from(2 * m as u64 * len as u64)
}

/// `p≥_λ(r, ℓ, m)`, the upper bound for equal-length relators.
///
/// With `ℓ = q·c + s`, `c = ⌈λℓ⌉`, `0 ≤ s < c`, the number of admissible
/// choices for relator `i` is at most
/// `min(ω_i, FR(r, s)·Π_{k=1..q} min(cap_k, α_{i,k}))` where
/// `ω_i = CR(r,ℓ) - 4(i-1)ℓ(r-1)(2r-1)^{ℓ-c-1}`,
/// `α_{i,1} = FR(r,c) - 2(i-1)ℓ`,
/// `α_{i,k} = FR(r,c) - 2(i-1)ℓ - 2((k-2)c + s + 1)` for `k ≥ 2`,
/// and `cap_k = (2r-1)^c` except for the first block when `s = 0`
/// (see [`FirstBlockCap`]).
pub fn upper_bound(r: u32, len: u32, m: u32, lambda: Lambda, opts: &BoundOptions) -> Result<Bound> {
    check_upper_args(r, len, m)?;
    if zero_clause(r, len, m, lambda) {
        return Ok(Bound { value: BoundValue::zero(), note: BoundNote::ZeroClause });
    }
    let value = if opts.use_exact(r, len, m as u64) {
        BoundValue::Exact(upper_exact(r, len as u64, m as u64, lambda, opts)?)
    } else {
        BoundValue::Log(upper_ln(r, len as u64, m as u64, lambda, opts)?)
    };
    Ok(Bound::proper(value))
}

fn upper_exact(r: u32, len: u64, m: u64, lambda: Lambda, opts: &BoundOptions) -> Result<BigRational> {
    let c = lambda.ceil_times(len);
    let (q, s) = (len / c, len % c);
    let base = 2 * r as u64 - 1;
    let cr_l = cr(r, len);
    let fr_c = big(fr(r, c));
    let unit = big(pow(base, c));
    let first_cap = match opts.first_block {
        FirstBlockCap::FreelyReduced if s == 0 => fr_c.clone(),
        _ => unit.clone(),
    };
    let alpha_head = match opts.alpha_first {
        AlphaFirst::Statement => fr_c.clone(),
        AlphaFirst::Proof => big(fr(r, len)),
    };
    // 4ℓ(r-1)(2r-1)^{ℓ-c-1}, rational when ℓ = c
    let per_prefix = {
        let k = BigInt::from(4 * len * (r as u64 - 1));
        if len > c {
            BigRational::from_integer(k * big(pow(base, len - c - 1)))
        } else {
            BigRational::new(k, big(pow(base, c + 1 - len)))
        }
    };
    let cr_q = rat(cr_l.clone());
    let mut numer = BigRational::one();
    for i in 1..=m {
        let taken = i - 1;
        let omega = &cr_q - &per_prefix * BigInt::from(taken);
        if omega.is_negative() {
            return Err(Error::InvariantViolation(format!("ω_{i} < 0 at r={r}, ℓ={len}, m={m}, λ={lambda}")));
        }
        let mut blocks = big(fr(r, s));
        for k in 1..=q {
            let (cap, alpha) = if k == 1 {
                (&first_cap, &alpha_head - BigInt::from(2 * taken * len))
            } else {
                (&unit, &fr_c - BigInt::from(2 * taken * len + 2 * ((k - 2) * c + s + 1)))
            };
            if alpha.is_negative() {
                return Err(Error::InvariantViolation(format!("α_{{{i},{k}}} < 0 at r={r}, ℓ={len}, m={m}, λ={lambda}")));
            }
            blocks *= alpha.min(cap.clone());
        }
        let blocks = BigRational::from_integer(blocks);
        numer *= if blocks < omega { blocks } else { omega };
    }
    Ok(numer / BigRational::from_integer(num_traits::pow(big(cr_l), m as usize)))
}

/// Works with each factor's ratio to `CR(r,ℓ)` (and each block's ratio to
/// `(2r-1)^c`) so that no two large logarithms are subtracted.
fn upper_ln(r: u32, len: u64, m: u64, lambda: Lambda, opts: &BoundOptions) -> Result<f64> {
    let c = lambda.ceil_times(len);
    let (q, s) = (len / c, len % c);
    let lb = ln_base(r);
    let excess = cr_excess_ln(r, len);
    // ln(FR(r,j) / (2r-1)^j) for j ≥ 1
    let fr_rel = (2.0 * r as f64).ln() - lb;
    let first_cap = match opts.first_block {
        FirstBlockCap::FreelyReduced if s == 0 => fr_rel,
        _ => 0.0,
    };
    let head = match opts.alpha_first {
        AlphaFirst::Statement => fr_rel,
        AlphaFirst::Proof => fr_rel + (len - c) as f64 * lb,
    };
    let beta = if s == 0 { 0.0 } else { fr_rel };
    // ln(4ℓ(r-1)(2r-1)^{ℓ-c-1} / CR(r,ℓ))
    let per_prefix = (4.0 * len as f64 * (r as f64 - 1.0)).ln() - (c + 1) as f64 * lb - excess;
    let violation = |what: String| Error::InvariantViolation(format!("{what} < 0 at r={r}, ℓ={len}, m={m}, λ={lambda}"));
    let mut total = 0.0;
    for i in 1..=m {
        let taken = (i - 1) as f64;
        let omega = if i == 1 {
            0.0
        } else {
            log_sub_exp(0.0, taken.ln() + per_prefix).ok_or_else(|| violation(format!("ω_{i}")))?
        };
        let mut blocks = beta - excess;
        for k in 1..=q {
            let (cap, forbidden) = if k == 1 {
                (first_cap, 2.0 * taken * len as f64)
            } else {
                (0.0, 2.0 * taken * len as f64 + 2.0 * ((k - 2) * c + s + 1) as f64)
            };
            let from = if k == 1 { head } else { fr_rel };
            let alpha = if forbidden == 0.0 {
                from
            } else {
                log_sub_exp(from, forbidden.ln() - c as f64 * lb).ok_or_else(|| violation(format!("α_{{{i},{k}}}")))?
            };
            blocks += alpha.min(cap);
        }
        total += omega.min(blocks);
    }
    Ok(total)
}

/// `(1 - 4m'ℓ(r-1)(2r-1)^{ℓ-⌈λℓ⌉-1}/CR(r,ℓ))^{m'}` with `m' = ⌊m/2⌋`, clamped to `[0, 1]`.
pub fn upper_bound_rough(r: u32, len: u32, m: u32, lambda: Lambda, opts: &BoundOptions) -> Result<Bound> {
    check_upper_args(r, len, m)?;
    if zero_clause(r, len, m, lambda) {
        return Ok(Bound { value: BoundValue::zero(), note: BoundNote::ZeroClause });
    }
    let half = (m / 2) as u64;
    if half == 0 {
        return Ok(Bound { value: BoundValue::one(), note: BoundNote::EmptyProduct });
    }
    let len = len as u64;
    let c = lambda.ceil_times(len);
    let base = 2 * r as u64 - 1;
    if opts.use_exact(r, len as u32, half) {
        let cr_l = rat(cr(r, len));
        let k = BigInt::from(4 * half * len * (r as u64 - 1));
        let sub = if len > c {
            BigRational::from_integer(k * big(pow(base, len - c - 1)))
        } else {
            BigRational::new(k, big(pow(base, c + 1 - len)))
        };
        let frac = (&cr_l - sub) / cr_l;
        let frac = frac.max(BigRational::zero()).min(BigRational::one());
        Ok(Bound::proper(BoundValue::Exact(num_traits::pow(frac, half as usize))))
    } else {
        let sub = (4.0 * (half * len) as f64 * (r as f64 - 1.0)).ln() - (c + 1) as f64 * ln_base(r) - cr_excess_ln(r, len);
        let ln_frac = log_sub_exp(0.0, sub).map_or(f64::NEG_INFINITY, |v| v.min(0.0));
        Ok(Bound::proper(BoundValue::Log(half as f64 * ln_frac)))
    }
}

/// `(1/8)(m-1)²ℓ(2r-1)^{-⌈λℓ⌉}`, a lower bound on `ln(1/p≥)`.
pub fn theorem_upper_log(r: u32, len: u32, m: u32, lambda: Lambda) -> Result<f64> {
    check_upper_args(r, len, m)?;
    let c = lambda.ceil_times(len as u64) as f64;
    let dm = m as f64 - 1.0;
    Ok(dm * dm * len as f64 * (-c * ln_base(r)).exp() / 8.0)
}

fn check_target(p: f64, lo_closed: bool, hi_closed: bool) -> Result<()> {
    let lo = if lo_closed { p >= 0.0 } else { p > 0.0 };
    let hi = if hi_closed { p <= 1.0 } else { p < 1.0 };
    if !(lo && hi) || p.is_nan() {
        return Err(Error::InvalidProbability(p));
    }
    Ok(())
}

fn rough_meets(r: u32, l1: u32, l2: u32, m: f64, lambda: Lambda, p: f64) -> bool {
    let t = theorem_lower_ln(r, l1, l2, m, lambda);
    t < 0.0 && (-t.exp()).ln_1p() >= (p.ln())
}

/// Smallest `ℓ₂` meeting the sufficient length condition for `p≤ ≥ p`
/// (any `ℓ₁ ≥ 1`).
pub fn min_length_for(r: u32, m: u32, lambda: Lambda, p: f64) -> Result<u32> {
    if r < 2 {
        return Err(Error::InvalidRank(r));
    }
    check_target(p, true, false)?;
    let e = std::f64::consts::E;
    let lb = ln_base(r);
    let denom = lambda.to_f64() * e * lb - 3.0;
    if denom <= 0.0 {
        return Err(Error::NoGuarantee(format!("λ·e·ln(2r-1) - 3 = {denom:.6} ≤ 0 for r={r}, λ={lambda}")));
    }
    let mf = m.max(1) as f64;
    let rhs = e * ((8.0 * r as f64 * mf * mf).ln() - (-p).ln_1p() - lb) / denom;
    let mut len = rhs.ceil().max(1.0);
    if len > u32::MAX as f64 {
        return Err(Error::NoGuarantee(format!("required length {rhs:.3e} is out of range")));
    }
    while !rough_meets(r, 1, len as u32, mf, lambda, p) {
        len += 1.0;
    }
    Ok(len as u32)
}

/// Smallest `r ≥ 2` meeting the sufficient rank condition for `p≤ ≥ p`.
pub fn min_rank_for(l1: u32, l2: u32, m: u32, lambda: Lambda, p: f64) -> Result<u32> {
    check_target(p, true, false)?;
    if l1 < 1 || l1 > l2 {
        return Err(Error::InvalidParams(format!("need 1 ≤ ℓ1 ≤ ℓ2, got [{l1}, {l2}]")));
    }
    let mf = m.max(1) as f64;
    let l2f = l2 as f64;
    let ln_r = ((8.0 * mf * mf * l2f * l2f * (l2 - l1 + 1) as f64).ln() - (-p).ln_1p()) / (lambda.to_f64() * l2f);
    let r = ln_r.exp().ceil().max(2.0);
    if r > u32::MAX as f64 / 2.0 {
        return Err(Error::NoGuarantee(format!("required rank e^{ln_r:.3} is out of range")));
    }
    let mut r = r as u32;
    while !rough_meets(r, l1, l2, mf, lambda, p) {
        r += 1;
    }
    Ok(r)
}

/// Largest `m` with `m ≤ √((1-p)(2r-1)^{1+λℓ}/(8rℓ²))`; 0 when no `m ≥ 1` qualifies.
pub fn max_relators_sufficient(r: u32, len: u32, lambda: Lambda, p: f64) -> Result<u64> {
    check_upper_args(r, len, 1)?;
    check_target(p, true, false)?;
    let lf = len as f64;
    let x = 0.5 * ((-p).ln_1p() + (1.0 + lambda.to_f64() * lf) * ln_base(r) - (8.0 * r as f64).ln() - 2.0 * lf.ln());
    let bound = x.exp();
    if bound < 1.0 {
        return Ok(0);
    }
    let mut m = if bound >= u64::MAX as f64 { u64::MAX } else { bound.floor() as u64 };
    while m > 0 && !rough_meets(r, len, len, m as f64, lambda, p) {
        m -= 1;
    }
    Ok(m)
}

/// `⌊1 + 2√(ln(1/p)(2r-1)^{1+⌈λℓ⌉}/(2ℓ(r-1)))⌋`: any larger `m` has `p_λ(r,ℓ,ℓ,m) < p`.
pub fn max_relators_necessary(r: u32, len: u32, lambda: Lambda, p: f64) -> Result<u64> {
    check_upper_args(r, len, 1)?;
    check_target(p, false, true)?;
    let c = lambda.ceil_times(len as u64) as f64;
    let log_inv_p = -p.ln();
    if log_inv_p == 0.0 {
        return Ok(1);
    }
    let inner = log_inv_p.ln() + (1.0 + c) * ln_base(r) - (2.0 * len as f64 * (r as f64 - 1.0)).ln();
    let v = 1.0 + 2.0 * (0.5 * inner).exp();
    Ok(if v >= u64::MAX as f64 { u64::MAX } else { v.floor() as u64 })
}

/// `round((2r-1)^{dℓ})`, the relator count at density `d`.
pub fn density_relator_count(r: u32, d: f64, len: u32) -> Result<u64> {
    if r < 2 {
        return Err(Error::InvalidRank(r));
    }
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::InvalidParams(format!("density {d} must lie in [0, 1]")));
    }
    let v = (d * len as f64 * ln_base(r)).exp().round();
    Ok(if v >= u64::MAX as f64 { u64::MAX } else { v as u64 })
}

/// Lengths `⌈k/λ⌉ + 1 ≤ max_len`, `k = 1, 2, …`.
pub fn optimal_lengths(lambda: Lambda, max_len: u32) -> Vec<u32> {
    let mut out = Vec::new();
    for k in 1u64.. {
        let l = (k * lambda.den()).div_ceil(lambda.num()) + 1;
        if l > max_len as u64 {
            break;
        }
        out.push(l as u32);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn sixth() -> Lambda {
        Lambda::new(1, 6).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zero_clause_point() {
        let b = upper_bound(2, 6, 1, sixth(), &BoundOptions::default()).unwrap();
        assert_eq!(b.note, BoundNote::ZeroClause);
        assert!(b.value.is_zero());
    }

    #[test]
    fn smallest_nonzero_upper() {
        // ℓ = 2·1 + 0: ω_1 = 12, first block FR(2,1) = 4, second block min(3, 4 - 2) = 2
        let b = upper_bound(2, 2, 1, sixth(), &BoundOptions::default()).unwrap();
        assert_eq!(b.value, BoundValue::Exact(q(8, 12)));
        let verbatim = BoundOptions { first_block: FirstBlockCap::Uniform, ..Default::default() };
        let b = upper_bound(2, 2, 1, sixth(), &verbatim).unwrap();
        assert_eq!(b.value, BoundValue::Exact(q(1, 2)));
    }

    #[test]
    fn lower_clamps() {
        let p = ParamPoint::equal_length(2, 3, 5, sixth()).unwrap();
        let b = lower_bound(&p, &BoundOptions::default()).unwrap();
        assert_eq!(b.note, BoundNote::Vacuous);
        assert!(b.value.is_zero());
        assert_eq!(lower_bound_rough(&p).unwrap().note, BoundNote::Vacuous);
    }

    #[test]
    fn lower_rises_towards_one() {
        let opts = BoundOptions::default();
        let v: Vec<f64> = [50, 100, 200]
            .iter()
            .map(|&l| lower_bound(&ParamPoint::equal_length(2, l, 2, sixth()).unwrap(), &opts).unwrap().value.to_f64())
            .collect();
        assert!(v[0] < v[1] && v[1] < v[2] && v[2] < 1.0);
        assert!(v[2] > 0.99);
    }

    #[test]
    fn rough_upper_trivial_for_one_relator() {
        let b = upper_bound_rough(5, 13, 1, sixth(), &BoundOptions::default()).unwrap();
        assert_eq!(b.note, BoundNote::EmptyProduct);
        assert_eq!(b.value, BoundValue::one());
    }

    #[test]
    fn theorem_upper_edges() {
        assert_eq!(theorem_upper_log(3, 13, 1, sixth()).unwrap(), 0.0);
        let a = theorem_upper_log(2, 60, 5, sixth()).unwrap();
        let b = theorem_upper_log(2, 600, 5, sixth()).unwrap();
        assert!(b < a && b < 1e-40);
    }

    #[test]
    fn parameter_limits() {
        assert!(matches!(min_length_for(2, 1, sixth(), 0.5), Err(Error::NoGuarantee(_))));
        let r = min_rank_for(7, 7, 1, sixth(), 0.5).unwrap();
        assert_eq!(r as f64, 784f64.powf(6.0 / 7.0).ceil());
        assert!(min_rank_for(7, 7, 1, sixth(), 0.0).unwrap() >= 2);
        assert_eq!(max_relators_sufficient(2, 7, sixth(), 0.5).unwrap(), 0);
        assert_eq!(max_relators_necessary(3, 13, sixth(), 1.0).unwrap(), 1);
        assert!(max_relators_necessary(3, 13, sixth(), 0.0).is_err());
    }

    #[test]
    fn density_counts() {
        assert_eq!(density_relator_count(2, 0.0, 17).unwrap(), 1);
        assert_eq!(density_relator_count(2, 1.0, 3).unwrap(), 27);
        assert_eq!(density_relator_count(2, 1.0 / 12.0, 24).unwrap(), 9);
        assert!(density_relator_count(2, 1.5, 3).is_err());
    }

    #[test]
    fn optimal_length_lists() {
        assert_eq!(optimal_lengths(sixth(), 20), vec![7, 13, 19]);
        assert_eq!(optimal_lengths(Lambda::new(1, 100).unwrap(), 250), vec![101, 201]);
        assert_eq!(optimal_lengths(Lambda::new(1, 2).unwrap(), 6), vec![3, 5]);
    }
}
