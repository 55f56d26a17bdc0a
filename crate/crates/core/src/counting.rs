//! Word counts and the overlap-count upper bounds, in exact big integers.
//!
//! `FR(r, ℓ)` counts freely reduced words of length `ℓ` and `CR(r, ℓ)`
//! cyclically reduced ones. `nc1_bound` bounds the number of cyclically
//! reduced words of length `ℓ` with a self-overlap of length `⌈λℓ⌉`, and
//! `nc2_bound` the number of ordered word pairs with a shared piece of length
//! `⌈λ·min⌉`. The `*_rough` variants are the weaker closed forms with a real
//! exponent and are returned as natural logarithms.
//!
//! `*_ln` functions evaluate the same exact formulas directly in log domain,
//! for parameter ranges where the big-integer route is too slow.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::checker::Lambda;
use crate::error::{Error, Result};
use crate::numeric::{log_sum_exp, pow};

fn check_rank(r: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidRank(r));
    }
    Ok(())
}

fn check_range(l1: u32, l2: u32) -> Result<()> {
    if l1 < 1 || l1 > l2 {
        return Err(Error::InvalidParams(format!("length range [{l1}, {l2}] needs 1 ≤ ℓ1 ≤ ℓ2")));
    }
    Ok(())
}

#[inline]
fn base(r: u32) -> u64 {
    2 * r as u64 - 1
}

pub(crate) fn fr(r: u32, len: u64) -> BigUint {
    if len == 0 {
        return BigUint::one();
    }
    BigUint::from(2 * r as u64) * pow(base(r), len - 1)
}

pub(crate) fn cr(r: u32, len: u64) -> BigUint {
    let mut v = pow(base(r), len) + 1u32;
    if len % 2 == 0 {
        v += 2 * (r as u64 - 1);
    }
    v
}

/// Freely reduced words of length `len`; `FR(r, 0) = 1` for the empty word.
pub fn fr_count(r: u32, len: u32) -> Result<BigUint> {
    check_rank(r)?;
    Ok(fr(r, len as u64))
}

/// Cyclically reduced words of length `len ≥ 1`: `(2r-1)^ℓ + 1 + (r-1)(1 + (-1)^ℓ)`.
pub fn cr_count(r: u32, len: u32) -> Result<BigUint> {
    check_rank(r)?;
    if len < 1 {
        return Err(Error::InvalidParams("CR(r, ℓ) needs ℓ ≥ 1".into()));
    }
    Ok(cr(r, len as u64))
}

pub fn cr_count_range(r: u32, l1: u32, l2: u32) -> Result<BigUint> {
    check_rank(r)?;
    check_range(l1, l2)?;
    Ok((l1..=l2).map(|l| cr(r, l as u64)).sum())
}

/// Choices for the gap `|a|` in `xayb` with `|x| = |y| = c`, `|a|, |b| ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum GapCount {
    /// `ℓ - 2c - 1`, all admissible gap lengths.
    Full,
    /// `ℓ - 2c - 2`, one short; undercounts e.g. at `r=3, ℓ=4, c=1`.
    Stated,
}

impl GapCount {
    fn choices(self, len: u64, c: u64) -> u64 {
        let drop = match self {
            GapCount::Full => 1,
            GapCount::Stated => 2,
        };
        len.saturating_sub(2 * c + drop)
    }
}

pub(crate) fn nc1_with(r: u32, len: u64, lambda: Lambda, gap: GapCount) -> BigUint {
    let c = lambda.ceil_times(len);
    let mut total = BigUint::zero();
    let gaps = gap.choices(len, c);
    if gaps > 0 {
        total += BigUint::from(2 * len * gaps) * fr(r, c) * pow(base(r), len - 2 * c);
    }
    for k in 1..=c {
        // no letters left over when c + k ≥ ℓ
        let rest = len.saturating_sub(c + k);
        total += BigUint::from(len) * cr(r, k) * pow(base(r), rest);
    }
    total
}

pub(crate) fn nc1(r: u32, len: u64, lambda: Lambda) -> BigUint {
    nc1_with(r, len, lambda, GapCount::Full)
}

/// Upper bound on the number of cyclically reduced length-`len` words with a
/// self-overlap of length `c = ⌈λ·len⌉`:
/// `2ℓ(ℓ-2c-1)·FR(r,c)·(2r-1)^{ℓ-2c} + Σ_{k=1..c} ℓ·CR(r,k)·(2r-1)^{ℓ-c-k}`.
///
/// The first term counts two disjoint overlapping blocks separated by gaps
/// of at least one letter on both sides, and is dropped when no such gap
/// fits. The leftover-letter exponent `ℓ - c - k` is clamped to 0.
pub fn nc1_bound(r: u32, len: u32, lambda: Lambda) -> Result<BigUint> {
    check_rank(r)?;
    if len < 1 {
        return Err(Error::InvalidParams("ℓ must be at least 1".into()));
    }
    Ok(nc1(r, len as u64, lambda))
}

/// [`nc1_bound`] with `ℓ - 2c - 2` gap lengths in the first term. This is
/// not always an upper bound: at `r = 3, ℓ = 4, λ = 1/6` it gives 600 while
/// all 630 cyclically reduced words have a self-overlap.
pub fn nc1_bound_stated(r: u32, len: u32, lambda: Lambda) -> Result<BigUint> {
    check_rank(r)?;
    if len < 1 {
        return Err(Error::InvalidParams("ℓ must be at least 1".into()));
    }
    Ok(nc1_with(r, len as u64, lambda, GapCount::Stated))
}

pub fn nc1_bound_range(r: u32, l1: u32, l2: u32, lambda: Lambda) -> Result<BigUint> {
    check_rank(r)?;
    check_range(l1, l2)?;
    Ok((l1..=l2).map(|l| nc1(r, l as u64, lambda)).sum())
}

pub(crate) fn nc2(r: u32, l1: u64, l2: u64, lambda: Lambda) -> BigUint {
    let mut total = BigUint::zero();
    for j1 in l1..=l2 {
        for j2 in l1..=l2 {
            let c = lambda.ceil_times(j1.min(j2));
            total += BigUint::from(2 * j1 * j2) * fr(r, c) * pow(base(r), (j1 + j2).saturating_sub(2 * c));
        }
    }
    total
}

/// Upper bound on the number of ordered pairs of words with lengths in
/// `[l1, l2]` sharing a piece of length `⌈λ·min(j1, j2)⌉`.
pub fn nc2_bound(r: u32, l1: u32, l2: u32, lambda: Lambda) -> Result<BigUint> {
    check_rank(r)?;
    check_range(l1, l2)?;
    Ok(nc2(r, l1 as u64, l2 as u64, lambda))
}

fn ln_base(r: u32) -> f64 {
    (base(r) as f64).ln()
}

/// `ln(4rℓ²(2r-1)^{ℓ-λℓ-1})`.
pub fn nc1_bound_rough(r: u32, len: u32, lambda: Lambda) -> Result<f64> {
    nc1_bound_rough_range(r, len, len, lambda)
}

/// `ln(4rℓ₂²(ℓ₂-ℓ₁+1)(2r-1)^{ℓ₂-λℓ₂-1})`; equals [`nc1_bound_rough`] when `l1 = l2`.
pub fn nc1_bound_rough_range(r: u32, l1: u32, l2: u32, lambda: Lambda) -> Result<f64> {
    check_rank(r)?;
    check_range(l1, l2)?;
    let l2f = l2 as f64;
    let width = (l2 - l1 + 1) as f64;
    Ok((4.0 * r as f64).ln() + 2.0 * l2f.ln() + width.ln() + (l2f - lambda.to_f64() * l2f - 1.0) * ln_base(r))
}

/// `ln` of the rough pair bound: `4rℓ²(2r-1)^{2ℓ-λℓ-1}` for a single length,
/// `16rℓ₂²(ℓ₂-ℓ₁+1)(2r-1)^{2ℓ₂-λℓ₂-1}` for a range.
pub fn nc2_bound_rough(r: u32, l1: u32, l2: u32, lambda: Lambda) -> Result<f64> {
    check_rank(r)?;
    check_range(l1, l2)?;
    let l2f = l2 as f64;
    let exp = (2.0 * l2f - lambda.to_f64() * l2f - 1.0) * ln_base(r);
    if l1 == l2 {
        Ok((4.0 * r as f64).ln() + 2.0 * l2f.ln() + exp)
    } else {
        Ok((16.0 * r as f64).ln() + 2.0 * l2f.ln() + ((l2 - l1 + 1) as f64).ln() + exp)
    }
}

pub(crate) fn fr_ln(r: u32, len: u64) -> f64 {
    if len == 0 {
        return 0.0;
    }
    (2.0 * r as f64).ln() + (len - 1) as f64 * ln_base(r)
}

/// `ln(CR(r,ℓ) / (2r-1)^ℓ)`, small and free of cancellation.
pub(crate) fn cr_excess_ln(r: u32, len: u64) -> f64 {
    let extra = if len % 2 == 0 { 1.0 + 2.0 * (r as f64 - 1.0) } else { 1.0 };
    (extra * (-(len as f64) * ln_base(r)).exp()).ln_1p()
}

pub(crate) fn cr_ln(r: u32, len: u64) -> f64 {
    len as f64 * ln_base(r) + cr_excess_ln(r, len)
}

pub(crate) fn cr_range_ln(r: u32, l1: u64, l2: u64) -> f64 {
    log_sum_exp((l1..=l2).map(|l| cr_ln(r, l)))
}

pub(crate) fn nc1_ln(r: u32, len: u64, lambda: Lambda) -> f64 {
    let c = lambda.ceil_times(len);
    let lb = ln_base(r);
    let lf = len as f64;
    let mut terms = Vec::with_capacity(c as usize + 1);
    let gaps = GapCount::Full.choices(len, c);
    if gaps > 0 {
        terms.push((2.0 * lf * gaps as f64).ln() + fr_ln(r, c) + (len - 2 * c) as f64 * lb);
    }
    for k in 1..=c {
        terms.push(lf.ln() + cr_ln(r, k) + len.saturating_sub(c + k) as f64 * lb);
    }
    log_sum_exp(terms)
}

pub(crate) fn nc1_range_ln(r: u32, l1: u64, l2: u64, lambda: Lambda) -> f64 {
    log_sum_exp((l1..=l2).map(|l| nc1_ln(r, l, lambda)))
}

pub(crate) fn nc2_ln(r: u32, l1: u64, l2: u64, lambda: Lambda) -> f64 {
    let lb = ln_base(r);
    let mut terms = Vec::new();
    for j1 in l1..=l2 {
        for j2 in l1..=l2 {
            let c = lambda.ceil_times(j1.min(j2));
            terms.push((2.0 * j1 as f64 * j2 as f64).ln() + fr_ln(r, c) + (j1 + j2).saturating_sub(2 * c) as f64 * lb);
        }
    }
    log_sum_exp(terms)
}
