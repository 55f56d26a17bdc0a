//! Monte Carlo estimates of `p_λ`, exhaustive enumeration for tiny
//! instances, and parameter-grid sweeps.
//!
//! Trials are split into blocks of [`BLOCK_SIZE`]; block `b` of sweep cell
//! `c` draws from stream `(c << 32) | b` of the sweep seed. Results therefore
//! depend only on the seed, never on the number of worker threads.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::bounds::{self, Bound, BoundOptions, ParamPoint};
use crate::checker::{satisfies_relators, Lambda};
use crate::error::{Error, Result};
use crate::sampler::{PresentationSampler, RandomStream};
use crate::words::{Alphabet, Word};

pub const BLOCK_SIZE: u64 = 1024;
pub const DEFAULT_CONFIDENCE: f64 = 0.99;
pub const DEFAULT_SAMPLES: u64 = 35_000;
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// A sampled proportion with its Wilson score interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
    pub point_estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
    pub seed: u64,
}

impl Estimate {
    pub fn new(successes: u64, trials: u64, confidence: f64, seed: u64) -> Result<Estimate> {
        if trials == 0 || successes > trials {
            return Err(Error::InvalidParams(format!("{successes} successes out of {trials} trials")));
        }
        let (ci_low, ci_high) = wilson_interval(successes, trials, confidence)?;
        Ok(Estimate { successes, trials, point_estimate: successes as f64 / trials as f64, ci_low, ci_high, confidence, seed })
    }

    /// Binomial standard error `√(p̂(1-p̂)/n)`.
    pub fn std_error(&self) -> f64 {
        let p = self.point_estimate;
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    pub fn covers(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

/// Two-sided Wilson score interval at the given confidence level.
pub fn wilson_interval(successes: u64, trials: u64, confidence: f64) -> Result<(f64, f64)> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::InvalidProbability(confidence));
    }
    if trials == 0 || successes > trials {
        return Err(Error::InvalidParams(format!("{successes} successes out of {trials} trials")));
    }
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if successes == 0 { 0.0 } else { (centre - half).clamp(0.0, p) };
    let hi = if successes == trials { 1.0 } else { (centre + half).clamp(p, 1.0) };
    Ok((lo, hi))
}

fn count_passes(sampler: &PresentationSampler, lambda: Lambda, trials: u64, seed: u64, cell: u64) -> u64 {
    let blocks = trials.div_ceil(BLOCK_SIZE);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut stream = RandomStream::new(seed, (cell << 32) | b);
            let n = BLOCK_SIZE.min(trials - b * BLOCK_SIZE);
            let mut relators = Vec::new();
            (0..n)
                .filter(|_| {
                    sampler.fill(&mut stream, &mut relators);
                    satisfies_relators(&relators, lambda)
                })
                .count() as u64
        })
        .sum()
}

fn estimate_cell(params: &ParamPoint, trials: u64, seed: u64, cell: u64, confidence: f64) -> Result<Estimate> {
    if trials == 0 {
        return Err(Error::InvalidParams("need at least one trial".into()));
    }
    if cell >= 1 << 32 {
        return Err(Error::InvalidGrid("too many cells".into()));
    }
    let sampler = PresentationSampler::new(params)?;
    let successes = count_passes(&sampler, params.lambda, trials, seed, cell);
    Estimate::new(successes, trials, confidence, seed)
}

/// Fraction of `trials` uniformly random presentations satisfying the full
/// check (power-free, minimal, `C'(λ)`).
pub fn estimate_probability(params: &ParamPoint, trials: u64, seed: u64, confidence: f64) -> Result<Estimate> {
    estimate_cell(params, trials, seed, 0, confidence)
}

/// Passing and total counts over all `CR(r,ℓ)^m` ordered relator lists.
pub fn exact_counts(r: u32, len: u32, m: u32, lambda: Lambda, budget: u64) -> Result<(u64, u64)> {
    let alphabet = Alphabet::new(r)?;
    if len < 1 || m < 1 {
        return Err(Error::InvalidParams(format!("need ℓ ≥ 1 and m ≥ 1, got ℓ={len}, m={m}")));
    }
    let cr = crate::counting::cr(r, len as u64);
    let cost: BigUint = num_traits::pow(cr.clone(), m as usize);
    if cost > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { cost: cost.to_string(), budget });
    }
    let total = u64::try_from(&cost).expect("cost within budget");
    let words = alphabet.cyclically_reduced_words(len as usize);
    debug_assert_eq!(BigUint::from(words.len()), cr);
    let passes = (0..words.len())
        .into_par_iter()
        .map(|head| {
            let mut idx = vec![0usize; m as usize];
            idx[0] = head;
            let mut rels: Vec<Word> = vec![words[head].clone(); m as usize];
            let mut passes = 0u64;
            loop {
                if satisfies_relators(&rels, lambda) {
                    passes += 1;
                }
                // odometer over positions 1..m
                let mut k = m as usize - 1;
                loop {
                    if k == 0 {
                        return passes;
                    }
                    idx[k] += 1;
                    if idx[k] < words.len() {
                        rels[k] = words[idx[k]].clone();
                        break;
                    }
                    idx[k] = 0;
                    rels[k] = words[0].clone();
                    k -= 1;
                }
            }
        })
        .sum();
    Ok((passes, total))
}

/// `p_λ(r, ℓ, ℓ, m)` by enumeration, refusing when `CR(r,ℓ)^m > budget`.
pub fn exact_probability_with_budget(r: u32, len: u32, m: u32, lambda: Lambda, budget: u64) -> Result<BigRational> {
    let (passes, total) = exact_counts(r, len, m, lambda, budget)?;
    Ok(BigRational::new(BigInt::from(passes), BigInt::from(total)))
}

/// [`exact_probability_with_budget`] with a budget of 10⁷ relator lists.
pub fn exact_probability(r: u32, len: u32, m: u32, lambda: Lambda) -> Result<BigRational> {
    exact_probability_with_budget(r, len, m, lambda, DEFAULT_ENUMERATION_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    R,
    L,
    M,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::R => "r",
            Axis::L => "l",
            Axis::M => "m",
        }
    }
}

/// `start, start+step, …` up to and including `end` when reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisRange {
    pub axis: Axis,
    pub start: u32,
    pub end: u32,
    pub step: u32,
}

impl AxisRange {
    pub fn values(&self) -> impl Iterator<Item = u32> {
        (self.start..=self.end).step_by(self.step.max(1) as usize)
    }
}

/// A one- or two-axis sweep over `(r, ℓ, m)`.
///
/// With `l1` set, `ℓ` is the upper end `ℓ₂` of the length range `[l1, ℓ]`.
/// With `density` set, `m` is not an axis and each cell uses
/// `round((2r-1)^{dℓ})` relators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub vary: Vec<AxisRange>,
    pub r: Option<u32>,
    pub l: Option<u32>,
    pub m: Option<u32>,
    pub l1: Option<u32>,
    pub density: Option<f64>,
    pub lambda: Lambda,
    /// Monte Carlo trials per cell; 0 skips estimation.
    pub samples: u64,
    pub seed: u64,
    pub confidence: f64,
    pub bound_options: BoundOptions,
}

impl GridSpec {
    pub fn new(lambda: Lambda) -> GridSpec {
        GridSpec {
            vary: Vec::new(),
            r: None,
            l: None,
            m: None,
            l1: None,
            density: None,
            lambda,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            confidence: DEFAULT_CONFIDENCE,
            bound_options: BoundOptions::default(),
        }
    }

    fn fixed(&self, axis: Axis) -> Option<u32> {
        match axis {
            Axis::R => self.r,
            Axis::L => self.l,
            Axis::M => self.m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGrid(msg));
        if self.vary.is_empty() || self.vary.len() > 2 {
            return bad(format!("need one or two varying axes, got {}", self.vary.len()));
        }
        if self.vary.len() == 2 && self.vary[0].axis == self.vary[1].axis {
            return bad(format!("axis {} varied twice", self.vary[0].axis.name()));
        }
        for a in &self.vary {
            if self.fixed(a.axis).is_some() {
                return bad(format!("axis {} is both varied and fixed", a.axis.name()));
            }
            if a.step == 0 || a.start > a.end {
                return bad(format!("empty range {}:{}:{}:{}", a.axis.name(), a.start, a.end, a.step));
            }
        }
        let varies = |axis| self.vary.iter().any(|a| a.axis == axis);
        if let Some(d) = self.density {
            if varies(Axis::M) || self.m.is_some() {
                return bad("density mode replaces the m axis".into());
            }
            if !(0.0..=1.0).contains(&d) {
                return bad(format!("density {d} outside [0, 1]"));
            }
        }
        for axis in [Axis::R, Axis::L, Axis::M] {
            let density_m = axis == Axis::M && self.density.is_some();
            if !varies(axis) && self.fixed(axis).is_none() && !density_m {
                return bad(format!("axis {} is neither varied nor fixed", axis.name()));
            }
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return bad(format!("confidence {} outside (0, 1)", self.confidence));
        }
        Ok(())
    }

    /// Cell coordinates `(r, ℓ, m)` in row-major order of `vary`; `m` is
    /// `None` in density mode.
    pub fn cells(&self) -> Result<Vec<(u32, u32, Option<u32>)>> {
        self.validate()?;
        let point = |vals: &[(Axis, u32)]| {
            let get = |axis| vals.iter().find(|(a, _)| *a == axis).map(|&(_, v)| v).or(self.fixed(axis));
            (get(Axis::R).unwrap_or(0), get(Axis::L).unwrap_or(0), get(Axis::M))
        };
        let outer = &self.vary[0];
        let mut out = Vec::new();
        for a in outer.values() {
            match self.vary.get(1) {
                None => out.push(point(&[(outer.axis, a)])),
                Some(inner) => {
                    for b in inner.values() {
                        out.push(point(&[(outer.axis, a), (inner.axis, b)]));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// One sweep cell. `upper` is `None` for range-length cells or when it
/// could not be evaluated; `error` explains any missing piece.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub params: ParamPoint,
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    pub estimate: Option<Estimate>,
    pub error: Option<String>,
}

fn sweep_cell(grid: &GridSpec, cell: u64, (r, l, m): (u32, u32, Option<u32>)) -> SweepRow {
    let mut row = SweepRow {
        params: ParamPoint { r, l1: grid.l1.unwrap_or(l), l2: l, m: m.unwrap_or(0), lambda: grid.lambda },
        lower: None,
        upper: None,
        estimate: None,
        error: None,
    };
    let run = |row: &mut SweepRow| -> Result<()> {
        if let Some(d) = grid.density {
            let count = bounds::density_relator_count(r, d, l)?;
            row.params.m = u32::try_from(count).map_err(|_| Error::InvalidParams(format!("{count} relators is too many")))?;
        }
        let params = row.params;
        params.validate()?;
        row.lower = Some(bounds::lower_bound(&params, &grid.bound_options)?);
        if params.is_equal_length() {
            row.upper = Some(bounds::upper_bound(r, l, params.m, grid.lambda, &grid.bound_options)?);
        }
        if grid.samples > 0 {
            row.estimate = Some(estimate_cell(&params, grid.samples, grid.seed, cell, grid.confidence)?);
        }
        Ok(())
    };
    if let Err(e) = run(&mut row) {
        row.error = Some(e.to_string());
    }
    row
}

/// Bounds and estimates for every cell of `grid`, in row-major order.
/// Cell failures are recorded in [`SweepRow::error`].
pub fn run_sweep(grid: &GridSpec) -> Result<Vec<SweepRow>> {
    let cells = grid.cells()?;
    if cells.len() as u64 >= 1 << 32 {
        return Err(Error::InvalidGrid("too many cells".into()));
    }
    Ok(cells.into_par_iter().enumerate().map(|(i, c)| sweep_cell(grid, i as u64, c)).collect())
}

/// `CR(r,ℓ)^m` as a decimal string, the work an enumeration would need.
pub fn enumeration_cost(r: u32, len: u32, m: u32) -> Result<String> {
    Alphabet::new(r)?;
    let cr = crate::counting::cr(r, len as u64);
    Ok(num_traits::pow(cr, m as usize).to_string())
}
