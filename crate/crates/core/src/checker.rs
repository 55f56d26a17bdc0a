//! Exact `C'(λ)` decision procedure.
//!
//! A presentation passes when every relator is power-free, the relator list
//! is minimal, and every two distinct words `u ≠ w` of the symmetrized family
//! `W^S` have a common prefix `p` with `|p| < λ·min(|u|, |w|)`. The strict
//! inequality is evaluated as `|p|·den < num·min(|u|, |w|)` in integers.
//!
//! Members of `W^S` are addressed by [`SymmetrizedWord`] triples
//! `(relator, offset, inverted)` standing for `w_{≪offset}` or its inverse.
//! When several triples spell the same word, the smallest triple represents
//! it in witnesses.
//!
//! The default algorithm sorts the family lexicographically. The longest
//! common prefix of any two members equals the minimum of the adjacent
//! prefixes between them, so every violating pair lies inside a run of
//! neighbours whose adjacent common prefix reaches the smallest threshold
//! `⌈λ·ℓ_min⌉`; only pairs inside such runs are compared. [`Algorithm::Naive`]
//! compares all pairs and serves as the reference.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{is_power_free, minimality_violations, Letter, Presentation, Word};

/// The small cancellation parameter `λ = num/den`, kept exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lambda {
    num: u64,
    den: u64,
}

impl Lambda {
    pub fn new(num: u64, den: u64) -> Result<Lambda> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidLambda(format!("{num}/{den} must be a positive fraction")));
        }
        Ok(Lambda { num, den })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `⌈λ·len⌉`, exact.
    pub fn ceil_times(self, len: u64) -> u64 {
        let n = self.num as u128 * len as u128;
        n.div_ceil(self.den as u128) as u64
    }

    /// True when a common prefix of length `piece` breaks `|p| < λ·min_len`.
    #[inline]
    pub fn is_violation(self, piece: usize, min_len: usize) -> bool {
        piece as u128 * self.den as u128 >= self.num as u128 * min_len as u128
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Lambda {
    type Err = Error;

    /// Parses `"num/den"`. Decimal notation is rejected.
    fn from_str(s: &str) -> Result<Lambda> {
        let bad = || Error::InvalidLambda(format!("expected a fraction like 1/6, got {s:?}"));
        let (a, b) = s.trim().split_once('/').ok_or_else(bad)?;
        let num = a.trim().parse::<u64>().map_err(|_| bad())?;
        let den = b.trim().parse::<u64>().map_err(|_| bad())?;
        Lambda::new(num, den)
    }
}

/// `w_{≪offset}` of relator `relator`, or its inverse when `inverted`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymmetrizedWord {
    pub relator: usize,
    pub offset: usize,
    pub inverted: bool,
}

/// Two members of the symmetrized family sharing a prefix of length `length`.
///
/// `first < second` in triple order. Witnesses reported by [`check`] and the
/// classifiers are violations; the one returned by [`max_piece`] need not be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PieceWitness {
    pub first: SymmetrizedWord,
    pub second: SymmetrizedWord,
    pub length: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    NotPowerFree { relator: usize },
    NotMinimal { first: usize, second: usize },
    Piece(PieceWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CheckReport {
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        if self.passed() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Algorithm {
    #[default]
    Sorted,
    Naive,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    pub algorithm: Algorithm,
    /// Report every violating pair of distinct words instead of the first.
    pub exhaustive: bool,
}

#[inline]
fn lcp(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub fn longest_common_prefix(u: &Word, w: &Word) -> usize {
    lcp(u.letters(), w.letters())
}

/// The symmetrized family of a relator list, backed by doubled buffers so
/// each member is a slice.
struct Family<'a> {
    relators: &'a [Word],
    doubled: Vec<Vec<Letter>>,
}

impl<'a> Family<'a> {
    fn new(relators: &'a [Word]) -> Result<Family<'a>> {
        let mut doubled = Vec::with_capacity(2 * relators.len());
        for w in relators {
            if w.is_empty() {
                return Err(Error::EmptyWord("a relator"));
            }
            let l = w.letters();
            doubled.push(l.iter().chain(l).copied().collect());
            let inv = w.inverse();
            let l = inv.letters();
            doubled.push(l.iter().chain(l).copied().collect());
        }
        Ok(Family { relators, doubled })
    }

    #[inline]
    fn len_of(&self, s: SymmetrizedWord) -> usize {
        self.relators[s.relator].len()
    }

    #[inline]
    fn slice(&self, s: SymmetrizedWord) -> &[Letter] {
        let len = self.len_of(s);
        // (w_{≪d})^{-1} = (w^{-1})_{≪(len-d) mod len}
        let (buf, start) = if s.inverted {
            (&self.doubled[2 * s.relator + 1], (len - s.offset) % len)
        } else {
            (&self.doubled[2 * s.relator], s.offset)
        };
        &buf[start..start + len]
    }

    fn members(&self) -> impl Iterator<Item = SymmetrizedWord> + '_ {
        self.relators.iter().enumerate().flat_map(|(relator, w)| {
            (0..w.len()).flat_map(move |offset| {
                [false, true].into_iter().map(move |inverted| SymmetrizedWord { relator, offset, inverted })
            })
        })
    }

    fn min_len(&self) -> usize {
        self.relators.iter().map(Word::len).min().unwrap_or(0)
    }

    /// Distinct words of the family in lexicographic order, each represented
    /// by its smallest triple, with the common prefix of each adjacent pair.
    fn sorted_distinct(&self) -> (Vec<SymmetrizedWord>, Vec<usize>) {
        let mut all: Vec<SymmetrizedWord> = self.members().collect();
        all.sort_unstable_by(|&a, &b| self.slice(a).cmp(self.slice(b)).then(a.cmp(&b)));
        let mut reps: Vec<SymmetrizedWord> = Vec::with_capacity(all.len());
        let mut next_lcp = Vec::with_capacity(all.len());
        for s in all {
            if let Some(&prev) = reps.last() {
                let (a, b) = (self.slice(prev), self.slice(s));
                if a == b {
                    continue;
                }
                next_lcp.push(lcp(a, b));
            }
            reps.push(s);
        }
        (reps, next_lcp)
    }

    /// Smallest triple spelling the same word as `s`.
    fn naive_rep(&self, s: SymmetrizedWord) -> SymmetrizedWord {
        let target = self.slice(s);
        self.members().find(|&t| self.slice(t) == target).unwrap_or(s)
    }
}

fn witness(a: SymmetrizedWord, b: SymmetrizedWord, length: usize) -> PieceWitness {
    let (first, second) = if a < b { (a, b) } else { (b, a) };
    PieceWitness { first, second, length }
}

/// Longest common prefix over all pairs of distinct words of `W^S`, with the
/// smallest witness attaining it. `None` when no two words share a letter.
pub fn max_piece(relators: &[Word]) -> Result<Option<PieceWitness>> {
    max_piece_with(relators, Algorithm::Sorted)
}

pub fn max_piece_with(relators: &[Word], algorithm: Algorithm) -> Result<Option<PieceWitness>> {
    let fam = Family::new(relators)?;
    let best = match algorithm {
        Algorithm::Sorted => {
            let (reps, next) = fam.sorted_distinct();
            let Some(&top) = next.iter().max() else { return Ok(None) };
            if top == 0 {
                return Ok(None);
            }
            // pairs attaining the maximum are exactly the pairs inside stretches
            // of neighbours whose adjacent prefix equals it
            let mut best: Option<PieceWitness> = None;
            let mut i = 0;
            while i < next.len() {
                if next[i] != top {
                    i += 1;
                    continue;
                }
                let mut j = i;
                while j < next.len() && next[j] == top {
                    j += 1;
                }
                let mut stretch: Vec<SymmetrizedWord> = reps[i..=j].to_vec();
                stretch.sort_unstable();
                let cand = witness(stretch[0], stretch[1], top);
                best = Some(best.map_or(cand, |b| b.min(cand)));
                i = j;
            }
            best
        }
        Algorithm::Naive => {
            let members: Vec<_> = fam.members().collect();
            let mut best: Option<PieceWitness> = None;
            for (x, &a) in members.iter().enumerate() {
                for &b in &members[x + 1..] {
                    let (sa, sb) = (fam.slice(a), fam.slice(b));
                    if sa == sb {
                        continue;
                    }
                    let l = lcp(sa, sb);
                    if l == 0 {
                        continue;
                    }
                    let cand = witness(fam.naive_rep(a), fam.naive_rep(b), l);
                    best = match best {
                        None => Some(cand),
                        Some(cur) if l > cur.length || (l == cur.length && cand < cur) => Some(cand),
                        keep => keep,
                    };
                }
            }
            best
        }
    };
    Ok(best)
}

/// Violating pairs of distinct words, sorted; only the first when `!exhaustive`.
fn piece_violations(fam: &Family<'_>, lambda: Lambda, opts: CheckOptions) -> Vec<PieceWitness> {
    let mut found = BTreeSet::new();
    match opts.algorithm {
        Algorithm::Sorted => {
            let (reps, next) = fam.sorted_distinct();
            let floor = lambda.ceil_times(fam.min_len() as u64) as usize;
            let mut start = 0;
            while start < reps.len() {
                let mut end = start;
                while end < next.len() && next[end] >= floor.max(1) {
                    end += 1;
                }
                for i in start..end {
                    let mut run_lcp = usize::MAX;
                    for j in i + 1..=end {
                        run_lcp = run_lcp.min(next[j - 1]);
                        let (a, b) = (reps[i], reps[j]);
                        if lambda.is_violation(run_lcp, fam.len_of(a).min(fam.len_of(b))) {
                            found.insert(witness(a, b, run_lcp));
                        }
                    }
                }
                start = end + 1;
            }
        }
        Algorithm::Naive => {
            let members: Vec<_> = fam.members().collect();
            for (x, &a) in members.iter().enumerate() {
                for &b in &members[x + 1..] {
                    let (sa, sb) = (fam.slice(a), fam.slice(b));
                    if sa == sb {
                        continue;
                    }
                    let l = lcp(sa, sb);
                    if l > 0 && lambda.is_violation(l, sa.len().min(sb.len())) {
                        found.insert(witness(fam.naive_rep(a), fam.naive_rep(b), l));
                    }
                }
            }
        }
    }
    let mut out: Vec<_> = found.into_iter().collect();
    if !opts.exhaustive {
        out.truncate(1);
    }
    out
}

/// Full `C'(λ)` check with witnesses.
///
/// Power-freeness and minimality failures are always listed in full; piece
/// violations are limited to the smallest witness unless `exhaustive` is set.
pub fn check_with(p: &Presentation, lambda: Lambda, opts: CheckOptions) -> Result<CheckReport> {
    let relators = p.relators();
    if relators.is_empty() {
        return Err(Error::NoRelators);
    }
    let mut failures = Vec::new();
    for (relator, w) in relators.iter().enumerate() {
        if !is_power_free(w)? {
            failures.push(Failure::NotPowerFree { relator });
        }
    }
    for (first, second) in minimality_violations(relators) {
        failures.push(Failure::NotMinimal { first, second });
    }
    let fam = Family::new(relators)?;
    failures.extend(piece_violations(&fam, lambda, opts).into_iter().map(Failure::Piece));
    Ok(CheckReport { failures })
}

pub fn check(p: &Presentation, lambda: Lambda) -> Result<CheckReport> {
    check_with(p, lambda, CheckOptions::default())
}

/// Pass/fail only, with early exit. This is the Monte Carlo hot path.
pub fn satisfies(p: &Presentation, lambda: Lambda) -> bool {
    satisfies_relators(p.relators(), lambda)
}

/// [`satisfies`] over a bare relator list; empty lists and empty relators fail.
pub fn satisfies_relators(relators: &[Word], lambda: Lambda) -> bool {
    if relators.is_empty() {
        return false;
    }
    let Ok(fam) = Family::new(relators) else { return false };
    let mut all: Vec<SymmetrizedWord> = fam.members().collect();
    all.sort_unstable_by(|&a, &b| fam.slice(a).cmp(fam.slice(b)));
    let floor = (lambda.ceil_times(fam.min_len() as u64) as usize).max(1);
    let uniform = relators.iter().all(|w| w.len() == relators[0].len());
    let mut next = Vec::with_capacity(all.len());
    for p in all.windows(2) {
        let (a, b) = (fam.slice(p[0]), fam.slice(p[1]));
        if a == b {
            // proper power or symmetric consequence
            return false;
        }
        next.push(lcp(a, b));
    }
    if uniform {
        return next.iter().all(|&l| l < floor);
    }
    let mut start = 0;
    while start < all.len() {
        let mut end = start;
        while end < next.len() && next[end] >= floor {
            end += 1;
        }
        for i in start..end {
            let mut run_lcp = usize::MAX;
            for j in i + 1..=end {
                run_lcp = run_lcp.min(next[j - 1]);
                let (a, b) = (all[i], all[j]);
                if lambda.is_violation(run_lcp, fam.len_of(a).min(fam.len_of(b))) {
                    return false;
                }
            }
        }
        start = end + 1;
    }
    true
}

fn first_pair(
    fam: &Family<'_>,
    pairs: impl Iterator<Item = (SymmetrizedWord, SymmetrizedWord)>,
    violates: impl Fn(usize) -> bool,
) -> Option<PieceWitness> {
    pairs.map(|(x, y)| (x, y, lcp(fam.slice(x), fam.slice(y)))).find(|&(_, _, l)| violates(l)).map(|(x, y, l)| witness(x, y, l))
}

/// A self-overlap of one relator: two distinct triples of `w` sharing a
/// prefix of length at least `λ|w|`. Proper powers always have one.
pub fn classify_nc1(w: &Word, lambda: Lambda) -> Option<PieceWitness> {
    let rels = std::slice::from_ref(w);
    let fam = Family::new(rels).ok()?;
    let members: Vec<_> = fam.members().collect();
    let pairs = members.iter().enumerate().flat_map(|(i, &x)| members[i + 1..].iter().map(move |&y| (x, y)));
    first_pair(&fam, pairs, |l| l > 0 && lambda.is_violation(l, w.len()))
}

/// An overlap between two relators (indices 0 and 1 in the witness) of length
/// at least `λ·min(|w1|, |w2|)`, allowing inversion on either side.
/// Identical symmetrized words count, so `(w, w_{≪1})` is always reported.
pub fn classify_nc2(w1: &Word, w2: &Word, lambda: Lambda) -> Option<PieceWitness> {
    let rels = [w1.clone(), w2.clone()];
    let fam = Family::new(&rels).ok()?;
    let (a, b): (Vec<_>, Vec<_>) = fam.members().partition(|s| s.relator == 0);
    let min_len = w1.len().min(w2.len());
    let pairs = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y)));
    first_pair(&fam, pairs, |l| l > 0 && lambda.is_violation(l, min_len))
}

/// The word a triple stands for.
pub fn symmetrized(relators: &[Word], s: SymmetrizedWord) -> Result<Word> {
    let w = relators.get(s.relator).ok_or(Error::InvalidParams(format!("no relator {}", s.relator)))?;
    let rot = w.cyclic_permute(s.offset)?;
    Ok(if s.inverted { rot.inverse() } else { rot })
}
