//! Uniform sampling of cyclically reduced words and presentations.
//!
//! Randomness comes from [`RandomStream`], a ChaCha8 generator keyed by a
//! 64-bit seed and selecting one of 2⁶⁴ independent streams. The key is
//! expanded from the seed with `rand_core`'s documented PCG32 procedure
//! (`SeedableRng::seed_from_u64`), so a `(seed, stream_id)` pair yields the
//! same sequence on every platform.

use num_bigint::BigUint;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::ParamPoint;
use crate::counting::cr;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Presentation, Word};

/// A reproducible source of random bits.
#[derive(Clone, Debug)]
pub struct RandomStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> RandomStream {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RandomStream { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform in `0..n`. Panics if `n == 0`.
    #[inline]
    pub fn below(&mut self, n: u32) -> u32 {
        self.rng.random_range(0..n)
    }

    /// Uniform in `0..n` for an arbitrary-precision bound, by rejection on
    /// the bit length of `n`. Panics if `n` is zero.
    pub fn below_big(&mut self, n: &BigUint) -> BigUint {
        assert!(n.bits() > 0, "empty range");
        let bits = n.bits();
        let words = bits.div_ceil(32) as usize;
        let spare = (words as u64 * 32 - bits) as u32;
        loop {
            let mut digits: Vec<u32> = (0..words).map(|_| self.rng.next_u32()).collect();
            if let Some(top) = digits.last_mut() {
                *top >>= spare;
            }
            let x = BigUint::new(digits);
            if &x < n {
                return x;
            }
        }
    }
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

fn check_rank(r: u32) -> Result<()> {
    if r < 2 || r > i32::MAX as u32 / 2 {
        return Err(Error::InvalidRank(r));
    }
    Ok(())
}

fn fill_cyclically_reduced(r: u32, len: usize, stream: &mut RandomStream, out: &mut Vec<Letter>) {
    let letters = 2 * r;
    loop {
        out.clear();
        let first = stream.below(letters);
        let mut prev = first;
        out.push(Letter::from_dense(first as usize));
        for _ in 1..len {
            let mut x = stream.below(letters - 1);
            // skip the code of prev's inverse
            if x >= (prev ^ 1) {
                x += 1;
            }
            out.push(Letter::from_dense(x as usize));
            prev = x;
        }
        if len == 1 || prev != (first ^ 1) {
            return;
        }
    }
}

/// A uniformly random cyclically reduced word of length `len` over `r` generators.
///
/// Draws freely reduced words letter by letter and rejects those whose last
/// letter cancels the first; accepted words are exactly uniform.
pub fn sample_cyclically_reduced(r: u32, len: usize, stream: &mut RandomStream) -> Result<Word> {
    check_rank(r)?;
    if len == 0 {
        return Err(Error::InvalidParams("word length must be at least 1".into()));
    }
    let mut buf = Vec::with_capacity(len);
    fill_cyclically_reduced(r, len, stream, &mut buf);
    Ok(Word::from_reduced(buf).expect("sampler produces reduced words"))
}

/// Draws lengths in `[l1, l2]` with probability proportional to `CR(r, ℓ)`.
#[derive(Clone, Debug)]
pub struct LengthSampler {
    l1: u32,
    /// Running totals of `CR(r, ℓ)` for `ℓ = l1..=l2`.
    cumulative: Vec<BigUint>,
}

impl LengthSampler {
    pub fn new(r: u32, l1: u32, l2: u32) -> Result<LengthSampler> {
        check_rank(r)?;
        if l1 < 1 || l1 > l2 {
            return Err(Error::InvalidParams(format!("need 1 ≤ ℓ1 ≤ ℓ2, got [{l1}, {l2}]")));
        }
        let mut acc = BigUint::default();
        let cumulative = (l1..=l2)
            .map(|l| {
                acc += cr(r, l as u64);
                acc.clone()
            })
            .collect();
        Ok(LengthSampler { l1, cumulative })
    }

    /// Exact weight of each length, as `(ℓ, CR(r,ℓ), CR(r,ℓ1,ℓ2))`.
    pub fn weights(&self) -> impl Iterator<Item = (u32, BigUint, &BigUint)> + '_ {
        let total = self.cumulative.last().expect("nonempty range");
        let mut prev = BigUint::default();
        self.cumulative.iter().enumerate().map(move |(i, c)| {
            let w = c - &prev;
            prev = c.clone();
            (self.l1 + i as u32, w, total)
        })
    }

    /// Consumes no randomness when the range is a single length.
    pub fn sample(&self, stream: &mut RandomStream) -> u32 {
        if self.cumulative.len() == 1 {
            return self.l1;
        }
        let total = self.cumulative.last().expect("nonempty range");
        let x = stream.below_big(total);
        let i = self.cumulative.partition_point(|c| c <= &x);
        self.l1 + i as u32
    }
}

/// A length in `[l1, l2]` drawn with probability `CR(r,ℓ)/CR(r,ℓ1,ℓ2)`.
pub fn sample_length(r: u32, l1: u32, l2: u32, stream: &mut RandomStream) -> Result<u32> {
    Ok(LengthSampler::new(r, l1, l2)?.sample(stream))
}

/// Reusable sampler for the relator lists of one parameter point.
#[derive(Clone, Debug)]
pub struct PresentationSampler {
    r: u32,
    m: usize,
    lengths: LengthSampler,
}

impl PresentationSampler {
    pub fn new(params: &ParamPoint) -> Result<PresentationSampler> {
        params.validate()?;
        Ok(PresentationSampler {
            r: params.r,
            m: params.m as usize,
            lengths: LengthSampler::new(params.r, params.l1, params.l2)?,
        })
    }

    /// Overwrites `out` with `m` independent uniform relators.
    pub fn fill(&self, stream: &mut RandomStream, out: &mut Vec<Word>) {
        out.clear();
        let mut buf = Vec::new();
        for _ in 0..self.m {
            let len = self.lengths.sample(stream) as usize;
            fill_cyclically_reduced(self.r, len, stream, &mut buf);
            out.push(Word::from_reduced(std::mem::take(&mut buf)).expect("sampler produces reduced words"));
        }
    }

    pub fn sample(&self, stream: &mut RandomStream) -> Presentation {
        let mut relators = Vec::with_capacity(self.m);
        self.fill(stream, &mut relators);
        let alphabet = Alphabet::new(self.r).expect("rank validated");
        Presentation::new(alphabet, relators).expect("sampled relators are valid")
    }
}

/// `m` independent relators, each uniform over cyclically reduced words with
/// length in `[ℓ1, ℓ2]`. Powers and repeats are kept.
pub fn sample_presentation(params: &ParamPoint, stream: &mut RandomStream) -> Result<Presentation> {
    Ok(PresentationSampler::new(params)?.sample(stream))
}
