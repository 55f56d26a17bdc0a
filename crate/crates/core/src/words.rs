//! Words over `X^{±1}` and the free-group operations the checker needs.
//!
//! Letters are signed generator indices: generator `x_i` is `+i` and its
//! inverse is `-i`. Text encodings (`a`/`A`, comma-separated integers) live at
//! the serialization boundary, not here.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i32", try_from = "i32")]
pub struct Letter(i32);

impl Letter {
    /// Builds `x_index` or `x_index^{-1}`.
    ///
    /// Panics if `index` is zero or does not fit in an `i32`.
    pub fn new(index: u32, inverse: bool) -> Letter {
        assert!(index >= 1 && index <= i32::MAX as u32, "generator index {index} out of range");
        let code = index as i32;
        Letter(if inverse { -code } else { code })
    }

    pub fn from_signed(code: i32) -> Option<Letter> {
        (code != 0 && code != i32::MIN).then_some(Letter(code))
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    #[inline]
    pub fn signed(self) -> i32 {
        self.0
    }

    /// Dense code in `0..2r`: `x_i ↦ 2(i-1)`, `x_i^{-1} ↦ 2(i-1)+1`.
    #[inline]
    pub fn dense(self) -> usize {
        2 * (self.index() as usize - 1) + self.is_inverse() as usize
    }

    #[inline]
    pub fn from_dense(code: usize) -> Letter {
        Letter::new((code / 2 + 1) as u32, code % 2 == 1)
    }
}

impl From<Letter> for i32 {
    fn from(l: Letter) -> i32 {
        l.0
    }
}

impl TryFrom<i32> for Letter {
    type Error = String;

    fn try_from(code: i32) -> std::result::Result<Self, String> {
        Letter::from_signed(code).ok_or_else(|| format!("invalid letter code {code}"))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The generating set `{x_1, …, x_r}` with `r ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    rank: u32,
}

impl Alphabet {
    pub fn new(rank: u32) -> Result<Alphabet> {
        if rank < 2 {
            return Err(Error::InvalidRank(rank));
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(self) -> u32 {
        self.rank
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter.index() <= self.rank
    }

    /// All `2r` letters in dense order.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..2 * self.rank as usize).map(Letter::from_dense)
    }

    /// Freely reduces `raw`, rejecting letters outside the alphabet.
    pub fn free_reduce(self, raw: impl IntoIterator<Item = Letter>) -> Result<Word> {
        let mut out: Vec<Letter> = Vec::new();
        for letter in raw {
            if !self.contains(letter) {
                return Err(Error::InvalidGenerator { index: letter.index(), rank: self.rank });
            }
            push_reducing(&mut out, letter);
        }
        Ok(Word(out))
    }

    /// Every cyclically reduced word of length `len`, in lexicographic order.
    pub fn cyclically_reduced_words(self, len: usize) -> Vec<Word> {
        self.freely_reduced_words(len).into_iter().filter(Word::is_cyclically_reduced).collect()
    }

    /// Every freely reduced word of length `len`, in lexicographic order.
    pub fn freely_reduced_words(self, len: usize) -> Vec<Word> {
        let mut letters: Vec<Letter> = self.letters().collect();
        letters.sort();
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(len);
        fn rec(letters: &[Letter], len: usize, buf: &mut Vec<Letter>, out: &mut Vec<Word>) {
            if buf.len() == len {
                out.push(Word(buf.clone()));
                return;
            }
            for &l in letters {
                if buf.last().is_some_and(|&p| p == l.inverse()) {
                    continue;
                }
                buf.push(l);
                rec(letters, len, buf, out);
                buf.pop();
            }
        }
        rec(&letters, len, &mut buf, &mut out);
        out
    }
}

#[inline]
fn push_reducing(out: &mut Vec<Letter>, letter: Letter) {
    if out.last().is_some_and(|&l| l == letter.inverse()) {
        out.pop();
    } else {
        out.push(letter);
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Freely reduces an arbitrary letter sequence without a rank check.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>) -> Word {
        let mut out = Vec::new();
        for l in raw {
            push_reducing(&mut out, l);
        }
        Word(out)
    }

    /// Wraps `letters` if they are already freely reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Option<Word> {
        letters.windows(2).all(|p| p[0] != p[1].inverse()).then_some(Word(letters))
    }

    pub fn from_signed(codes: &[i32]) -> Option<Word> {
        let letters = codes.iter().map(|&c| Letter::from_signed(c)).collect::<Option<Vec<_>>>()?;
        Word::from_reduced(letters)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// Largest generator index used, 0 for the empty word.
    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    /// Empty, length one, or first letter not the inverse of the last.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) if self.0.len() > 1 => f != l.inverse(),
            _ => true,
        }
    }

    /// `w_{≪d}`: moves the first `d` letters to the end.
    pub fn cyclic_permute(&self, d: usize) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::EmptyWord("cyclic permutation"));
        }
        if d >= self.len() {
            return Err(Error::OffsetOutOfRange { offset: d, len: self.len() });
        }
        let mut v = self.0.clone();
        v.rotate_left(d);
        Ok(Word(v))
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Free product `self · other`, reduced.
    pub fn mul(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Smallest `p ≥ 1` with `w = w_{≪p}`; equals `|w|` iff `w` is power-free.
    pub fn cyclic_period(&self) -> usize {
        let n = self.0.len();
        if n == 0 {
            return 0;
        }
        // prefix function; the shortest period p divides n exactly when w is a proper power
        let s = &self.0;
        let mut pi = vec![0usize; n];
        for i in 1..n {
            let mut k = pi[i - 1];
            while k > 0 && s[i] != s[k] {
                k = pi[k - 1];
            }
            if s[i] == s[k] {
                k += 1;
            }
            pi[i] = k;
        }
        let p = n - pi[n - 1];
        if n % p == 0 {
            p
        } else {
            n
        }
    }

    /// Lexicographically least rotation.
    pub fn least_rotation(&self) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::empty();
        }
        let s = &self.0;
        let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
        while i < n && j < n && k < n {
            let a = s[(i + k) % n];
            let b = s[(j + k) % n];
            if a == b {
                k += 1;
                continue;
            }
            if a > b {
                i += k + 1;
            } else {
                j += k + 1;
            }
            if i == j {
                j += 1;
            }
            k = 0;
        }
        let start = i.min(j);
        let mut v = s.clone();
        v.rotate_left(start);
        Word(v)
    }

    /// Canonical representative of `(w)^S`: the least rotation of `w` or of `w^{-1}`.
    pub fn symmetric_canonical(&self) -> Word {
        let a = self.least_rotation();
        let b = self.inverse().least_rotation();
        a.min(b)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for l in &self.0 {
            let idx = l.index();
            if idx <= 26 {
                let c = (b'a' + (idx - 1) as u8) as char;
                let c = if l.is_inverse() { c.to_ascii_uppercase() } else { c };
                write!(f, "{c}")?;
            } else {
                write!(f, "[{}]", l.signed())?;
            }
        }
        Ok(())
    }
}

/// `W^S`: every rotation of every relator and the inverse of each rotation, as a set.
pub fn symmetric_closure(relators: &[Word]) -> Result<BTreeSet<Word>> {
    let mut out = BTreeSet::new();
    for w in relators {
        if w.is_empty() {
            return Err(Error::EmptyWord("symmetric closure"));
        }
        for d in 0..w.len() {
            let rot = w.cyclic_permute(d)?;
            out.insert(rot.inverse());
            out.insert(rot);
        }
    }
    Ok(out)
}

/// True iff `|(w)^S| = 2|w|`, i.e. `w` is not a proper power.
pub fn is_power_free(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord("power-freeness"));
    }
    Ok(w.cyclic_period() == w.len())
}

/// True iff no relator is a symmetric consequence of another entry of the list.
pub fn is_minimal(relators: &[Word]) -> bool {
    let mut seen = HashSet::with_capacity(relators.len());
    relators.iter().all(|w| seen.insert(w.symmetric_canonical()))
}

/// Pairs `(i, j)`, `i < j`, where relator `j` is a symmetric consequence of relator `i`.
/// Each `j` is reported once, against the first equivalent relator.
pub fn minimality_violations(relators: &[Word]) -> Vec<(usize, usize)> {
    let mut first = std::collections::HashMap::with_capacity(relators.len());
    let mut out = Vec::new();
    for (j, w) in relators.iter().enumerate() {
        match first.entry(w.symmetric_canonical()) {
            std::collections::hash_map::Entry::Occupied(e) => out.push((*e.get(), j)),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(j);
            }
        }
    }
    out
}

/// A presentation `⟨X | W⟩`: an ordered list of nonempty cyclically reduced relators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Presentation> {
        for (index, w) in relators.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::EmptyWord("a relator"));
            }
            if let Some(l) = w.letters().iter().find(|l| !alphabet.contains(**l)) {
                return Err(Error::InvalidGenerator { index: l.index(), rank: alphabet.rank() });
            }
            if !w.is_cyclically_reduced() {
                return Err(Error::NotCyclicallyReduced { index });
            }
        }
        Ok(Presentation { alphabet, relators })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn rank(&self) -> u32 {
        self.alphabet.rank()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}
