//! A deliberately naive reference checker working on materialised signed
//! letter vectors, sharing no code with the library's checker.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Raw = Vec<i32>;

pub fn rotate(w: &[i32], d: usize) -> Raw {
    let mut v = w[d..].to_vec();
    v.extend_from_slice(&w[..d]);
    v
}

pub fn invert(w: &[i32]) -> Raw {
    w.iter().rev().map(|x| -x).collect()
}

pub fn conjugates(w: &[i32]) -> Vec<Raw> {
    let inv = invert(w);
    (0..w.len()).flat_map(|d| [rotate(w, d), rotate(&inv, d)]).collect()
}

pub fn is_proper_power(w: &[i32]) -> bool {
    let n = w.len();
    (1..n).any(|p| n % p == 0 && rotate(w, p) == w)
}

pub fn lcp(a: &[i32], b: &[i32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Power-free, no relator a conjugate of another or of its inverse, and
/// every two distinct words of the symmetric closure share a prefix shorter
/// than `num/den` of the shorter one.
pub fn passes(relators: &[Raw], num: u64, den: u64) -> bool {
    if relators.iter().any(|w| is_proper_power(w)) {
        return false;
    }
    for (i, u) in relators.iter().enumerate() {
        let cu = conjugates(u);
        if relators[i + 1..].iter().any(|w| cu.contains(w)) {
            return false;
        }
    }
    let all: BTreeSet<Raw> = relators.iter().flat_map(|w| conjugates(w)).collect();
    let all: Vec<Raw> = all.into_iter().collect();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            let piece = lcp(a, b) as u64;
            if piece * den >= num * a.len().min(b.len()) as u64 {
                return false;
            }
        }
    }
    true
}

/// All words of length `len` over `±1..±r` with no adjacent cancellation
/// and, when `cyclic`, none between the last and first letters.
pub fn words(r: i32, len: usize, cyclic: bool) -> Vec<Raw> {
    let letters: Vec<i32> = (1..=r).flat_map(|i| [i, -i]).collect();
    let mut out: Vec<Raw> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * letters.len());
        for w in &out {
            for &x in &letters {
                if w.last() != Some(&-x) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    if cyclic {
        out.retain(|w| w.len() < 2 || w[0] != -w[w.len() - 1]);
    }
    out
}

/// Number of passing ordered `m`-tuples of cyclically reduced words of length `len`.
pub fn count_passing(r: i32, len: usize, m: usize, num: u64, den: u64) -> (u64, u64) {
    let ws = words(r, len, true);
    let mut idx = vec![0usize; m];
    let (mut pass, mut total) = (0, 0);
    loop {
        let rels: Vec<Raw> = idx.iter().map(|&i| ws[i].clone()).collect();
        total += 1;
        if passes(&rels, num, den) {
            pass += 1;
        }
        let mut k = m;
        loop {
            if k == 0 {
                return (pass, total);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < ws.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
