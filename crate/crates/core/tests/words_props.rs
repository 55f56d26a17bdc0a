mod common;

use proptest::prelude::*;
use smallcancel_core::words::{is_power_free, symmetric_closure};
use smallcancel_core::{Alphabet, Letter, Word};

fn letters(r: i32, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    let letter = (1..=r, any::<bool>()).prop_map(|(i, neg)| Letter::from_signed(if neg { -i } else { i }).unwrap());
    prop::collection::vec(letter, 0..=max_len)
}

fn raw(w: &Word) -> Vec<i32> {
    w.letters().iter().map(|l| l.signed()).collect()
}

proptest! {
    #[test]
    fn reduction_is_idempotent_and_reduced(ls in letters(3, 30)) {
        let w = Word::reduce(ls);
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inverse()));
        prop_assert_eq!(Word::reduce(w.letters().to_vec()), w);
    }

    #[test]
    fn inverse_cancels(ls in letters(3, 30)) {
        let w = Word::reduce(ls);
        prop_assert!(w.mul(&w.inverse()).is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn multiplication_associates(a in letters(2, 12), b in letters(2, 12), c in letters(2, 12)) {
        let (a, b, c) = (Word::reduce(a), Word::reduce(b), Word::reduce(c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn rotations_compose(ls in letters(2, 20), d in 0usize..40, e in 0usize..40) {
        let w = Word::reduce(ls);
        prop_assume!(!w.is_empty());
        let n = w.len();
        let (d, e) = (d % n, e % n);
        let twice = w.cyclic_permute(d).unwrap().cyclic_permute(e).unwrap();
        prop_assert_eq!(twice, w.cyclic_permute((d + e) % n).unwrap());
    }

    #[test]
    fn least_rotation_is_minimum(ls in letters(2, 16)) {
        let w = Word::reduce(ls);
        prop_assume!(!w.is_empty());
        let best = (0..w.len()).map(|d| w.cyclic_permute(d).unwrap()).min().unwrap();
        prop_assert_eq!(w.least_rotation(), best);
    }

    #[test]
    fn power_test_matches_definition(ls in letters(2, 4), k in 1usize..5) {
        let base = Word::reduce(ls);
        prop_assume!(!base.is_empty() && base.is_cyclically_reduced());
        let mut v = Vec::new();
        for _ in 0..k {
            v.extend_from_slice(base.letters());
        }
        let w = Word::from_reduced(v).unwrap();
        prop_assert_eq!(is_power_free(&w).unwrap(), !common::is_proper_power(&raw(&w)));
        if k > 1 {
            prop_assert!(!is_power_free(&w).unwrap());
        }
    }

    #[test]
    fn closure_matches_conjugates(ls in letters(3, 10)) {
        let w = Word::reduce(ls);
        prop_assume!(!w.is_empty() && w.is_cyclically_reduced());
        let lib: Vec<Vec<i32>> = symmetric_closure(std::slice::from_ref(&w)).unwrap().iter().map(raw).collect();
        let mut naive = common::conjugates(&raw(&w));
        naive.sort();
        naive.dedup();
        let mut lib_sorted = lib.clone();
        lib_sorted.sort();
        prop_assert_eq!(lib_sorted, naive);
        prop_assert!(lib.len() <= 2 * w.len());
    }
}

#[test]
fn enumeration_counts_match_formulas() {
    for r in 2..=3u32 {
        let a = Alphabet::new(r).unwrap();
        for len in 1..=8usize {
            let fr = a.freely_reduced_words(len).len() as u64;
            let cr = a.cyclically_reduced_words(len).len() as u64;
            let b = 2 * r as u64 - 1;
            assert_eq!(fr, 2 * r as u64 * b.pow(len as u32 - 1));
            let parity = if len % 2 == 0 { 2 } else { 0 };
            assert_eq!(cr, b.pow(len as u32) + 1 + (r as u64 - 1) * parity);
            assert_eq!(cr, common::words(r as i32, len, true).len() as u64);
        }
    }
}
