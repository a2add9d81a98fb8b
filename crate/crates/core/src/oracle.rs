//! Naive reference enumerations.
//!
//! Nothing here calls into `error_model`'s corruption generators or the
//! structural checks. Undetected errors are found by testing every pair of
//! codewords against a direct predicate for "one error of this class turns
//! one word into the other", so agreement with the fast paths is evidence.

use std::collections::BTreeMap;

use crate::error_model::{ErrorClass, PhoneticRange};
use crate::table::{CheckTable, Word};

/// All `base²` codewords, sorted.
pub fn enumerate_codewords(table: &CheckTable) -> Vec<Word> {
    let n = table.base() as usize;
    let cells = table.cells();
    let mut words = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            words.push(Word::new(r as u8, cells[r * n + c], c as u8));
        }
    }
    words.sort();
    words
}

/// Whether a single error of `class` turns `w` into `v`.
pub fn one_error_apart(class: ErrorClass, w: Word, v: Word, range: PhoneticRange) -> bool {
    let (w0, w1, w2) = (w.0[0], w.0[1], w.0[2]);
    let (v0, v1, v2) = (v.0[0], v.0[1], v.0[2]);
    if w == v {
        return false;
    }
    let spare_ok = |d: u8| range == PhoneticRange::Full || d >= 2;
    let differing = (w0 != v0) as u8 + (w1 != v1) as u8 + (w2 != v2) as u8;
    match class {
        ErrorClass::Single => differing == 1,
        ErrorClass::AdjacentTransposition => {
            (w0 != w1 && (v0, v1, v2) == (w1, w0, w2)) || (w1 != w2 && (v0, v1, v2) == (w0, w2, w1))
        }
        ErrorClass::Twin => {
            (w0 == w1 && v0 == v1 && v2 == w2) || (w1 == w2 && v1 == v2 && v0 == w0)
        }
        ErrorClass::JumpTwin => w0 == w2 && v0 == v2 && v1 == w1,
        ErrorClass::JumpTransposition => (v0, v1, v2) == (w2, w1, w0),
        ErrorClass::PhoneticRight => {
            w2 == v2
                && spare_ok(w2)
                && ((w1 == 0 && w0 >= 2 && v0 == 1 && v1 == w0)
                    || (w0 == 1 && w1 >= 2 && v0 == w1 && v1 == 0))
        }
        ErrorClass::PhoneticLeft => {
            w0 == v0
                && spare_ok(w0)
                && ((w2 == 0 && w1 >= 2 && v1 == 1 && v2 == w1)
                    || (w1 == 1 && w2 >= 2 && v1 == w2 && v2 == 0))
        }
        ErrorClass::Cyclic => (v0, v1, v2) == (w1, w2, w0),
        ErrorClass::Permutation => {
            let mut a = [w0, w1, w2];
            let mut b = [v0, v1, v2];
            a.sort();
            b.sort();
            a == b
        }
        ErrorClass::TripleError => differing == 3,
    }
}

/// Every unordered pair of codewords related by one error of `class`
/// (full phonetic range), sorted.
pub fn brute_undetected(table: &CheckTable, class: ErrorClass) -> Vec<(Word, Word)> {
    brute_undetected_with(table, class, PhoneticRange::Full)
}

pub fn brute_undetected_with(
    table: &CheckTable,
    class: ErrorClass,
    range: PhoneticRange,
) -> Vec<(Word, Word)> {
    let words = enumerate_codewords(table);
    let mut pairs = Vec::new();
    for (i, &w) in words.iter().enumerate() {
        for &v in &words[i + 1..] {
            if one_error_apart(class, w, v, range) || one_error_apart(class, v, w, range) {
                pairs.push((w, v));
            }
        }
    }
    pairs
}

/// Codeword counts per sorted digit multiset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultisetCensus {
    pub per_multiset: BTreeMap<[u8; 3], usize>,
}

impl MultisetCensus {
    /// Multiplicity → number of multisets with that multiplicity.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &m in self.per_multiset.values() {
            *h.entry(m).or_insert(0) += 1;
        }
        h
    }

    pub fn max_multiplicity(&self) -> usize {
        self.per_multiset.values().copied().max().unwrap_or(0)
    }
}

pub fn multiset_census(table: &CheckTable) -> MultisetCensus {
    let mut per_multiset = BTreeMap::new();
    for w in enumerate_codewords(table) {
        let mut key = w.0;
        key.sort();
        *per_multiset.entry(key).or_insert(0) += 1;
    }
    MultisetCensus { per_multiset }
}
