//! Orthogonal-array view of a table.
//!
//! The codewords of a table form a set `L` of triples `(r, s, c)`. `L` splits
//! into the diagonal part `D` (all coordinates equal), the part `N` whose
//! triples use three distinct digits, and, for degenerate tables only,
//! triples with exactly two equal coordinates that belong to neither.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::table::{CheckTable, Digit, Triple};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TripleSystem {
    base: u8,
    triples: BTreeSet<Triple>,
}

impl TripleSystem {
    pub fn new(base: u8, triples: impl IntoIterator<Item = Triple>) -> Self {
        Self {
            base,
            triples: triples.into_iter().collect(),
        }
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    /// `L`, in lexicographic order.
    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.contains(t)
    }

    /// `N`: triples with three distinct coordinates.
    pub fn non_diagonal(&self) -> impl Iterator<Item = Triple> + '_ {
        self.triples.iter().copied().filter(|t| t.all_distinct())
    }

    /// `D`: triples `(i, i, i)`.
    pub fn diagonal(&self) -> impl Iterator<Item = Triple> + '_ {
        self.triples.iter().copied().filter(|t| t.is_constant())
    }

    /// Triples with exactly two equal coordinates.
    pub fn degenerate(&self) -> impl Iterator<Item = Triple> + '_ {
        self.triples
            .iter()
            .copied()
            .filter(|t| !t.is_constant() && !t.all_distinct())
    }

    /// Rebuilds the table, which requires exactly one triple for every
    /// `(r, c)` position.
    pub fn to_table(&self) -> Result<CheckTable> {
        let n = self.base as usize;
        let mut cells: Vec<Option<Digit>> = vec![None; n * n];
        for t in &self.triples {
            if !t.in_base(self.base) {
                return Err(Error::NotATable(format!("triple {t} out of range")));
            }
            let slot = &mut cells[t.r() as usize * n + t.c() as usize];
            if let Some(prev) = slot {
                return Err(Error::NotATable(format!(
                    "position ({},{}) holds both {prev} and {}",
                    t.r(),
                    t.c(),
                    t.s()
                )));
            }
            *slot = Some(t.s());
        }
        let cells = cells
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                d.ok_or_else(|| {
                    Error::NotATable(format!("position ({},{}) is empty", i / n, i % n))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CheckTable::new(n, cells)
    }

    /// Triples present in both systems.
    pub fn intersection(&self, other: &TripleSystem) -> BTreeSet<Triple> {
        self.triples.intersection(&other.triples).copied().collect()
    }
}

/// `L = {(r, cell(r, c), c)}`.
pub fn to_triples(table: &CheckTable) -> TripleSystem {
    TripleSystem::new(table.base(), table.words())
}

/// Every 3-element subset `{a < b < c}` of the alphabet, in lexicographic order.
pub fn three_subsets(base: u8) -> Vec<[Digit; 3]> {
    let mut out = Vec::new();
    for a in 0..base {
        for b in a + 1..base {
            for c in b + 1..base {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Members of `N` grouped by their digit set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CombinationIndex {
    entries: BTreeMap<[Digit; 3], Vec<Triple>>,
}

impl CombinationIndex {
    pub fn get(&self, subset: [Digit; 3]) -> &[Triple] {
        let mut key = subset;
        key.sort_unstable();
        self.entries.get(&key).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Digit; 3], &Vec<Triple>)> {
        self.entries.iter()
    }

    /// Number of subsets (always `C(base, 3)`).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Subsets realised by at least one triple.
    pub fn occupied(&self) -> usize {
        self.entries.values().filter(|v| !v.is_empty()).count()
    }

    /// `|N ∩ Cᵢ| ≤ 1` for every subset.
    pub fn is_unique(&self) -> bool {
        self.entries.values().all(|v| v.len() <= 1)
    }

    /// Subsets realised more than once, with their triples.
    pub fn collisions(&self) -> impl Iterator<Item = (&[Digit; 3], &Vec<Triple>)> {
        self.entries.iter().filter(|(_, v)| v.len() > 1)
    }
}

pub fn combination_index(system: &TripleSystem) -> CombinationIndex {
    let mut entries: BTreeMap<[Digit; 3], Vec<Triple>> = three_subsets(system.base())
        .into_iter()
        .map(|s| (s, Vec::new()))
        .collect();
    for t in system.non_diagonal() {
        entries
            .get_mut(&t.sorted_digits())
            .expect("every 3-subset is keyed")
            .push(t);
    }
    CombinationIndex { entries }
}
