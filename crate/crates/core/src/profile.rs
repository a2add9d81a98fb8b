//! Structural properties of a table that govern which errors it detects.
//!
//! Row map for row `r` is `c ↦ cell(r, c)`; column map for column `c` is
//! `r ↦ cell(r, c)`. A row fixed point is `cell(r, c) = c`, a column fixed
//! point is `cell(r, c) = r`.

use serde::Serialize;

use crate::table::{CheckTable, Digit};
use crate::triples::{combination_index, to_triples};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StructuralProfile {
    pub rows_are_permutations: bool,
    pub columns_are_permutations: bool,
    pub row_fixed_point_counts: Vec<usize>,
    pub column_fixed_point_counts: Vec<usize>,
    /// `(row, a, b)` with `a < b`, `cell(row, a) = b` and `cell(row, b) = a`.
    pub row_two_cycles: Vec<(Digit, Digit, Digit)>,
    /// `(column, a, b)` with `a < b`, `cell(a, column) = b` and `cell(b, column) = a`.
    pub column_two_cycles: Vec<(Digit, Digit, Digit)>,
    pub diagonal_is_permutation: bool,
    pub asymmetric_off_diagonal: bool,
    /// Every triple outside the diagonal uses three distinct digits.
    pub n_triples_all_distinct_symbols: bool,
    pub three_subset_unique: bool,
}

impl StructuralProfile {
    pub fn is_latin(&self) -> bool {
        self.rows_are_permutations && self.columns_are_permutations
    }

    pub fn max_fixed_points(&self) -> usize {
        self.row_fixed_point_counts
            .iter()
            .chain(&self.column_fixed_point_counts)
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Every criterion holds.
    pub fn all_pass(&self) -> bool {
        self.is_latin()
            && self.max_fixed_points() <= 1
            && self.row_two_cycles.is_empty()
            && self.column_two_cycles.is_empty()
            && self.diagonal_is_permutation
            && self.asymmetric_off_diagonal
            && self.n_triples_all_distinct_symbols
            && self.three_subset_unique
    }
}

pub(crate) fn is_permutation(values: impl IntoIterator<Item = Digit>, base: u8) -> bool {
    let mut seen = 0u32;
    let mut count = 0usize;
    for v in values {
        seen |= 1 << v;
        count += 1;
    }
    count == base as usize && seen == (1u32 << base) - 1
}

pub fn structural_profile(table: &CheckTable) -> StructuralProfile {
    let base = table.base();
    let digits = || table.digits();

    let rows_are_permutations =
        digits().all(|r| is_permutation(table.row(r).iter().copied(), base));
    let columns_are_permutations = digits().all(|c| is_permutation(table.column(c), base));

    let row_fixed_point_counts = digits()
        .map(|r| digits().filter(|&c| table.cell(r, c) == c).count())
        .collect();
    let column_fixed_point_counts = digits()
        .map(|c| digits().filter(|&r| table.cell(r, c) == r).count())
        .collect();

    let mut row_two_cycles = Vec::new();
    let mut column_two_cycles = Vec::new();
    for line in digits() {
        for a in digits() {
            for b in a + 1..base {
                if table.cell(line, a) == b && table.cell(line, b) == a {
                    row_two_cycles.push((line, a, b));
                }
                if table.cell(a, line) == b && table.cell(b, line) == a {
                    column_two_cycles.push((line, a, b));
                }
            }
        }
    }

    let diagonal_is_permutation = is_permutation(digits().map(|i| table.cell(i, i)), base);
    let asymmetric_off_diagonal =
        digits().all(|a| (a + 1..base).all(|c| table.cell(a, c) != table.cell(c, a)));

    let system = to_triples(table);
    let n_triples_all_distinct_symbols = system.degenerate().next().is_none();
    let three_subset_unique = combination_index(&system).is_unique();

    StructuralProfile {
        rows_are_permutations,
        columns_are_permutations,
        row_fixed_point_counts,
        column_fixed_point_counts,
        row_two_cycles,
        column_two_cycles,
        diagonal_is_permutation,
        asymmetric_off_diagonal,
        n_triples_all_distinct_symbols,
        three_subset_unique,
    }
}
