//! Error classes as explicit corruption families, exhaustive detection, and
//! the table criteria that predict detection without enumeration.
//!
//! Every undetected error is reported once, as an unordered pair of distinct
//! codewords `{w, w'}` where `w'` is reachable from `w` by one error of the
//! class. Pairs are kept sorted so reports are reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::profile::{is_permutation, structural_profile};
use crate::table::{CheckTable, Digit, Word};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ErrorClass {
    /// One digit changes.
    Single,
    /// `ab → ba` in positions 1–2 or 2–3, `a ≠ b`.
    AdjacentTransposition,
    /// `aa → bb` in positions 1–2 or 2–3.
    Twin,
    /// `aba → cbc`.
    JumpTwin,
    /// `abc → cba`.
    JumpTransposition,
    /// `(X, 0, c) ↔ (1, X, c)` for `X ≥ 2`: the leading pair is misheard.
    PhoneticRight,
    /// `(r, X, 0) ↔ (r, 1, X)` for `X ≥ 2`: the trailing pair is misheard.
    PhoneticLeft,
    /// `abc → bca`.
    Cyclic,
    /// Any rearrangement of the three digits.
    Permutation,
    /// All three digits change.
    TripleError,
}

impl ErrorClass {
    pub const ALL: [ErrorClass; 10] = [
        ErrorClass::Single,
        ErrorClass::AdjacentTransposition,
        ErrorClass::Twin,
        ErrorClass::JumpTwin,
        ErrorClass::JumpTransposition,
        ErrorClass::PhoneticRight,
        ErrorClass::PhoneticLeft,
        ErrorClass::Cyclic,
        ErrorClass::Permutation,
        ErrorClass::TripleError,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            ErrorClass::Single => "single",
            ErrorClass::AdjacentTransposition => "adjacent-transposition",
            ErrorClass::Twin => "twin",
            ErrorClass::JumpTwin => "jump-twin",
            ErrorClass::JumpTransposition => "jump-transposition",
            ErrorClass::PhoneticRight => "phonetic-right",
            ErrorClass::PhoneticLeft => "phonetic-left",
            ErrorClass::Cyclic => "cyclic",
            ErrorClass::Permutation => "permutation",
            ErrorClass::TripleError => "triple",
        }
    }

    /// Whether a table criterion decides detection for this class.
    pub const fn has_structural_shortcut(self) -> bool {
        matches!(
            self,
            ErrorClass::Single
                | ErrorClass::AdjacentTransposition
                | ErrorClass::Twin
                | ErrorClass::JumpTwin
                | ErrorClass::JumpTransposition
                | ErrorClass::Permutation
        )
    }

    /// Classes that are expected to be fully detected by a good code.
    pub fn detectable() -> impl Iterator<Item = ErrorClass> {
        Self::ALL
            .into_iter()
            .filter(|c| *c != ErrorClass::TripleError)
    }
}

impl fmt::Display for ErrorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ErrorClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|c| c.name() == norm || (norm == "triple-error" && *c == ErrorClass::TripleError))
            .ok_or_else(|| format!("unknown error class {s:?}"))
    }
}

impl Serialize for ErrorClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Range of the digit not involved in a phonetic confusion.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum PhoneticRange {
    /// Every digit of the alphabet.
    #[default]
    Full,
    /// Only `2..base`, as in the original construction constraints.
    Literal,
}

impl PhoneticRange {
    fn admits(self, d: Digit) -> bool {
        match self {
            PhoneticRange::Full => true,
            PhoneticRange::Literal => d >= 2,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            PhoneticRange::Full => "full",
            PhoneticRange::Literal => "literal",
        }
    }
}

impl fmt::Display for PhoneticRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PhoneticRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "full" => Ok(PhoneticRange::Full),
            "literal" => Ok(PhoneticRange::Literal),
            _ => Err(format!(
                "unknown phonetic range {s:?} (expected full or literal)"
            )),
        }
    }
}

/// Words reachable from `w` by one error of `class`, with the full phonetic range.
pub fn corruptions(class: ErrorClass, w: Word, base: u8) -> BTreeSet<Word> {
    corruptions_with(class, w, base, PhoneticRange::Full)
}

pub fn corruptions_with(
    class: ErrorClass,
    w: Word,
    base: u8,
    range: PhoneticRange,
) -> BTreeSet<Word> {
    let [a, b, c] = w.digits();
    let mut out = BTreeSet::new();
    let alphabet = 0..base;
    match class {
        ErrorClass::Single => {
            for pos in 0..3 {
                for d in alphabet.clone() {
                    let mut v = w.0;
                    v[pos] = d;
                    out.insert(Word(v));
                }
            }
        }
        ErrorClass::AdjacentTransposition => {
            if a != b {
                out.insert(Word::new(b, a, c));
            }
            if b != c {
                out.insert(Word::new(a, c, b));
            }
        }
        ErrorClass::Twin => {
            for d in alphabet {
                if a == b {
                    out.insert(Word::new(d, d, c));
                }
                if b == c {
                    out.insert(Word::new(a, d, d));
                }
            }
        }
        ErrorClass::JumpTwin => {
            if a == c {
                for d in alphabet {
                    out.insert(Word::new(d, b, d));
                }
            }
        }
        ErrorClass::JumpTransposition => {
            out.insert(Word::new(c, b, a));
        }
        ErrorClass::PhoneticRight => {
            if range.admits(c) {
                if b == 0 && a >= 2 {
                    out.insert(Word::new(1, a, c));
                }
                if a == 1 && b >= 2 {
                    out.insert(Word::new(b, 0, c));
                }
            }
        }
        ErrorClass::PhoneticLeft => {
            if range.admits(a) {
                if c == 0 && b >= 2 {
                    out.insert(Word::new(a, 1, b));
                }
                if b == 1 && c >= 2 {
                    out.insert(Word::new(a, c, 0));
                }
            }
        }
        ErrorClass::Cyclic => {
            out.insert(Word::new(b, c, a));
        }
        ErrorClass::Permutation => {
            for v in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                out.insert(Word(v));
            }
        }
        ErrorClass::TripleError => {
            for x in alphabet.clone().filter(|&x| x != a) {
                for y in alphabet.clone().filter(|&y| y != b) {
                    for z in alphabet.clone().filter(|&z| z != c) {
                        out.insert(Word::new(x, y, z));
                    }
                }
            }
        }
    }
    out.remove(&w);
    out
}

/// Orders a pair so the smaller word comes first.
pub fn unordered(w: Word, v: Word) -> (Word, Word) {
    if w <= v {
        (w, v)
    } else {
        (v, w)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DetectionReport {
    pub class: ErrorClass,
    #[serde(skip)]
    pub base: u8,
    pub pair_count: usize,
    pub undetected: Vec<(Word, Word)>,
    #[serde(skip)]
    pub words_examined: usize,
    pub structural_equivalent_passed: Option<bool>,
}

impl DetectionReport {
    pub fn is_clean(&self) -> bool {
        self.undetected.is_empty()
    }

    pub fn contains(&self, w: Word, v: Word) -> bool {
        self.undetected.binary_search(&unordered(w, v)).is_ok()
    }
}

/// Exhaustively lists undetected errors of `class` (full phonetic range).
pub fn detect(table: &CheckTable, class: ErrorClass) -> DetectionReport {
    detect_with(table, class, PhoneticRange::Full)
}

fn triple_error_codewords(table: &CheckTable, w: Word) -> impl Iterator<Item = Word> + '_ {
    let [a, b, c] = w.digits();
    table
        .digits()
        .filter(move |&r| r != a)
        .flat_map(move |r| {
            table
                .digits()
                .filter(move |&col| col != c)
                .map(move |col| table.word(r, col))
        })
        .filter(move |v| v.s() != b)
}

pub fn detect_with(table: &CheckTable, class: ErrorClass, range: PhoneticRange) -> DetectionReport {
    let mut pairs = BTreeSet::new();
    let mut words_examined = 0;
    for w in table.words() {
        words_examined += 1;
        if class == ErrorClass::TripleError {
            // Codewords are indexed by (r, c), so only those need visiting.
            for v in triple_error_codewords(table, w) {
                pairs.insert(unordered(w, v));
            }
            continue;
        }
        for v in corruptions_with(class, w, table.base(), range) {
            if table.contains(v) {
                pairs.insert(unordered(w, v));
            }
        }
    }
    let undetected: Vec<_> = pairs.into_iter().collect();
    DetectionReport {
        class,
        base: table.base(),
        pair_count: undetected.len(),
        undetected,
        words_examined,
        structural_equivalent_passed: None,
    }
}

/// Evidence that a table criterion fails.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    /// A row map repeats `symbol`.
    RowRepeat {
        row: Digit,
        symbol: Digit,
    },
    /// A column map repeats `symbol`.
    ColumnRepeat {
        column: Digit,
        symbol: Digit,
    },
    RowTwoCycle {
        row: Digit,
        a: Digit,
        b: Digit,
    },
    ColumnTwoCycle {
        column: Digit,
        a: Digit,
        b: Digit,
    },
    RowFixedPoints {
        row: Digit,
        count: usize,
    },
    ColumnFixedPoints {
        column: Digit,
        count: usize,
    },
    /// `symbol` appears more than once on the main diagonal.
    DiagonalRepeat {
        symbol: Digit,
    },
    /// `cell(a, c) = cell(c, a)` with `a < c`.
    SymmetricPair {
        a: Digit,
        c: Digit,
    },
    /// Distinct codewords with the same digit multiset.
    SharedMultiset {
        words: Vec<Word>,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::RowRepeat { row, symbol } => write!(f, "row {row} repeats {symbol}"),
            Witness::ColumnRepeat { column, symbol } => {
                write!(f, "column {column} repeats {symbol}")
            }
            Witness::RowTwoCycle { row, a, b } => write!(f, "row {row} swaps {a} and {b}"),
            Witness::ColumnTwoCycle { column, a, b } => {
                write!(f, "column {column} swaps {a} and {b}")
            }
            Witness::RowFixedPoints { row, count } => {
                write!(f, "row {row} has {count} fixed points")
            }
            Witness::ColumnFixedPoints { column, count } => {
                write!(f, "column {column} has {count} fixed points")
            }
            Witness::DiagonalRepeat { symbol } => write!(f, "diagonal repeats {symbol}"),
            Witness::SymmetricPair { a, c } => write!(f, "cell({a},{c}) = cell({c},{a})"),
            Witness::SharedMultiset { words } => {
                let ws: Vec<String> = words.iter().map(Word::to_string).collect();
                write!(f, "same digits: {}", ws.join(" "))
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructuralVerdict {
    pub class: ErrorClass,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

fn repeats(values: impl Iterator<Item = Digit>) -> Vec<Digit> {
    let mut counts = [0u8; 16];
    for v in values {
        counts[v as usize] += 1;
    }
    (0..16u8).filter(|&d| counts[d as usize] > 1).collect()
}

/// Decides detection of `class` from table structure alone.
pub fn structural_check(table: &CheckTable, class: ErrorClass) -> Result<StructuralVerdict> {
    let base = table.base();
    let mut witnesses = Vec::new();
    match class {
        ErrorClass::Single => {
            for r in table.digits() {
                if !is_permutation(table.row(r).iter().copied(), base) {
                    for symbol in repeats(table.row(r).iter().copied()) {
                        witnesses.push(Witness::RowRepeat { row: r, symbol });
                    }
                }
            }
            for c in table.digits() {
                if !is_permutation(table.column(c), base) {
                    for symbol in repeats(table.column(c)) {
                        witnesses.push(Witness::ColumnRepeat { column: c, symbol });
                    }
                }
            }
        }
        ErrorClass::AdjacentTransposition => {
            let p = structural_profile(table);
            witnesses.extend(
                p.row_two_cycles
                    .iter()
                    .map(|&(row, a, b)| Witness::RowTwoCycle { row, a, b }),
            );
            witnesses.extend(
                p.column_two_cycles
                    .iter()
                    .map(|&(column, a, b)| Witness::ColumnTwoCycle { column, a, b }),
            );
        }
        ErrorClass::Twin => {
            let p = structural_profile(table);
            for (row, &count) in p.row_fixed_point_counts.iter().enumerate() {
                if count > 1 {
                    witnesses.push(Witness::RowFixedPoints {
                        row: row as Digit,
                        count,
                    });
                }
            }
            for (column, &count) in p.column_fixed_point_counts.iter().enumerate() {
                if count > 1 {
                    witnesses.push(Witness::ColumnFixedPoints {
                        column: column as Digit,
                        count,
                    });
                }
            }
        }
        ErrorClass::JumpTwin => {
            for symbol in repeats(table.digits().map(|i| table.cell(i, i))) {
                witnesses.push(Witness::DiagonalRepeat { symbol });
            }
        }
        ErrorClass::JumpTransposition => {
            for a in table.digits() {
                for c in a + 1..base {
                    if table.cell(a, c) == table.cell(c, a) {
                        witnesses.push(Witness::SymmetricPair { a, c });
                    }
                }
            }
        }
        ErrorClass::Permutation => {
            let mut by_multiset: BTreeMap<[Digit; 3], Vec<Word>> = BTreeMap::new();
            for w in table.words() {
                by_multiset.entry(w.sorted_digits()).or_default().push(w);
            }
            witnesses.extend(
                by_multiset
                    .into_values()
                    .filter(|ws| ws.len() > 1)
                    .map(|words| Witness::SharedMultiset { words }),
            );
        }
        other => return Err(Error::NoStructuralShortcut(other)),
    }
    Ok(StructuralVerdict {
        class,
        passed: witnesses.is_empty(),
        witnesses,
    })
}

/// Detection reports for every class of one table.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FullReport {
    pub table_name: String,
    pub base: u8,
    pub classes: Vec<DetectionReport>,
}

impl FullReport {
    pub fn get(&self, class: ErrorClass) -> &DetectionReport {
        self.classes
            .iter()
            .find(|r| r.class == class)
            .expect("report covers every class")
    }

    /// No undetected error in any class except triple errors.
    pub fn passes(&self) -> bool {
        self.classes
            .iter()
            .filter(|r| r.class != ErrorClass::TripleError)
            .all(DetectionReport::is_clean)
    }

    /// Pretty JSON with fixed key order, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

pub fn full_report(table: &CheckTable) -> FullReport {
    report_for(table, &ErrorClass::ALL, PhoneticRange::Full)
}

/// Runs `classes` in the given order and attaches structural verdicts where a
/// shortcut exists.
pub fn report_for(table: &CheckTable, classes: &[ErrorClass], range: PhoneticRange) -> FullReport {
    let classes = classes
        .iter()
        .map(|&class| {
            let mut report = detect_with(table, class, range);
            report.structural_equivalent_passed =
                structural_check(table, class).ok().map(|v| v.passed);
            report
        })
        .collect();
    FullReport {
        table_name: table.name().unwrap_or("unnamed").to_string(),
        base: table.base(),
        classes,
    }
}
