//! Digits, codewords and middle-digit check tables.
//!
//! A [`CheckTable`] of base `n` is an `n × n` grid. The cell at `(r, c)` holds
//! the middle (check) digit `s`, and the code is the set of words `(r, s, c)`.
//! Being a latin square is deliberately *not* an invariant of the type; the
//! verifier has to be able to load and diagnose arbitrary tables.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, ParseErrorKind, Result};

/// A symbol of the code alphabet. Its base is carried by the containing table.
pub type Digit = u8;

pub const MIN_BASE: u8 = 4;
pub const MAX_BASE: u8 = 10;
pub const DEFAULT_BASE: u8 = 10;

pub(crate) fn check_base(base: usize) -> Result<u8> {
    if (MIN_BASE as usize..=MAX_BASE as usize).contains(&base) {
        Ok(base as u8)
    } else {
        Err(Error::UnsupportedBase(base))
    }
}

/// A transmitted codeword `(d1, d2, d3)`.
///
/// The same three digits read as `(row, symbol, column)` form a triple of the
/// orthogonal-array view, so [`Triple`] is an alias.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(pub [Digit; 3]);

pub type Triple = Word;

impl Word {
    pub const fn new(d1: Digit, d2: Digit, d3: Digit) -> Self {
        Self([d1, d2, d3])
    }

    pub const fn digits(self) -> [Digit; 3] {
        self.0
    }

    /// Row coordinate (first digit).
    pub const fn r(self) -> Digit {
        self.0[0]
    }

    /// Middle symbol (second digit).
    pub const fn s(self) -> Digit {
        self.0[1]
    }

    /// Column coordinate (third digit).
    pub const fn c(self) -> Digit {
        self.0[2]
    }

    /// Digit at 1-based transmitted position.
    pub fn at(self, position: Position) -> Digit {
        self.0[position.index()]
    }

    pub fn is_constant(self) -> bool {
        self.0[0] == self.0[1] && self.0[1] == self.0[2]
    }

    pub fn all_distinct(self) -> bool {
        let [a, b, c] = self.0;
        a != b && b != c && a != c
    }

    /// Digits in ascending order; two words are permutations of each other
    /// iff their sorted digits agree.
    pub fn sorted_digits(self) -> [Digit; 3] {
        let mut d = self.0;
        d.sort_unstable();
        d
    }

    pub fn in_base(self, base: u8) -> bool {
        self.0.iter().all(|&d| d < base)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{a}{b}{c}")
    }
}

impl FromStr for Word {
    type Err = String;

    /// Parses three concatenated decimal digits, e.g. `"302"`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != 3 || !bytes.iter().all(u8::is_ascii_digit) {
            return Err(format!("expected three decimal digits, got {s:?}"));
        }
        Ok(Word([bytes[0] - b'0', bytes[1] - b'0', bytes[2] - b'0']))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(3)?;
        for d in self.0 {
            tup.serialize_element(&d)?;
        }
        tup.end()
    }
}

/// A 1-based transmitted position.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Position {
    First,
    Second,
    Third,
}

impl Position {
    pub const ALL: [Position; 3] = [Position::First, Position::Second, Position::Third];

    pub const fn index(self) -> usize {
        match self {
            Position::First => 0,
            Position::Second => 1,
            Position::Third => 2,
        }
    }

    pub fn from_number(n: usize) -> Option<Self> {
        match n {
            1 => Some(Position::First),
            2 => Some(Position::Second),
            3 => Some(Position::Third),
            _ => None,
        }
    }
}

/// Square grid of middle digits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckTable {
    base: u8,
    cells: Vec<Digit>,
    name: Option<String>,
}

impl CheckTable {
    /// Builds a table from row-major cells. Fails if the grid is not
    /// `base × base` or a cell is out of range.
    pub fn new(base: usize, cells: Vec<Digit>) -> Result<Self> {
        let base = check_base(base)?;
        let n = base as usize;
        if cells.len() != n * n {
            return Err(Error::GridSize {
                expected: n * n,
                found: cells.len(),
            });
        }
        if let Some(i) = cells.iter().position(|&d| d >= base) {
            return Err(Error::CellOutOfRange {
                row: i / n,
                column: i % n,
                value: cells[i],
                base,
            });
        }
        Ok(Self {
            base,
            cells,
            name: None,
        })
    }

    pub fn from_rows<R: AsRef<[Digit]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::GridSize {
                    expected: n * n,
                    found: n * (n - 1) + row.len(),
                });
            }
            cells.extend_from_slice(row);
        }
        Self::new(n, cells)
    }

    /// Builds a table with `cell(r, c) = f(r, c)`.
    pub fn from_fn(base: usize, mut f: impl FnMut(Digit, Digit) -> Digit) -> Result<Self> {
        let b = check_base(base)?;
        let cells = (0..b)
            .flat_map(|r| (0..b).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        Self::new(base, cells)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    pub fn size(&self) -> usize {
        self.base as usize
    }

    #[inline]
    pub fn cell(&self, row: Digit, column: Digit) -> Digit {
        self.cells[row as usize * self.size() + column as usize]
    }

    pub fn row(&self, row: Digit) -> &[Digit] {
        let n = self.size();
        let start = row as usize * n;
        &self.cells[start..start + n]
    }

    pub fn column(&self, column: Digit) -> impl Iterator<Item = Digit> + '_ {
        (0..self.base).map(move |r| self.cell(r, column))
    }

    pub fn cells(&self) -> &[Digit] {
        &self.cells
    }

    pub fn digits(&self) -> std::ops::Range<Digit> {
        0..self.base
    }

    /// The codeword `(r, cell(r, c), c)`.
    pub fn word(&self, row: Digit, column: Digit) -> Word {
        Word::new(row, self.cell(row, column), column)
    }

    /// All `base²` codewords in row-major order.
    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        self.digits()
            .flat_map(move |r| self.digits().map(move |c| self.word(r, c)))
    }

    pub fn contains(&self, w: Word) -> bool {
        w.in_base(self.base) && self.cell(w.r(), w.c()) == w.s()
    }

    /// The transposed table, `cell'(r, c) = cell(c, r)`.
    pub fn transpose(&self) -> CheckTable {
        CheckTable::from_fn(self.size(), |r, c| self.cell(c, r)).expect("same shape")
    }

    /// Canonical text form: `base <n>` followed by one space-separated row
    /// per line, newline-terminated.
    pub fn to_canonical_string(&self) -> String {
        let n = self.size();
        let mut out = String::with_capacity(8 + n * 2 * n);
        out.push_str(&format!("base {}\n", self.base));
        for r in self.digits() {
            let row: Vec<String> = self.row(r).iter().map(u8::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for CheckTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl FromStr for CheckTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_table(s)
    }
}

/// Parses the table file format.
///
/// Blank lines and lines starting with `#` are ignored. An optional
/// `base <n>` line must precede the rows; without it the base is 10.
pub fn parse_table(text: &str) -> Result<CheckTable> {
    let mut base: Option<u8> = None;
    let mut cells = Vec::new();
    let mut rows = 0usize;
    let mut last_line = 0usize;

    let perr = |line: usize, kind: ParseErrorKind| Error::Parse { line, kind };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        last_line = line_no;
        let first = line.split_whitespace().next().unwrap_or_default();
        if !first.bytes().all(|b| b.is_ascii_digit()) {
            let mut parts = line.split_whitespace();
            if parts.next() == Some("base") && rows == 0 && base.is_none() {
                let arg = parts.next().unwrap_or_default();
                if parts.next().is_some() {
                    return Err(perr(line_no, ParseErrorKind::BadBase(line.to_string())));
                }
                let n: usize = arg
                    .parse()
                    .map_err(|_| perr(line_no, ParseErrorKind::BadBase(arg.to_string())))?;
                let n = check_base(n)
                    .map_err(|_| perr(line_no, ParseErrorKind::BadBase(arg.to_string())))?;
                base = Some(n);
                continue;
            }
            return Err(perr(
                line_no,
                ParseErrorKind::UnknownDirective(line.to_string()),
            ));
        }

        let b = *base.get_or_insert(DEFAULT_BASE);
        let n = b as usize;
        rows += 1;
        if rows > n {
            return Err(perr(
                line_no,
                ParseErrorKind::WrongRowCount {
                    expected: n,
                    found: rows,
                },
            ));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            return Err(perr(
                line_no,
                ParseErrorKind::RowLength {
                    expected: n,
                    found: tokens.len(),
                },
            ));
        }
        for tok in tokens {
            match tok.parse::<u8>() {
                Ok(d) if d < b && tok.len() == 1 => cells.push(d),
                _ => {
                    return Err(perr(
                        line_no,
                        ParseErrorKind::DigitOutOfRange {
                            token: tok.to_string(),
                            base: b,
                        },
                    ))
                }
            }
        }
    }

    let b = base.unwrap_or(DEFAULT_BASE);
    if rows != b as usize {
        return Err(perr(
            last_line.max(1),
            ParseErrorKind::WrongRowCount {
                expected: b as usize,
                found: rows,
            },
        ));
    }
    CheckTable::new(b as usize, cells)
}
