use std::fmt;

use thiserror::Error;

use crate::error_model::ErrorClass;
use crate::table::Word;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// What went wrong on a given line of a table file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// A row had the wrong number of cells.
    RowLength { expected: usize, found: usize },
    /// A cell was not a decimal digit below the table base.
    DigitOutOfRange { token: String, base: u8 },
    /// Fewer or more rows than the base.
    WrongRowCount { expected: usize, found: usize },
    /// A non-numeric line that is neither a comment nor `base <n>`.
    UnknownDirective(String),
    /// `base <n>` with n outside the supported range, or repeated.
    BadBase(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RowLength { expected, found } => {
                write!(
                    f,
                    "malformed row length: expected {expected} cells, found {found}"
                )
            }
            Self::DigitOutOfRange { token, base } => {
                write!(f, "digit out of range for base {base}: {token:?}")
            }
            Self::WrongRowCount { expected, found } => {
                write!(
                    f,
                    "wrong row count: expected {expected} rows, found {found}"
                )
            }
            Self::UnknownDirective(line) => write!(f, "unknown directive: {line:?}"),
            Self::BadBase(arg) => write!(f, "invalid base directive: {arg:?}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: ParseErrorKind },

    #[error("unsupported base {0} (expected 4..=10)")]
    UnsupportedBase(usize),

    #[error("grid has {found} cells, expected {expected}")]
    GridSize { expected: usize, found: usize },

    #[error("cell ({row},{column}) holds {value}, out of range for base {base}")]
    CellOutOfRange {
        row: usize,
        column: usize,
        value: u8,
        base: u8,
    },

    #[error("unknown built-in table {0:?}")]
    UnknownBuiltin(String),

    #[error("base mismatch: {left} vs {right}")]
    BaseMismatch { left: u8, right: u8 },

    #[error("triple system does not describe a table: {0}")]
    NotATable(String),

    #[error("table is not a latin square: {0}")]
    NotLatin(String),

    #[error("completion is not unique: {} candidate(s) {}", candidates.len(), fmt_words(candidates))]
    Completion { candidates: Vec<Word> },

    #[error("invalid partial word: {0}")]
    InvalidPartial(String),

    #[error("inadmissible relabeling: {0}")]
    InadmissibleRelabeling(String),

    #[error("no structural shortcut for error class {0}")]
    NoStructuralShortcut(ErrorClass),

    #[error("category {0} out of range (expected 0..=5)")]
    BadCategory(usize),

    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u8, base: u8 },

    #[error("diagonal word {0} is shared by every conjugate and is never issued")]
    DiagonalRejected(Word),

    #[error("word {word} already issued under category {existing}")]
    IssuedElsewhere { word: Word, existing: u8 },

    #[error("registry log line {line}: {reason}")]
    RegistryLog { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn fmt_words(words: &[Word]) -> String {
    let parts: Vec<String> = words.iter().map(Word::to_string).collect();
    format!("[{}]", parts.join(", "))
}
