//! Length-3 single-check-digit codes given as middle-digit tables.
//!
//! A table of base `n` defines `n²` codewords `(r, cell(r, c), c)`. This crate
//! checks such codes against common human transcription errors (single,
//! transposition, twin, jump, phonetic, cyclic and permutation errors),
//! derives the six conjugate codes and admissible relabelings, searches for
//! new permutation-free tables, and offers encoding helpers on top.

pub mod builtin;
pub mod codec;
pub mod conjugacy;
pub mod error;
pub mod error_model;
pub mod generator;
pub mod oracle;
pub mod profile;
pub mod table;
pub mod triples;

pub use error::{Error, ParseErrorKind, Result};
pub use error_model::{ErrorClass, PhoneticRange};
pub use table::{parse_table, CheckTable, Digit, Position, Triple, Word};
