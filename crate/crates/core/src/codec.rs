//! Encoding, membership, completion and the per-category registry.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::conjugacy::conjugate_tables;
use crate::error::{Error, Result};
use crate::error_model::{structural_check, ErrorClass};
use crate::table::{CheckTable, Digit, Position, Word};

fn check_digit(table: &CheckTable, d: Digit) -> Result<Digit> {
    if d < table.base() {
        Ok(d)
    } else {
        Err(Error::DigitOutOfRange {
            digit: d,
            base: table.base(),
        })
    }
}

/// `(r, cell(r, c), c)`.
pub fn encode(table: &CheckTable, r: Digit, c: Digit) -> Result<Word> {
    check_digit(table, r)?;
    check_digit(table, c)?;
    Ok(table.word(r, c))
}

pub fn is_codeword(table: &CheckTable, w: Word) -> bool {
    table.contains(w)
}

/// Two known digits with their positions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PartialWord {
    known: [(Position, Digit); 2],
}

impl PartialWord {
    pub fn new(a: (Position, Digit), b: (Position, Digit)) -> Result<Self> {
        if a.0 == b.0 {
            return Err(Error::InvalidPartial(format!(
                "position {} given twice",
                a.0.index() + 1
            )));
        }
        let mut known = [a, b];
        known.sort();
        Ok(Self { known })
    }

    pub fn known(&self) -> [(Position, Digit); 2] {
        self.known
    }

    pub fn matches(&self, w: Word) -> bool {
        self.known.iter().all(|&(p, d)| w.at(p) == d)
    }
}

/// The unique codeword agreeing with both known digits. Requires a table
/// whose rows and columns are permutations.
pub fn complete(table: &CheckTable, partial: &PartialWord) -> Result<Word> {
    for (_, d) in partial.known {
        check_digit(table, d)?;
    }
    let verdict = structural_check(table, ErrorClass::Single)?;
    if !verdict.passed {
        let ws: Vec<String> = verdict.witnesses.iter().map(|w| w.to_string()).collect();
        return Err(Error::NotLatin(ws.join("; ")));
    }
    let candidates: Vec<Word> = table.words().filter(|&w| partial.matches(w)).collect();
    match candidates.as_slice() {
        [w] => Ok(*w),
        _ => Err(Error::Completion { candidates }),
    }
}

/// Codewords whose digit multiset contains `digits` (as a multiset), sorted.
pub fn words_containing(table: &CheckTable, digits: &[Digit]) -> Vec<Word> {
    let mut want = [0u8; 16];
    for &d in digits {
        want[d as usize & 15] += 1;
    }
    let mut out: Vec<Word> = table
        .words()
        .filter(|w| {
            let mut have = [0u8; 16];
            for d in w.0 {
                have[d as usize] += 1;
            }
            want.iter().zip(have).all(|(&need, got)| got >= need)
        })
        .collect();
    out.sort();
    out
}

/// Result of a registry issue request.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Issued {
    New(Word),
    /// The same `(category, r, c)` was issued before; nothing was logged.
    Duplicate(Word),
}

impl Issued {
    pub fn word(self) -> Word {
        match self {
            Issued::New(w) | Issued::Duplicate(w) => w,
        }
    }
}

/// Issues identifiers from the six conjugates of one table, one conjugate
/// per category, so that words are unique across all categories.
///
/// With a log path, every new word is appended as `<category> <d1><d2><d3>`
/// and the log is replayed on open.
#[derive(Debug)]
pub struct CategoryRegistry {
    conjugates: Vec<CheckTable>,
    issued: BTreeMap<Word, u8>,
    log: Vec<(u8, Word)>,
    log_path: Option<PathBuf>,
}

impl CategoryRegistry {
    pub const CATEGORIES: usize = 6;

    pub fn new(table: &CheckTable) -> Result<Self> {
        Ok(Self {
            conjugates: conjugate_tables(table)?,
            issued: BTreeMap::new(),
            log: Vec::new(),
            log_path: None,
        })
    }

    /// Opens (creating if absent) an append-only log and replays it.
    pub fn open(table: &CheckTable, path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut reg = Self::new(table)?;
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            for (idx, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let bad = |reason: String| Error::RegistryLog {
                    line: idx + 1,
                    reason,
                };
                let (category, word) = parse_log_line(&line).map_err(bad)?;
                if !reg.conjugates[category as usize].contains(word) {
                    return Err(bad(format!(
                        "{word} is not a codeword of category {category}"
                    )));
                }
                reg.record(category, word).map_err(|e| bad(e.to_string()))?;
            }
        }
        reg.log_path = Some(path.to_path_buf());
        Ok(reg)
    }

    pub fn conjugate(&self, category: usize) -> Result<&CheckTable> {
        self.conjugates
            .get(category)
            .ok_or(Error::BadCategory(category))
    }

    /// Issued words in issue order.
    pub fn log(&self) -> &[(u8, Word)] {
        &self.log
    }

    pub fn category_of(&self, w: Word) -> Option<u8> {
        self.issued.get(&w).copied()
    }

    fn record(&mut self, category: u8, word: Word) -> Result<Issued> {
        if word.is_constant() {
            return Err(Error::DiagonalRejected(word));
        }
        match self.issued.get(&word) {
            Some(&c) if c == category => Ok(Issued::Duplicate(word)),
            Some(&existing) => Err(Error::IssuedElsewhere { word, existing }),
            None => {
                self.issued.insert(word, category);
                self.log.push((category, word));
                Ok(Issued::New(word))
            }
        }
    }

    /// Encodes `(r, c)` under conjugate `category`.
    pub fn issue(&mut self, category: usize, r: Digit, c: Digit) -> Result<Issued> {
        let word = encode(self.conjugate(category)?, r, c)?;
        let issued = self.record(category as u8, word)?;
        if let (Issued::New(w), Some(path)) = (issued, &self.log_path) {
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            f.write_all(format_log_line(category as u8, w).as_bytes())?;
        }
        Ok(issued)
    }
}

pub fn format_log_line(category: u8, w: Word) -> String {
    format!("{category} {w}\n")
}

fn parse_log_line(line: &str) -> std::result::Result<(u8, Word), String> {
    let (cat, word) = line
        .split_once(' ')
        .ok_or_else(|| format!("expected `<category> <word>`, got {line:?}"))?;
    let category: u8 = match cat.as_bytes() {
        [d @ b'0'..=b'5'] => d - b'0',
        _ => return Err(format!("bad category {cat:?}")),
    };
    let word: Word = word.parse()?;
    Ok((category, word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn partial(a: (usize, Digit), b: (usize, Digit)) -> PartialWord {
        PartialWord::new(
            (Position::from_number(a.0).unwrap(), a.1),
            (Position::from_number(b.0).unwrap(), b.1),
        )
        .unwrap()
    }

    #[test]
    fn encode_examples() {
        let t3 = builtin::dunning_t3();
        assert_eq!(encode(&t3, 0, 1).unwrap(), w("091"));
        assert_eq!(encode(&t3, 3, 5).unwrap(), w("345"));
        assert_eq!(encode(&t3, 9, 9).unwrap(), w("999"));
        assert!(encode(&t3, 10, 0).is_err());
    }

    #[test]
    fn membership() {
        let t3 = builtin::dunning_t3();
        assert!(is_codeword(&t3, w("150")));
        assert!(!is_codeword(&t3, w("110")));
        assert!(is_codeword(&builtin::verhoeff_regular(), w("302")));
    }

    #[test]
    fn completion_examples() {
        let t3 = builtin::dunning_t3();
        assert_eq!(complete(&t3, &partial((2, 4), (3, 5))).unwrap(), w("345"));
        assert_eq!(complete(&t3, &partial((1, 7), (2, 9))).unwrap(), w("792"));
        assert_eq!(complete(&t3, &partial((1, 0), (3, 0))).unwrap(), w("000"));
    }

    #[test]
    fn completion_needs_latin_table() {
        let t = CheckTable::from_fn(4, |r, _| r).unwrap();
        assert!(matches!(
            complete(&t, &partial((1, 0), (2, 0))),
            Err(Error::NotLatin(_))
        ));
        assert!(PartialWord::new((Position::First, 1), (Position::First, 2)).is_err());
    }

    #[test]
    fn containing_queries() {
        let t3 = builtin::dunning_t3();
        assert_eq!(words_containing(&t3, &[0, 1, 9]), vec![w("091")]);
        assert_eq!(words_containing(&t3, &[5, 5]), vec![w("555")]);
        assert!(words_containing(&t3, &[0, 1]).len() > 1);
    }

    #[test]
    fn registry_issue_rules() {
        let mut reg = CategoryRegistry::new(&builtin::dunning_t3()).unwrap();
        assert_eq!(reg.issue(0, 0, 1).unwrap(), Issued::New(w("091")));
        assert_eq!(reg.issue(0, 0, 1).unwrap(), Issued::Duplicate(w("091")));
        for k in 0..6 {
            assert!(matches!(
                reg.issue(k, 4, 4),
                Err(Error::DiagonalRejected(_))
            ));
        }
        assert!(matches!(reg.issue(6, 0, 1), Err(Error::BadCategory(6))));
        assert_eq!(reg.log(), &[(0, w("091"))]);
    }

    #[test]
    fn registry_log_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("issued.log");
        let t3 = builtin::dunning_t3();
        {
            let mut reg = CategoryRegistry::open(&t3, &path).unwrap();
            reg.issue(0, 0, 1).unwrap();
            reg.issue(2, 3, 7).unwrap();
            reg.issue(2, 3, 7).unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("0 091\n"));

        let mut reg = CategoryRegistry::open(&t3, &path).unwrap();
        assert_eq!(reg.log().len(), 2);
        assert!(matches!(reg.issue(0, 0, 1).unwrap(), Issued::Duplicate(_)));

        // replayed duplicates are tolerated
        std::fs::write(&path, "0 091\n0 091\n").unwrap();
        assert_eq!(CategoryRegistry::open(&t3, &path).unwrap().log().len(), 1);

        std::fs::write(&path, "0 092\n").unwrap();
        assert!(matches!(
            CategoryRegistry::open(&t3, &path),
            Err(Error::RegistryLog { line: 1, .. })
        ));
        std::fs::write(&path, "7 091\n").unwrap();
        assert!(CategoryRegistry::open(&t3, &path).is_err());
    }
}
