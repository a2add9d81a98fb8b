use std::fmt;

use crate::conjugacy::RolePermutation;
use crate::error::{Error, Result};
use crate::error_model::PhoneticRange;
use crate::table::{check_base, CheckTable, Digit, Triple, Word};
use crate::triples::three_subsets;

use super::SearchConfig;

/// A constraint family of the generation model.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    RowAllDifferent,
    ColumnAllDifferent,
    /// `cell(i, i) = i`.
    DiagonalIdentity,
    /// `cell(r, c) ∉ {r, c}` for `r ≠ c`.
    OffDiagonalThreeDistinct,
    /// Each 3-subset is realised by at most one off-diagonal cell.
    ThreeSubsetUnique,
    /// The right-phonetic pattern with a role permutation applied.
    Phonetic(RolePermutation),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::RowAllDifferent => f.write_str("RowAllDifferent"),
            Family::ColumnAllDifferent => f.write_str("ColumnAllDifferent"),
            Family::DiagonalIdentity => f.write_str("DiagonalIdentity"),
            Family::OffDiagonalThreeDistinct => f.write_str("OffDiagonalThreeDistinct"),
            Family::ThreeSubsetUnique => f.write_str("ThreeSubsetUnique"),
            Family::Phonetic(t) => write!(f, "Phonetic{t}"),
        }
    }
}

/// One ground constraint.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Constraint {
    RowAllDifferent {
        row: Digit,
    },
    ColumnAllDifferent {
        column: Digit,
    },
    DiagonalIdentity {
        index: Digit,
    },
    OffDiagonalThreeDistinct {
        row: Digit,
        column: Digit,
    },
    ThreeSubsetUnique {
        subset: [Digit; 3],
    },
    /// At most one of the two triples may be a codeword.
    Phonetic {
        role: RolePermutation,
        pair: [Triple; 2],
    },
}

impl Constraint {
    pub fn family(&self) -> Family {
        match self {
            Constraint::RowAllDifferent { .. } => Family::RowAllDifferent,
            Constraint::ColumnAllDifferent { .. } => Family::ColumnAllDifferent,
            Constraint::DiagonalIdentity { .. } => Family::DiagonalIdentity,
            Constraint::OffDiagonalThreeDistinct { .. } => Family::OffDiagonalThreeDistinct,
            Constraint::ThreeSubsetUnique { .. } => Family::ThreeSubsetUnique,
            Constraint::Phonetic { role, .. } => Family::Phonetic(*role),
        }
    }

    /// The (up to six) triples realising a 3-subset.
    pub fn subset_placements(subset: [Digit; 3]) -> [Triple; 6] {
        let [a, b, c] = subset;
        [
            Word::new(a, b, c),
            Word::new(a, c, b),
            Word::new(b, a, c),
            Word::new(b, c, a),
            Word::new(c, a, b),
            Word::new(c, b, a),
        ]
    }

    pub fn is_satisfied_by(&self, table: &CheckTable) -> bool {
        let base = table.base();
        match *self {
            Constraint::RowAllDifferent { row } => {
                crate::profile::is_permutation(table.row(row).iter().copied(), base)
            }
            Constraint::ColumnAllDifferent { column } => {
                crate::profile::is_permutation(table.column(column), base)
            }
            Constraint::DiagonalIdentity { index } => table.cell(index, index) == index,
            Constraint::OffDiagonalThreeDistinct { row, column } => {
                let s = table.cell(row, column);
                s != row && s != column
            }
            Constraint::ThreeSubsetUnique { subset } => {
                Self::subset_placements(subset)
                    .iter()
                    .filter(|&&t| table.contains(t))
                    .count()
                    <= 1
            }
            Constraint::Phonetic { pair, .. } => {
                !(table.contains(pair[0]) && table.contains(pair[1]))
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::RowAllDifferent { row } => write!(f, "RowAllDifferent(row {row})"),
            Constraint::ColumnAllDifferent { column } => {
                write!(f, "ColumnAllDifferent(column {column})")
            }
            Constraint::DiagonalIdentity { index } => write!(f, "DiagonalIdentity({index})"),
            Constraint::OffDiagonalThreeDistinct { row, column } => {
                write!(f, "OffDiagonalThreeDistinct({row},{column})")
            }
            Constraint::ThreeSubsetUnique { subset: [a, b, c] } => {
                write!(f, "ThreeSubsetUnique{{{a},{b},{c}}}")
            }
            Constraint::Phonetic { role, pair } => {
                write!(f, "Phonetic{role}[{} {}]", pair[0], pair[1])
            }
        }
    }
}

/// Variables are the `base²` cells; constraints are listed ground.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstraintModel {
    base: u8,
    phonetic_range: PhoneticRange,
    constraints: Vec<Constraint>,
}

/// The right-phonetic pattern pairs `{(X, 0, c), (1, X, c)}`.
fn right_phonetic_pairs(base: u8, range: PhoneticRange) -> Vec<[Triple; 2]> {
    let spare_lo = match range {
        PhoneticRange::Full => 0,
        PhoneticRange::Literal => 2,
    };
    let mut out = Vec::new();
    for x in 2..base {
        for c in spare_lo..base {
            out.push([Word::new(x, 0, c), Word::new(1, x, c)]);
        }
    }
    out
}

impl ConstraintModel {
    /// Latin constraints only: no diagonal, subset or phonetic requirements.
    pub fn latin_only(base: usize) -> Result<Self> {
        let base = check_base(base)?;
        let mut constraints = Vec::new();
        constraints.extend((0..base).map(|row| Constraint::RowAllDifferent { row }));
        constraints.extend((0..base).map(|column| Constraint::ColumnAllDifferent { column }));
        Ok(Self {
            base,
            phonetic_range: PhoneticRange::Full,
            constraints,
        })
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    pub fn phonetic_range(&self) -> PhoneticRange {
        self.phonetic_range
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn count(&self, family: Family) -> usize {
        self.constraints
            .iter()
            .filter(|c| c.family() == family)
            .count()
    }

    pub fn has(&self, family: Family) -> bool {
        self.constraints.iter().any(|c| c.family() == family)
    }

    /// Families present, in model order, with their ground constraint counts.
    pub fn family_counts(&self) -> Vec<(Family, usize)> {
        let mut out: Vec<(Family, usize)> = Vec::new();
        for c in &self.constraints {
            match out.last_mut() {
                Some((f, n)) if *f == c.family() => *n += 1,
                _ => out.push((c.family(), 1)),
            }
        }
        out
    }
}

/// Instantiates every constraint family for `base`.
pub fn build_model(base: usize, config: &SearchConfig) -> Result<ConstraintModel> {
    let mut model = ConstraintModel::latin_only(base)?;
    let b = model.base;
    let cs = &mut model.constraints;
    cs.extend((0..b).map(|index| Constraint::DiagonalIdentity { index }));
    for row in 0..b {
        for column in (0..b).filter(|&c| c != row) {
            cs.push(Constraint::OffDiagonalThreeDistinct { row, column });
        }
    }
    cs.extend(
        three_subsets(b)
            .into_iter()
            .map(|subset| Constraint::ThreeSubsetUnique { subset }),
    );
    let pattern = right_phonetic_pairs(b, config.phonetic_range);
    for role in RolePermutation::ALL {
        cs.extend(pattern.iter().map(|p| Constraint::Phonetic {
            role,
            pair: p.map(|t| role.apply(t)),
        }));
    }
    model.phonetic_range = config.phonetic_range;
    Ok(model)
}

/// Outcome of evaluating a table against a model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AssignmentCheck {
    pub violations: Vec<Constraint>,
}

impl AssignmentCheck {
    pub fn satisfied(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, family: Family) -> bool {
        self.violations.iter().any(|c| c.family() == family)
    }

    pub fn violated_families(&self) -> Vec<Family> {
        let mut f: Vec<Family> = self.violations.iter().map(Constraint::family).collect();
        f.sort();
        f.dedup();
        f
    }
}

pub fn check_assignment(model: &ConstraintModel, table: &CheckTable) -> Result<AssignmentCheck> {
    if model.base != table.base() {
        return Err(Error::BaseMismatch {
            left: model.base,
            right: table.base(),
        });
    }
    Ok(AssignmentCheck {
        violations: model
            .constraints
            .iter()
            .filter(|c| !c.is_satisfied_by(table))
            .copied()
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn model(base: usize) -> ConstraintModel {
        build_model(base, &SearchConfig::default()).unwrap()
    }

    #[test]
    fn base10_counts() {
        let m = model(10);
        assert_eq!(m.count(Family::RowAllDifferent), 10);
        assert_eq!(m.count(Family::ColumnAllDifferent), 10);
        assert_eq!(m.count(Family::DiagonalIdentity), 10);
        assert_eq!(m.count(Family::OffDiagonalThreeDistinct), 90);
        assert_eq!(m.count(Family::ThreeSubsetUnique), 120);
        let phonetic: Vec<_> = m
            .family_counts()
            .into_iter()
            .filter(|(f, _)| matches!(f, Family::Phonetic(_)))
            .collect();
        assert_eq!(phonetic.len(), 6);
        assert!(phonetic.iter().all(|&(_, n)| n == 80));

        let lit = build_model(
            10,
            &SearchConfig {
                phonetic_range: PhoneticRange::Literal,
                ..SearchConfig::default()
            },
        )
        .unwrap();
        assert_eq!(lit.count(Family::Phonetic(RolePermutation::IDENTITY)), 64);
    }

    #[test]
    fn base4_counts() {
        assert_eq!(model(4).count(Family::ThreeSubsetUnique), 4);
        assert!(matches!(
            build_model(11, &SearchConfig::default()),
            Err(Error::UnsupportedBase(11))
        ));
    }

    #[test]
    fn identity_phonetic_family_is_right_pattern() {
        let m = model(10);
        let pair = [Word::new(3, 0, 2), Word::new(1, 3, 2)];
        assert!(m.constraints().contains(&Constraint::Phonetic {
            role: RolePermutation::IDENTITY,
            pair
        }));
        // the cyclic image of the right pattern is the left pattern
        let left = [Word::new(2, 3, 0), Word::new(2, 1, 3)];
        assert!(m.constraints().contains(&Constraint::Phonetic {
            role: RolePermutation::RSC,
            pair: left
        }));
    }

    #[test]
    fn faithfulness_on_builtin_tables() {
        let m = model(10);
        assert!(check_assignment(&m, &builtin::dunning_t3())
            .unwrap()
            .satisfied());

        let regular = check_assignment(&m, &builtin::verhoeff_regular()).unwrap();
        assert!(regular.violates(Family::Phonetic(RolePermutation::IDENTITY)));
        assert!(regular.violations.contains(&Constraint::Phonetic {
            role: RolePermutation::IDENTITY,
            pair: [Word::new(3, 0, 2), Word::new(1, 3, 2)]
        }));

        let irregular = check_assignment(&m, &builtin::verhoeff_irregular()).unwrap();
        assert!(irregular.violates(Family::ThreeSubsetUnique));

        let zeros = CheckTable::new(10, vec![0; 100]).unwrap();
        assert!(check_assignment(&m, &zeros)
            .unwrap()
            .violates(Family::RowAllDifferent));
        assert!(matches!(
            check_assignment(&model(4), &builtin::dunning_t3()),
            Err(Error::BaseMismatch { .. })
        ));
    }
}
