//! Role permutations, conjugate codes and digit relabelings.
//!
//! A [`RolePermutation`] permutes the three coordinate roles R (row),
//! S (symbol, kept in the middle position) and C (column) of every triple.
//! Applied to the triple system of a latin square it yields another latin
//! square, one of the six conjugates.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::profile::structural_profile;
use crate::table::{CheckTable, Digit, Triple, Word};
use crate::triples::{to_triples, TripleSystem};

/// A bijection of the roles `R, S, C` (indices 0, 1, 2).
///
/// `image[i]` is the position that role `i`'s value moves to, so
/// `(RC)` turns `(r, s, c)` into `(c, s, r)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RolePermutation {
    image: [u8; 3],
}

const ROLE_NAMES: [char; 3] = ['R', 'S', 'C'];

impl RolePermutation {
    pub const IDENTITY: Self = Self { image: [0, 1, 2] };
    pub const RS: Self = Self { image: [1, 0, 2] };
    pub const RC: Self = Self { image: [2, 1, 0] };
    pub const SC: Self = Self { image: [0, 2, 1] };
    /// `R → S → C → R`.
    pub const RSC: Self = Self { image: [1, 2, 0] };
    /// `R → C → S → R`.
    pub const RCS: Self = Self { image: [2, 0, 1] };

    /// Fixed enumeration; conjugate `#k` is `t(L)` for `ALL[k]`.
    pub const ALL: [Self; 6] = [
        Self::IDENTITY,
        Self::RS,
        Self::RC,
        Self::SC,
        Self::RSC,
        Self::RCS,
    ];

    pub fn from_image(image: [u8; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &i in &image {
            if i > 2 || std::mem::replace(&mut seen[i as usize], true) {
                return None;
            }
        }
        Some(Self { image })
    }

    pub fn image(self) -> [u8; 3] {
        self.image
    }

    pub fn index(self) -> usize {
        Self::ALL
            .iter()
            .position(|&t| t == self)
            .expect("ALL lists every element")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Self) -> Self {
        Self {
            image: other.image.map(|i| self.image[i as usize]),
        }
    }

    pub fn inverse(self) -> Self {
        let mut image = [0u8; 3];
        for (i, &j) in self.image.iter().enumerate() {
            image[j as usize] = i as u8;
        }
        Self { image }
    }

    pub fn apply(self, t: Triple) -> Triple {
        let mut out = [0; 3];
        for (i, &d) in t.0.iter().enumerate() {
            out[self.image[i] as usize] = d;
        }
        Word(out)
    }
}

impl fmt::Display for RolePermutation {
    /// Cycle notation, e.g. `(RC)` or `(RSC)`; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; 3];
        let mut any = false;
        for start in 0..3 {
            if seen[start] || self.image[start] as usize == start {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                write!(f, "{}", ROLE_NAMES[i])?;
                i = self.image[i] as usize;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// `t(L)`.
pub fn apply_role(t: RolePermutation, sys: &TripleSystem) -> TripleSystem {
    TripleSystem::new(sys.base(), sys.triples().iter().map(|&x| t.apply(x)))
}

fn ensure_latin(sys: &TripleSystem) -> Result<CheckTable> {
    let table = sys.to_table().map_err(|e| Error::NotLatin(e.to_string()))?;
    let profile = structural_profile(&table);
    if !profile.is_latin() {
        return Err(Error::NotLatin(
            "a row or column is not a permutation".to_string(),
        ));
    }
    Ok(table)
}

/// The six conjugates in [`RolePermutation::ALL`] order, identity first.
/// Duplicates (for symmetric sources) are kept.
pub fn six_conjugates(sys: &TripleSystem) -> Result<Vec<TripleSystem>> {
    ensure_latin(sys)?;
    Ok(RolePermutation::ALL
        .iter()
        .map(|&t| apply_role(t, sys))
        .collect())
}

/// The six conjugates as tables, named `<name>_t0` … `<name>_t5`.
pub fn conjugate_tables(table: &CheckTable) -> Result<Vec<CheckTable>> {
    let base_name = table.name().unwrap_or("table").to_string();
    six_conjugates(&to_triples(table))?
        .iter()
        .enumerate()
        .map(|(k, sys)| Ok(sys.to_table()?.with_name(format!("{base_name}_t{k}"))))
        .collect()
}

/// `L_A ∩ L_B`.
pub fn pairwise_common(a: &TripleSystem, b: &TripleSystem) -> Result<BTreeSet<Triple>> {
    if a.base() != b.base() {
        return Err(Error::BaseMismatch {
            left: a.base(),
            right: b.base(),
        });
    }
    Ok(a.intersection(b))
}

/// A digit permutation preserving `{0, 1}` and `{2, …, base − 1}` setwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relabeling {
    images: Vec<Digit>,
}

impl Relabeling {
    /// `images[d]` is the new label of digit `d`.
    pub fn new(images: Vec<Digit>, base: u8) -> Result<Self> {
        let bad = |msg: String| Err(Error::InadmissibleRelabeling(msg));
        if images.len() != base as usize {
            return bad(format!("{} images for base {base}", images.len()));
        }
        let mut seen = vec![false; base as usize];
        for (d, &p) in images.iter().enumerate() {
            if p >= base {
                return bad(format!("{d} ↦ {p} is out of range"));
            }
            if std::mem::replace(&mut seen[p as usize], true) {
                return bad(format!("{p} is hit twice"));
            }
            if (d < 2) != (p < 2) {
                return bad(format!("{d} ↦ {p} crosses the {{0,1}} block"));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(base: u8) -> Self {
        Self {
            images: (0..base).collect(),
        }
    }

    /// `p₀₁ ∘ p₂₉`: `swap01` exchanges 0 and 1, `high` lists the images of
    /// `2, 3, …, base − 1` in order.
    pub fn from_parts(swap01: bool, high: &[Digit], base: u8) -> Result<Self> {
        let mut images = if swap01 { vec![1, 0] } else { vec![0, 1] };
        images.extend_from_slice(high);
        Self::new(images, base)
    }

    pub fn random<R: Rng + ?Sized>(base: u8, rng: &mut R) -> Self {
        let mut low = [0u8, 1];
        low.shuffle(rng);
        let mut high: Vec<Digit> = (2..base).collect();
        high.shuffle(rng);
        let mut images = low.to_vec();
        images.extend(high);
        Self { images }
    }

    pub fn base(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn apply(&self, d: Digit) -> Digit {
        self.images[d as usize]
    }

    pub fn images(&self) -> &[Digit] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(d, &p)| d == p as usize)
    }
}

/// `cell'(p(r), p(c)) = p(cell(r, c))`.
pub fn relabel(table: &CheckTable, p: &Relabeling) -> Result<CheckTable> {
    if p.base() != table.base() {
        return Err(Error::InadmissibleRelabeling(format!(
            "relabeling has base {}, table has base {}",
            p.base(),
            table.base()
        )));
    }
    let n = table.size();
    let mut cells = vec![0; n * n];
    for w in table.words() {
        let [r, s, c] = w.0.map(|d| p.apply(d));
        cells[r as usize * n + c as usize] = s;
    }
    let mut out = CheckTable::new(n, cells)?;
    if let Some(name) = table.name() {
        out = out.with_name(name);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::error_model::full_report;

    #[test]
    fn transpose_on_a_triple() {
        assert_eq!(
            RolePermutation::RC.apply(Word::new(0, 9, 1)),
            Word::new(1, 9, 0)
        );
        assert_eq!(
            RolePermutation::RSC.apply(Word::new(1, 2, 3)),
            Word::new(3, 1, 2)
        );
    }

    #[test]
    fn group_structure() {
        for t in RolePermutation::ALL {
            assert_eq!(t.compose(t.inverse()), RolePermutation::IDENTITY);
            for u in RolePermutation::ALL {
                assert!(RolePermutation::ALL.contains(&t.compose(u)));
            }
        }
        assert_eq!(RolePermutation::RSC.inverse(), RolePermutation::RCS);
        let mut images: Vec<_> = RolePermutation::ALL.iter().map(|t| t.image()).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 6);
    }

    #[test]
    fn cycle_notation() {
        let names: Vec<String> = RolePermutation::ALL.iter().map(|t| t.to_string()).collect();
        assert_eq!(names, ["()", "(RS)", "(RC)", "(SC)", "(RSC)", "(RCS)"]);
    }

    #[test]
    fn rc_conjugate_is_transpose() {
        let t3 = builtin::dunning_t3();
        let rc = apply_role(RolePermutation::RC, &to_triples(&t3))
            .to_table()
            .unwrap();
        assert_eq!(rc.cells(), t3.transpose().cells());
        assert!(structural_profile(&rc).is_latin());
    }

    #[test]
    fn conjugates_of_table3() {
        let conj = six_conjugates(&to_triples(&builtin::dunning_t3())).unwrap();
        assert_eq!(conj.len(), 6);
        assert_eq!(conj[0], to_triples(&builtin::dunning_t3()));
        for sys in &conj {
            assert_eq!(sys.len(), 100);
            assert_eq!(sys.diagonal().count(), 10);
        }
    }

    #[test]
    fn symmetric_source_is_its_own_transpose() {
        let t = CheckTable::from_fn(5, |r, c| (r + c) % 5).unwrap();
        let sys = to_triples(&t);
        let conj = six_conjugates(&sys).unwrap();
        assert_eq!(conj[RolePermutation::RC.index()], sys);
    }

    #[test]
    fn non_latin_source_rejected() {
        let zeros = CheckTable::new(4, vec![0; 16]).unwrap();
        assert!(matches!(
            six_conjugates(&to_triples(&zeros)),
            Err(Error::NotLatin(_))
        ));
    }

    #[test]
    fn common_triples() {
        let sys = to_triples(&builtin::dunning_t3());
        assert_eq!(pairwise_common(&sys, &sys).unwrap().len(), 100);
        let rc = apply_role(RolePermutation::RC, &sys);
        let common = pairwise_common(&sys, &rc).unwrap();
        assert_eq!(common, sys.diagonal().collect());
        let small = to_triples(&CheckTable::from_fn(4, |r, c| (r + c) % 4).unwrap());
        assert!(matches!(
            pairwise_common(&sys, &small),
            Err(Error::BaseMismatch { .. })
        ));
    }

    #[test]
    fn relabel_identity_and_swap() {
        let t3 = builtin::dunning_t3();
        assert_eq!(relabel(&t3, &Relabeling::identity(10)).unwrap(), t3);
        let swap = Relabeling::from_parts(true, &[2, 3, 4, 5, 6, 7, 8, 9], 10).unwrap();
        let swapped = relabel(&t3, &swap).unwrap();
        assert_ne!(swapped, t3);
        assert!(full_report(&swapped).passes());
    }

    #[test]
    fn inadmissible_relabelings() {
        let mut images: Vec<u8> = (0..10).collect();
        images.swap(0, 2);
        assert!(matches!(
            Relabeling::new(images, 10),
            Err(Error::InadmissibleRelabeling(_))
        ));
        assert!(Relabeling::new(vec![0, 1, 2, 2, 4, 5, 6, 7, 8, 9], 10).is_err());
        assert!(Relabeling::new(vec![0, 1, 2], 10).is_err());
        let p4 = Relabeling::identity(4);
        assert!(relabel(&builtin::dunning_t3(), &p4).is_err());
    }
}
