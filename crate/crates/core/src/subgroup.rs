//! Subgroups of the phase-free Pauli group as GF(2) row spans.
//!
//! A subgroup on `m` qubits is an `r × 2m` generator matrix with columns
//! `[X part | Z part]`. Generators may be dependent; [`PauliSubgroup::canonical`]
//! returns the RREF basis, and two subgroups are equal iff their canonical
//! forms are.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::pauli::PauliString;

/// Default cap on `log2 |H|` for element enumeration.
pub const DEFAULT_ELEMENT_CAP: u32 = 26;

/// A set of qubit positions inside an `m`-qubit register (0-based internally).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitSubset {
    parent: usize,
    members: BTreeSet<usize>,
}

impl QubitSubset {
    pub fn new(parent: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for q in members {
            if q >= parent {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    size: parent,
                });
            }
            if !set.insert(q) {
                return Err(Error::Parse(format!("duplicate qubit index {}", q + 1)));
            }
        }
        Ok(Self {
            parent,
            members: set,
        })
    }

    /// Parses 1-based indices as used in every user-facing format.
    pub fn from_one_based(parent: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let zero_based = members
            .into_iter()
            .map(|q| {
                q.checked_sub(1).ok_or(Error::QubitOutOfRange {
                    index: 0,
                    size: parent,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parent, zero_based)
    }

    pub fn empty(parent: usize) -> Self {
        Self {
            parent,
            members: BTreeSet::new(),
        }
    }

    /// Positions `start..end`.
    pub fn range(parent: usize, start: usize, end: usize) -> Result<Self> {
        Self::new(parent, start..end)
    }

    pub fn parent_size(&self) -> usize {
        self.parent
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.members.contains(&q)
    }

    /// Members in ascending order.
    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().copied().collect()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.members.iter().map(|q| q + 1).collect()
    }

    pub fn complement(&self) -> QubitSubset {
        Self {
            parent: self.parent,
            members: (0..self.parent).filter(|q| !self.members.contains(q)).collect(),
        }
    }
}

impl fmt::Display for QubitSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.one_based().iter().map(|q| q.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Output of [`PauliSubgroup::delete`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deletion {
    pub group: PauliSubgroup,
    /// False when the deletion shrank the group, which invalidates reading
    /// the number of removed qubits as a code parameter.
    pub rank_preserved: bool,
}

/// A subgroup of the `m`-qubit phase-free Pauli group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliSubgroup {
    num_qubits: usize,
    matrix: BitMatrix,
}

impl PauliSubgroup {
    /// The trivial group `{I}`.
    pub fn trivial(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            matrix: BitMatrix::new(2 * num_qubits),
        }
    }

    /// The full Pauli group on `num_qubits` qubits.
    pub fn full(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            matrix: BitMatrix::identity(2 * num_qubits),
        }
    }

    pub fn from_matrix(num_qubits: usize, matrix: BitMatrix) -> Result<Self> {
        if matrix.num_cols() != 2 * num_qubits {
            return Err(Error::SizeMismatch {
                expected: num_qubits,
                found: matrix.num_cols() / 2,
            });
        }
        Ok(Self { num_qubits, matrix })
    }

    pub fn from_generators(num_qubits: usize, generators: &[PauliString]) -> Result<Self> {
        let mut matrix = BitMatrix::new(2 * num_qubits);
        for g in generators {
            if g.num_qubits() != num_qubits {
                return Err(Error::SizeMismatch {
                    expected: num_qubits,
                    found: g.num_qubits(),
                });
            }
            matrix.push_row(g.to_symplectic());
        }
        Ok(Self { num_qubits, matrix })
    }

    /// Parses generators such as `["XZZ", "ZXZ", "ZZX"]`.
    pub fn from_strs(generators: &[&str]) -> Result<Self> {
        let parsed = generators
            .iter()
            .map(|s| s.parse::<PauliString>())
            .collect::<Result<Vec<_>>>()?;
        let m = parsed.first().map(|p| p.num_qubits()).ok_or_else(|| Error::Parse("no generators".into()))?;
        Self::from_generators(m, &parsed)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// The generator matrix as given (possibly with dependent rows).
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn generators(&self) -> Vec<PauliString> {
        self.matrix.rows().iter().map(PauliString::from_symplectic).collect()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// RREF generators with zero rows removed.
    pub fn canonical(&self) -> PauliSubgroup {
        Self {
            num_qubits: self.num_qubits,
            matrix: self.matrix.row_basis(),
        }
    }

    /// Group equality: equal row spans.
    pub fn same_group(&self, other: &PauliSubgroup) -> bool {
        self.num_qubits == other.num_qubits && self.matrix.same_span(&other.matrix)
    }

    /// True iff every pair of generators commutes.
    pub fn is_isotropic(&self) -> bool {
        self.anticommuting_pair().is_none()
    }

    /// First pair of anticommuting generators, if any.
    pub fn anticommuting_pair(&self) -> Option<(usize, usize)> {
        let gens = self.generators();
        for i in 0..gens.len() {
            for j in (i + 1)..gens.len() {
                if gens[i].symplectic_product(&gens[j]).unwrap_or(false) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Fails unless the group is isotropic.
    pub fn require_isotropic(&self) -> Result<()> {
        match self.anticommuting_pair() {
            None => Ok(()),
            Some((first, second)) => Err(Error::NotIsotropic { first, second }),
        }
    }

    /// Fails unless the group stabilizes a single state.
    pub fn require_state(&self) -> Result<()> {
        self.require_isotropic()?;
        let rank = self.rank();
        if rank != self.num_qubits {
            return Err(Error::NotAState {
                rank,
                qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    fn check_size(&self, p: &PauliString) -> Result<()> {
        if p.num_qubits() != self.num_qubits {
            return Err(Error::SizeMismatch {
                expected: self.num_qubits,
                found: p.num_qubits(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, p: &PauliString) -> Result<bool> {
        self.check_size(p)?;
        Ok(self.matrix.span_contains(&p.to_symplectic()))
    }

    /// Symplectic complement: all Paulis commuting with every element.
    pub fn dual(&self) -> PauliSubgroup {
        let m = self.num_qubits;
        // Swapping the halves turns the symplectic form into the standard dot product.
        let swapped: Vec<usize> = (m..2 * m).chain(0..m).collect();
        let kernel = self.matrix.select_columns(&swapped).nullspace();
        Self {
            num_qubits: m,
            matrix: kernel,
        }
    }

    fn check_subset(&self, t: &QubitSubset) -> Result<()> {
        if t.parent_size() != self.num_qubits {
            return Err(Error::SizeMismatch {
                expected: self.num_qubits,
                found: t.parent_size(),
            });
        }
        Ok(())
    }

    /// Columns of the qubits outside `t`, X then Z.
    fn kept_columns(&self, t: &QubitSubset) -> Vec<usize> {
        let keep = t.complement().indices();
        keep.iter()
            .copied()
            .chain(keep.iter().map(|q| q + self.num_qubits))
            .collect()
    }

    /// Deletion: every element with the factors on `t` removed.
    pub fn delete(&self, t: &QubitSubset) -> Result<Deletion> {
        self.check_subset(t)?;
        let group = Self {
            num_qubits: self.num_qubits - t.len(),
            matrix: self.matrix.select_columns(&self.kept_columns(t)),
        };
        let before = self.rank();
        let rank_preserved = group.rank() == before;
        Ok(Deletion {
            group,
            rank_preserved,
        })
    }

    /// Like [`delete`](Self::delete) but fails when the rank drops.
    pub fn delete_preserving(&self, t: &QubitSubset) -> Result<PauliSubgroup> {
        let d = self.delete(t)?;
        if !d.rank_preserved {
            return Err(Error::RankDrop {
                before: self.rank(),
                after: d.group.rank(),
            });
        }
        Ok(d.group)
    }

    /// Contraction: elements without support on `t`, with `t` removed.
    pub fn contract(&self, t: &QubitSubset) -> Result<PauliSubgroup> {
        self.check_subset(t)?;
        let m = self.num_qubits;
        let t_cols: Vec<usize> = t
            .indices()
            .iter()
            .copied()
            .chain(t.indices().iter().map(|q| q + m))
            .collect();
        let combos = self.matrix.select_columns(&t_cols).left_nullspace();
        let kept = self.matrix.select_columns(&self.kept_columns(t));
        let rows = combos.rows().iter().map(|c| kept.combine_rows(c)).collect();
        let matrix = BitMatrix::from_rows(2 * (m - t.len()), rows).row_basis();
        Ok(Self {
            num_qubits: m - t.len(),
            matrix,
        })
    }

    /// Enumerates all `2^rank` elements in Gray-code order.
    pub fn elements(&self, cap_bits: u32) -> Result<Elements> {
        let basis = self.matrix.row_basis();
        let rank = basis.num_rows();
        if rank as u32 > cap_bits || rank >= 64 {
            return Err(Error::CapExceeded {
                what: "group element enumeration",
                required: rank as u32,
                cap: cap_bits,
            });
        }
        Ok(Elements {
            basis: basis.into_rows(),
            current: BitVec::zeros(2 * self.num_qubits),
            index: 0,
            total: 1u64 << rank,
        })
    }
}

impl fmt::Debug for PauliSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(|g| g.to_string()).collect();
        write!(f, "PauliSubgroup<{}>[{}]", self.num_qubits, gens.join(", "))
    }
}

/// Iterator over group elements; see [`PauliSubgroup::elements`].
pub struct Elements {
    basis: Vec<BitVec>,
    current: BitVec,
    index: u64,
    total: u64,
}

impl Iterator for Elements {
    type Item = PauliString;

    fn next(&mut self) -> Option<PauliString> {
        if self.index >= self.total {
            return None;
        }
        if self.index > 0 {
            let flip = self.index.trailing_zeros() as usize;
            self.current.xor_assign(&self.basis[flip]);
        }
        self.index += 1;
        Some(PauliString::from_symplectic(&self.current))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = (self.total - self.index) as usize;
        (rest, Some(rest))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn group(gens: &[&str]) -> PauliSubgroup {
        PauliSubgroup::from_strs(gens).unwrap()
    }

    fn k3() -> PauliSubgroup {
        group(&["XZZ", "ZXZ", "ZZX"])
    }

    fn element_set(h: &PauliSubgroup) -> HashSet<String> {
        h.elements(DEFAULT_ELEMENT_CAP).unwrap().map(|p| p.to_string()).collect()
    }

    fn set(items: &[&str]) -> HashSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn k3_elements_match_table() {
        assert_eq!(
            element_set(&k3()),
            set(&["III", "XZZ", "ZXZ", "ZZX", "YYI", "YIY", "IYY", "XXX"])
        );
    }

    #[test]
    fn membership() {
        let h = k3();
        assert!(h.contains(&"YYI".parse().unwrap()).unwrap());
        assert!(!h.contains(&"XII".parse().unwrap()).unwrap());
        assert!(h.contains(&PauliString::identity(3)).unwrap());
        assert!(PauliSubgroup::trivial(3).contains(&PauliString::identity(3)).unwrap());
        assert!(h.contains(&"XX".parse().unwrap()).is_err());
    }

    #[test]
    fn xii_is_not_in_k3_by_brute_force() {
        let target: PauliString = "XII".parse().unwrap();
        assert!(k3().elements(DEFAULT_ELEMENT_CAP).unwrap().all(|e| e != target));
    }

    #[test]
    fn k3_contraction_and_deletion() {
        let first = QubitSubset::new(3, [0]).unwrap();
        let contracted = k3().contract(&first).unwrap();
        assert_eq!(element_set(&contracted), set(&["II", "YY"]));

        let deleted = k3().delete(&first).unwrap();
        assert!(deleted.rank_preserved);
        assert_eq!(
            element_set(&deleted.group),
            set(&["II", "ZZ", "XZ", "ZX", "YI", "IY", "YY", "XX"])
        );
        // The deletion is the logical group of the contraction.
        assert!(contracted.dual().same_group(&deleted.group));
    }

    #[test]
    fn empty_subset_is_a_no_op() {
        let h = group(&["XZI", "IZY"]);
        let none = QubitSubset::empty(3);
        assert!(h.contract(&none).unwrap().same_group(&h));
        let d = h.delete(&none).unwrap();
        assert!(d.rank_preserved && d.group.same_group(&h));
    }

    #[test]
    fn contraction_without_support_is_column_deletion() {
        let h = group(&["XZI", "ZZI"]);
        let third = QubitSubset::new(3, [2]).unwrap();
        let c = h.contract(&third).unwrap();
        let d = h.delete(&third).unwrap().group;
        assert!(c.same_group(&d));
    }

    #[test]
    fn deletion_flags_rank_drop() {
        let zz = group(&["ZZ"]);
        let d = zz.delete(&QubitSubset::new(2, [1]).unwrap()).unwrap();
        assert!(d.rank_preserved);
        assert!(d.group.same_group(&group(&["Z"])));

        let zi = group(&["ZI", "IZ"]);
        let d = zi.delete(&QubitSubset::new(2, [1]).unwrap()).unwrap();
        assert!(!d.rank_preserved);
        assert!(matches!(
            zi.delete_preserving(&QubitSubset::new(2, [1]).unwrap()),
            Err(Error::RankDrop { before: 2, after: 1 })
        ));
    }

    #[test]
    fn duals() {
        assert!(k3().dual().same_group(&k3()));
        let t = PauliSubgroup::trivial(3);
        assert_eq!(t.dual().rank(), 6);
        assert!(PauliSubgroup::full(2).dual().same_group(&PauliSubgroup::trivial(2)));
    }

    #[test]
    fn element_counts() {
        let t = PauliSubgroup::trivial(4);
        let all: Vec<_> = t.elements(DEFAULT_ELEMENT_CAP).unwrap().collect();
        assert_eq!(all, vec![PauliString::identity(4)]);

        let h = group(&["XXII", "ZZII", "IIXZ", "XXII"]);
        assert_eq!(h.rank(), 3);
        assert_eq!(element_set(&h).len(), 8);
        assert!(h.elements(2).is_err());
    }

    #[test]
    fn isotropy() {
        assert!(k3().is_isotropic());
        let xz = group(&["XI", "ZI"]);
        assert_eq!(xz.anticommuting_pair(), Some((0, 1)));
        assert!(matches!(xz.require_state(), Err(Error::NotIsotropic { .. })));
        assert!(matches!(
            group(&["ZZ"]).require_state(),
            Err(Error::NotAState { rank: 1, qubits: 2 })
        ));
    }

    #[test]
    fn subset_validation() {
        assert!(QubitSubset::new(3, [3]).is_err());
        assert!(QubitSubset::new(3, [1, 1]).is_err());
        assert!(QubitSubset::from_one_based(3, [0]).is_err());
        let s = QubitSubset::from_one_based(5, [1, 3]).unwrap();
        assert_eq!(s.indices(), vec![0, 2]);
        assert_eq!(s.complement().one_based(), vec![2, 4, 5]);
        assert_eq!(s.to_string(), "{1, 3}");
    }
}
