//! Phase-free Pauli strings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Single-qubit Pauli letter; bit pattern is `(x, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    /// Position in `[I, X, Y, Z]`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' | '_' => Some(Pauli::I),
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// An `m`-qubit Pauli string with phases dropped, stored as X and Z bit vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
}

impl PauliString {
    pub fn identity(num_qubits: usize) -> Self {
        Self {
            x: BitVec::zeros(num_qubits),
            z: BitVec::zeros(num_qubits),
        }
    }

    pub fn from_parts(x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::SizeMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self { x, z })
    }

    /// A single-qubit Pauli on `qubit` (0-based), identity elsewhere.
    pub fn single(num_qubits: usize, qubit: usize, letter: Pauli) -> Self {
        let mut p = Self::identity(num_qubits);
        p.set(qubit, letter);
        p
    }

    /// Splits a `2m`-bit `[X | Z]` vector.
    pub fn from_symplectic(v: &BitVec) -> Self {
        assert!(v.len().is_multiple_of(2), "symplectic vector must have even length");
        let m = v.len() / 2;
        let xs: Vec<usize> = (0..m).collect();
        let zs: Vec<usize> = (m..2 * m).collect();
        Self {
            x: v.select(&xs),
            z: v.select(&zs),
        }
    }

    /// The `2m`-bit `[X | Z]` vector.
    pub fn to_symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(self.x.get(qubit), self.z.get(qubit))
    }

    pub fn set(&mut self, qubit: usize, letter: Pauli) {
        let (x, z) = letter.bits();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    /// Qubits on which the string acts non-trivially.
    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).ones().collect()
    }

    fn check_size(&self, other: &PauliString) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::SizeMismatch {
                expected: self.num_qubits(),
                found: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// Binary symplectic form: `false` iff the strings commute.
    pub fn symplectic_product(&self, other: &PauliString) -> Result<bool> {
        self.check_size(other)?;
        Ok(self.x.dot(&other.z) ^ self.z.dot(&other.x))
    }

    pub fn commutes_with(&self, other: &PauliString) -> Result<bool> {
        self.symplectic_product(other).map(|b| !b)
    }

    /// Group product with the phase discarded.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_size(other)?;
        Ok(Self {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        })
    }

    /// Restricts to the listed qubits, in order.
    pub fn select_qubits(&self, qubits: &[usize]) -> PauliString {
        Self {
            x: self.x.select(qubits),
            z: self.z.select(qubits),
        }
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &PauliString) -> PauliString {
        Self {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
        }
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| Pauli::from_char(c).ok_or_else(|| Error::Parse(format!("bad Pauli letter `{c}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::Parse("empty Pauli string".into()));
        }
        let mut p = PauliString::identity(letters.len());
        for (q, l) in letters.into_iter().enumerate() {
            p.set(q, l);
        }
        Ok(p)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.get(q).to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
