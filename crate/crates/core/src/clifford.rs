//! Phase-free single-qubit Clifford actions.
//!
//! A single-qubit Clifford acts on the `(x, z)` bits of one tensor factor as
//! an invertible 2×2 GF(2) matrix. There are exactly six such matrices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::pauli::PauliString;
use crate::subgroup::PauliSubgroup;

/// `(x', z') = (a·x + b·z, c·x + d·z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalClifford {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
}

impl LocalClifford {
    pub const IDENTITY: Self = Self::from_bits(1, 0, 0, 1);
    /// Swaps X and Z.
    pub const HADAMARD: Self = Self::from_bits(0, 1, 1, 0);
    /// Fixes Z, sends X to Y.
    pub const PHASE: Self = Self::from_bits(1, 0, 1, 1);
    /// Fixes X, sends Z to Y.
    pub const SQRT_X: Self = Self::from_bits(1, 1, 0, 1);
    /// X → Z → Y → X.
    pub const CYCLE: Self = Self::from_bits(0, 1, 1, 1);
    /// X → Y → Z → X.
    pub const CYCLE_INV: Self = Self::from_bits(1, 1, 1, 0);

    pub const ALL: [Self; 6] = [
        Self::IDENTITY,
        Self::HADAMARD,
        Self::PHASE,
        Self::SQRT_X,
        Self::CYCLE,
        Self::CYCLE_INV,
    ];

    pub const fn from_bits(a: u8, b: u8, c: u8, d: u8) -> Self {
        Self {
            a: a != 0,
            b: b != 0,
            c: c != 0,
            d: d != 0,
        }
    }

    pub fn new(a: bool, b: bool, c: bool, d: bool) -> Result<Self> {
        let g = Self { a, b, c, d };
        if !g.is_invertible() {
            return Err(Error::Parse("singular 2x2 block is not a Clifford action".into()));
        }
        Ok(g)
    }

    pub fn is_invertible(self) -> bool {
        (self.a & self.d) ^ (self.b & self.c)
    }

    #[inline]
    pub fn apply(self, x: bool, z: bool) -> (bool, bool) {
        ((self.a & x) ^ (self.b & z), (self.c & x) ^ (self.d & z))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Self) -> Self {
        Self {
            a: (self.a & other.a) ^ (self.b & other.c),
            b: (self.a & other.b) ^ (self.b & other.d),
            c: (self.c & other.a) ^ (self.d & other.c),
            d: (self.c & other.b) ^ (self.d & other.d),
        }
    }

    pub fn inverse(self) -> Self {
        // Determinant is 1 over GF(2), so the adjugate is the inverse.
        Self {
            a: self.d,
            b: self.b,
            c: self.c,
            d: self.a,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::IDENTITY => "I",
            Self::HADAMARD => "H",
            Self::PHASE => "S",
            Self::SQRT_X => "SX",
            Self::CYCLE => "C",
            Self::CYCLE_INV => "C^-1",
            _ => "?",
        }
    }
}

impl Default for LocalClifford {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl fmt::Display for LocalClifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            u8::from(self.a),
            u8::from(self.b),
            u8::from(self.c),
            u8::from(self.d)
        )
    }
}

/// One single-qubit Clifford action per qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalCliffordRecord {
    pub per_qubit: Vec<LocalClifford>,
}

impl LocalCliffordRecord {
    pub fn identity(num_qubits: usize) -> Self {
        Self {
            per_qubit: vec![LocalClifford::IDENTITY; num_qubits],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.per_qubit.len()
    }

    pub fn is_identity(&self) -> bool {
        self.per_qubit.iter().all(|&g| g == LocalClifford::IDENTITY)
    }

    pub fn inverse(&self) -> Self {
        Self {
            per_qubit: self.per_qubit.iter().map(|g| g.inverse()).collect(),
        }
    }

    pub fn apply_to_pauli(&self, p: &PauliString) -> Result<PauliString> {
        if p.num_qubits() != self.num_qubits() {
            return Err(Error::SizeMismatch {
                expected: self.num_qubits(),
                found: p.num_qubits(),
            });
        }
        let mut x = p.x_bits().clone();
        let mut z = p.z_bits().clone();
        for (q, g) in self.per_qubit.iter().enumerate() {
            let (nx, nz) = g.apply(x.get(q), z.get(q));
            x.set(q, nx);
            z.set(q, nz);
        }
        PauliString::from_parts(x, z)
    }

    /// Applies the action to every generator.
    pub fn apply_to_group(&self, h: &PauliSubgroup) -> Result<PauliSubgroup> {
        let gens = h
            .generators()
            .iter()
            .map(|g| self.apply_to_pauli(g))
            .collect::<Result<Vec<_>>>()?;
        let m = h.num_qubits();
        let mut matrix = BitMatrix::new(2 * m);
        for g in gens {
            matrix.push_row(g.to_symplectic());
        }
        PauliSubgroup::from_matrix(m, matrix)
    }
}
