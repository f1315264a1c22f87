//! Extending a stabilizer code to a stabilizer state, and converting states
//! and codes to graph form.
//!
//! Every stabilizer code `H` on `n` qubits is the contraction `H̄ / V′` of some
//! stabilizer state `H̄` on `n + k` qubits. The extension is built from a
//! symplectic basis of the logical group `H⊥`; the graph form then follows
//! from row reduction plus per-qubit Clifford corrections.

use crate::clifford::{LocalClifford, LocalCliffordRecord};
use crate::error::Result;
use crate::gf2::{BitMatrix, BitVec};
use crate::graph::Graph;
use crate::pauli::{Pauli, PauliString};
use crate::subgroup::{PauliSubgroup, QubitSubset};

/// Basis `{x_1..x_k, x_{k+1}..x_n, z_1..z_k}` of `H⊥` where the trailing
/// `x`s generate `H` and `x_i`, `z_j` anticommute iff `i = j ≤ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticCompletion {
    /// Logical X-type partners, `x_1..x_k`.
    pub logical_x: Vec<PauliString>,
    /// Generators of `H`, `x_{k+1}..x_n`.
    pub stabilizers: Vec<PauliString>,
    /// Logical Z-type partners, `z_1..z_k`.
    pub logical_z: Vec<PauliString>,
}

impl SymplecticCompletion {
    /// Number of logical qubits `k`.
    pub fn num_logical(&self) -> usize {
        self.logical_x.len()
    }

    /// All `x`s in order, logical first.
    pub fn xs(&self) -> Vec<PauliString> {
        self.logical_x.iter().chain(&self.stabilizers).cloned().collect()
    }

    /// Checks the anticommutation pattern.
    pub fn is_valid(&self) -> bool {
        let xs = self.xs();
        let k = self.num_logical();
        let sp = |a: &PauliString, b: &PauliString| a.symplectic_product(b).unwrap_or(true);
        let xs_commute = xs.iter().enumerate().all(|(i, a)| xs[i + 1..].iter().all(|b| !sp(a, b)));
        let zs_commute = self
            .logical_z
            .iter()
            .enumerate()
            .all(|(i, a)| self.logical_z[i + 1..].iter().all(|b| !sp(a, b)));
        let pairs = xs
            .iter()
            .enumerate()
            .all(|(i, x)| self.logical_z.iter().enumerate().all(|(j, z)| sp(x, z) == (i == j && i < k)));
        xs_commute && zs_commute && pairs
    }
}

fn symplectic(a: &BitVec, b: &BitVec) -> bool {
    let m = a.len() / 2;
    let mut acc = false;
    for i in a.ones() {
        let partner = if i < m { i + m } else { i - m };
        acc ^= b.get(partner);
    }
    acc
}

/// Symplectic Gram–Schmidt on `H⊥`, seeded with a basis of `H`.
pub fn symplectic_completion(h: &PauliSubgroup) -> Result<SymplecticCompletion> {
    h.require_isotropic()?;
    let stab_basis = h.canonical().matrix().clone();
    let dual_basis = h.dual().matrix().row_basis();

    // Complement of H inside H⊥.
    let mut working = stab_basis.clone();
    let mut pool: Vec<BitVec> = Vec::new();
    for row in dual_basis.rows() {
        if !working.span_contains(row) {
            working.push_row(row.clone());
            pool.push(row.clone());
        }
    }

    let mut logical_x = Vec::new();
    let mut logical_z = Vec::new();
    while let Some(u) = pool.first().cloned() {
        let partner = pool[1..]
            .iter()
            .position(|v| symplectic(&u, v))
            .map(|p| p + 1)
            .expect("the form on H⊥/H is non-degenerate");
        let w = pool[partner].clone();
        pool.remove(partner);
        pool.remove(0);
        for v in pool.iter_mut() {
            let with_w = symplectic(v, &w);
            let with_u = symplectic(v, &u);
            if with_w {
                v.xor_assign(&u);
            }
            if with_u {
                v.xor_assign(&w);
            }
        }
        logical_x.push(PauliString::from_symplectic(&u));
        logical_z.push(PauliString::from_symplectic(&w));
    }

    Ok(SymplecticCompletion {
        logical_x,
        stabilizers: stab_basis.rows().iter().map(PauliString::from_symplectic).collect(),
        logical_z,
    })
}

/// A stabilizer state whose contraction on `new_qubits` recovers a given code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionResult {
    /// State on `n + k` qubits.
    pub state: PauliSubgroup,
    /// The `k` appended qubits, positions `n..n+k`.
    pub new_qubits: QubitSubset,
    pub completion: SymplecticCompletion,
}

/// Extends a code to a state by attaching `X` (resp. `Z`) on a fresh qubit to
/// each logical `x_i` (resp. `z_i`). Fresh qubits are appended after the
/// existing ones.
pub fn extend_to_state(h: &PauliSubgroup) -> Result<ExtensionResult> {
    let completion = symplectic_completion(h)?;
    let n = h.num_qubits();
    let k = completion.num_logical();
    let attach = |p: &PauliString, slot: Option<(usize, Pauli)>| {
        let mut tail = PauliString::identity(k);
        if let Some((i, letter)) = slot {
            tail.set(i, letter);
        }
        p.tensor(&tail)
    };
    let mut gens = Vec::with_capacity(n + k);
    for (i, x) in completion.logical_x.iter().enumerate() {
        gens.push(attach(x, Some((i, Pauli::X))));
    }
    for x in &completion.stabilizers {
        gens.push(attach(x, None));
    }
    for (i, z) in completion.logical_z.iter().enumerate() {
        gens.push(attach(z, Some((i, Pauli::Z))));
    }
    let state = PauliSubgroup::from_generators(n + k, &gens)?;
    Ok(ExtensionResult {
        state,
        new_qubits: QubitSubset::range(n + k, n, n + k)?,
        completion,
    })
}

/// Finds a graph `G` and local Cliffords `R` with `R(graph state of G) = state`.
pub fn to_graph_state(state: &PauliSubgroup) -> Result<(Graph, LocalCliffordRecord)> {
    state.require_state()?;
    let m = state.num_qubits();
    let reduced = state.matrix().rref();

    // Qubits whose X column carries no pivot get a Hadamard; the X block is
    // then invertible.
    let mut forward = vec![LocalClifford::IDENTITY; m];
    let mut has_pivot = vec![false; m];
    for &p in &reduced.pivots {
        if p < m {
            has_pivot[p] = true;
        }
    }
    for q in 0..m {
        if !has_pivot[q] {
            forward[q] = LocalClifford::HADAMARD;
        }
    }
    let record = LocalCliffordRecord { per_qubit: forward };
    let rotated = record.apply_to_group(state)?;
    let normal = rotated.matrix().rref();
    debug_assert!(normal.pivots.iter().copied().eq(0..m));

    // [I | Γ]; Y on the diagonal is removed with a phase gate.
    let mut forward = record.per_qubit;
    let mut adjacency = BitMatrix::zeros(m, m);
    for q in 0..m {
        let row = normal.matrix.row(q);
        for j in 0..m {
            if row.get(m + j) {
                adjacency.set(q, j, true);
            }
        }
        if adjacency.get(q, q) {
            adjacency.set(q, q, false);
            forward[q] = LocalClifford::PHASE.compose(forward[q]);
        }
    }
    let graph = Graph::from_adjacency(adjacency)?;
    let to_graph = LocalCliffordRecord { per_qubit: forward };
    Ok((graph, to_graph.inverse()))
}

/// A graph code equivalent to a stabilizer code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCode {
    pub graph: Graph,
    /// Qubits contracted away; these are Alice's in the associated state.
    pub new_qubits: QubitSubset,
    /// Maps the graph state onto the extended state.
    pub record: LocalCliffordRecord,
    pub extension: ExtensionResult,
}

impl GraphCode {
    /// Checks `contract(R(graph state), V′) = code`.
    pub fn verify(&self, code: &PauliSubgroup) -> Result<bool> {
        let mapped = self.record.apply_to_group(&self.graph.stabilizer_group())?;
        Ok(mapped.contract(&self.new_qubits)?.same_group(code))
    }
}

/// Extends a code to a state and converts the state to graph form.
pub fn code_to_graph_code(h: &PauliSubgroup) -> Result<GraphCode> {
    let extension = extend_to_state(h)?;
    let (graph, record) = to_graph_state(&extension.state)?;
    Ok(GraphCode {
        graph,
        new_qubits: extension.new_qubits.clone(),
        record,
        extension,
    })
}
