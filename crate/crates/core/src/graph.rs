//! Simple graphs, bipartitions, and graph-state stabilizer groups.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::subgroup::{PauliSubgroup, QubitSubset};

/// A simple undirected graph stored as a symmetric GF(2) adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: BitMatrix,
}

impl Graph {
    pub fn empty(num_vertices: usize) -> Self {
        Self {
            adjacency: BitMatrix::zeros(num_vertices, num_vertices),
        }
    }

    /// Builds a graph from 0-based edges.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(num_vertices);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Wraps an adjacency matrix after checking symmetry and the zero diagonal.
    pub fn from_adjacency(adjacency: BitMatrix) -> Result<Self> {
        let n = adjacency.num_rows();
        if adjacency.num_cols() != n {
            return Err(Error::InvalidGraph("adjacency matrix is not square".into()));
        }
        for i in 0..n {
            if adjacency.get(i, i) {
                return Err(Error::InvalidGraph(format!("self-loop on vertex {}", i + 1)));
            }
            for j in (i + 1)..n {
                if adjacency.get(i, j) != adjacency.get(j, i) {
                    return Err(Error::InvalidGraph("adjacency matrix is not symmetric".into()));
                }
            }
        }
        Ok(Self { adjacency })
    }

    pub fn complete(num_vertices: usize) -> Self {
        let mut g = Self::empty(num_vertices);
        for u in 0..num_vertices {
            for v in (u + 1)..num_vertices {
                g.adjacency.set(u, v, true);
                g.adjacency.set(v, u, true);
            }
        }
        g
    }

    /// Star with vertex 0 at the center and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = Self::empty(leaves + 1);
        for v in 1..=leaves {
            g.adjacency.set(0, v, true);
            g.adjacency.set(v, 0, true);
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.num_rows()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.num_vertices();
        for w in [u, v] {
            if w >= n {
                return Err(Error::QubitOutOfRange { index: w, size: n });
            }
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop on vertex {}", u + 1)));
        }
        self.adjacency.set(u, v, true);
        self.adjacency.set(v, u, true);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adjacency.set(u, v, false);
        self.adjacency.set(v, u, false);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u, v)
    }

    /// Edges `(u, v)` with `u < v`, 0-based, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.num_vertices();
        (0..n)
            .flat_map(|u| self.adjacency.row(u).ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.adjacency.row(v).ones().collect()
    }

    /// Stabilizer group with generators `X_v ∏_{w ∈ N(v)} Z_w`, i.e. `[I | Γ]`.
    pub fn stabilizer_group(&self) -> PauliSubgroup {
        let n = self.num_vertices();
        let rows = (0..n)
            .map(|v| BitVec::unit(n, v).concat(self.adjacency.row(v)))
            .collect();
        PauliSubgroup::from_matrix(n, BitMatrix::from_rows(2 * n, rows))
            .expect("graph-state tableau has 2n columns")
    }

    /// Keeps only edges crossing the bipartition.
    pub fn restrict_to_bipartite(&self, bip: &Bipartition) -> Result<Graph> {
        bip.check_size(self.num_vertices())?;
        let mut g = self.clone();
        for (u, v) in self.edges() {
            if bip.is_alice(u) == bip.is_alice(v) {
                g.remove_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Biadjacency matrix: rows are Alice's vertices, columns Bob's, both ascending.
    pub fn biadjacency(&self, bip: &Bipartition) -> Result<BitMatrix> {
        bip.check_size(self.num_vertices())?;
        let bob = bip.bob().indices();
        let rows = bip
            .alice()
            .indices()
            .into_iter()
            .map(|a| self.adjacency.row(a).select(&bob))
            .collect();
        Ok(BitMatrix::from_rows(bob.len(), rows))
    }
}

/// A split of the qubits into Alice's `k` and Bob's `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    alice: QubitSubset,
    bob: QubitSubset,
}

impl Bipartition {
    /// Alice gets `alice`, Bob gets the rest.
    pub fn from_alice(alice: QubitSubset) -> Self {
        let bob = alice.complement();
        Self { alice, bob }
    }

    pub fn new(alice: QubitSubset, bob: QubitSubset) -> Result<Self> {
        if alice.parent_size() != bob.parent_size() {
            return Err(Error::InvalidBipartition("parts refer to different registers".into()));
        }
        if alice.indices().iter().any(|&q| bob.contains(q)) {
            return Err(Error::InvalidBipartition("parts overlap".into()));
        }
        if alice.len() + bob.len() != alice.parent_size() {
            return Err(Error::InvalidBipartition("parts do not cover every qubit".into()));
        }
        Ok(Self { alice, bob })
    }

    pub fn alice(&self) -> &QubitSubset {
        &self.alice
    }

    pub fn bob(&self) -> &QubitSubset {
        &self.bob
    }

    pub fn is_alice(&self, q: usize) -> bool {
        self.alice.contains(q)
    }

    /// Alice's qubit count.
    pub fn k(&self) -> usize {
        self.alice.len()
    }

    /// Bob's qubit count.
    pub fn n(&self) -> usize {
        self.bob.len()
    }

    pub fn num_qubits(&self) -> usize {
        self.alice.parent_size()
    }

    pub(crate) fn check_size(&self, m: usize) -> Result<()> {
        if self.num_qubits() != m {
            return Err(Error::InvalidBipartition(format!(
                "bipartition covers {} qubits but the state has {m}",
                self.num_qubits()
            )));
        }
        Ok(())
    }
}
