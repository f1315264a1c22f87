//! Seeded random instances for tests and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{LocalClifford, LocalCliffordRecord};
use crate::gf2::{BitMatrix, BitVec};
use crate::graph::{Bipartition, Graph};
use crate::subgroup::{PauliSubgroup, QubitSubset};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each edge present with probability `density`.
pub fn random_graph<R: Rng>(rng: &mut R, m: usize, density: f64) -> Graph {
    let mut g = Graph::empty(m);
    for u in 0..m {
        for v in u + 1..m {
            if rng.gen_bool(density) {
                g.add_edge(u, v).expect("distinct vertices in range");
            }
        }
    }
    g
}

/// Graph with edges only between the first `k` vertices (Alice) and the rest.
pub fn random_bipartite_graph<R: Rng>(rng: &mut R, k: usize, n: usize, density: f64) -> (Graph, Bipartition) {
    let mut g = Graph::empty(k + n);
    for a in 0..k {
        for b in k..k + n {
            if rng.gen_bool(density) {
                g.add_edge(a, b).expect("distinct vertices in range");
            }
        }
    }
    let bip = Bipartition::from_alice(QubitSubset::range(k + n, 0, k).expect("range in bounds"));
    (g, bip)
}

pub fn random_subset<R: Rng>(rng: &mut R, m: usize, size: usize) -> QubitSubset {
    let mut all: Vec<usize> = (0..m).collect();
    all.shuffle(rng);
    QubitSubset::new(m, all.into_iter().take(size)).expect("indices in range")
}

/// Random Alice set of size `1..m`.
pub fn random_bipartition<R: Rng>(rng: &mut R, m: usize) -> Bipartition {
    assert!(m >= 2);
    let k = rng.gen_range(1..m);
    Bipartition::from_alice(random_subset(rng, m, k))
}

pub fn random_local_clifford<R: Rng>(rng: &mut R) -> LocalClifford {
    *LocalClifford::ALL.choose(rng).expect("non-empty")
}

/// A random graph state under random local Cliffords. Every stabilizer state
/// arises this way.
pub fn random_state<R: Rng>(rng: &mut R, m: usize) -> PauliSubgroup {
    let g = random_graph(rng, m, 0.5);
    let record = LocalCliffordRecord {
        per_qubit: (0..m).map(|_| random_local_clifford(rng)).collect(),
    };
    record
        .apply_to_group(&g.stabilizer_group())
        .expect("record matches register")
}

fn random_vector<R: Rng>(rng: &mut R, len: usize) -> BitVec {
    BitVec::from_bools(&(0..len).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
}

/// Random isotropic subgroup of the given rank (at most `m`), taken inside a
/// random state.
pub fn random_isotropic<R: Rng>(rng: &mut R, m: usize, rank: usize) -> PauliSubgroup {
    assert!(rank <= m);
    let state = random_state(rng, m);
    let basis = state.matrix().row_basis();
    let mut rows = BitMatrix::new(2 * m);
    while rows.num_rows() < rank {
        let v = basis.combine_rows(&random_vector(rng, basis.num_rows()));
        if !v.is_zero() && !rows.span_contains(&v) {
            rows.push_row(v);
        }
    }
    PauliSubgroup::from_matrix(m, rows).expect("width matches")
}

/// Random subgroup of the given rank (at most `2m`), not necessarily isotropic.
pub fn random_subgroup<R: Rng>(rng: &mut R, m: usize, rank: usize) -> PauliSubgroup {
    assert!(rank <= 2 * m);
    let mut rows = BitMatrix::new(2 * m);
    while rows.num_rows() < rank {
        let v = random_vector(rng, 2 * m);
        if !v.is_zero() && !rows.span_contains(&v) {
            rows.push_row(v);
        }
    }
    PauliSubgroup::from_matrix(m, rows).expect("width matches")
}
