#![allow(dead_code)]

use rand::Rng;
use stabci::graph::{Bipartition, Graph};
use stabci::library::{builtin, BUILTIN_NAMES};
use stabci::random::{random_bipartition, random_state};
use stabci::subgroup::PauliSubgroup;

pub const PARAMS: [f64; 4] = [0.0, 0.3, 0.7, 1.0];

/// Built-in graph states, optionally only those with at most `max_qubits`.
pub fn builtin_graphs(max_qubits: usize) -> Vec<(&'static str, Graph, Bipartition)> {
    BUILTIN_NAMES
        .iter()
        .map(|&name| {
            let (g, bip) = builtin(name).unwrap().graph_state().unwrap();
            (name, g, bip)
        })
        .filter(|(_, g, _)| g.num_vertices() <= max_qubits)
        .collect()
}

/// Random state and bipartition whose deletion of Alice keeps the rank.
pub fn random_instance<R: Rng>(rng: &mut R, min_qubits: usize, max_qubits: usize) -> (PauliSubgroup, Bipartition) {
    loop {
        let m = rng.gen_range(min_qubits..=max_qubits);
        let state = random_state(rng, m);
        let bip = random_bipartition(rng, m);
        if state.delete(bip.alice()).unwrap().rank_preserved {
            return (state, bip);
        }
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Expands coset probabilities into the noisy projector spectrum: each
/// `Prob(s) / 2^κ` repeated `2^κ` times, sorted.
pub fn spectrum_from_distribution(probs: &[f64], kappa: usize) -> Vec<f64> {
    let mult = 1usize << kappa;
    let mut out: Vec<f64> = probs
        .iter()
        .flat_map(|&p| std::iter::repeat_n(p / mult as f64, mult))
        .collect();
    out.sort_by(f64::total_cmp);
    out
}
