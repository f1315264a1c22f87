//! Built-in states: Bell pair, seven-qubit repetition star, the `[[4,2,2]]`
//! graph pair, and the generator-defined `[[5,1,3]]` and `[[8,3,3]]` codes.

use crate::construct::code_to_graph_code;
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::io::parse_subgroup;
use crate::subgroup::{PauliSubgroup, QubitSubset};

const FIVE_QUBIT: &str = include_str!("../data/five_qubit.txt");
const C833: &str = include_str!("../data/c833.txt");

pub const BUILTIN_NAMES: [&str; 6] = ["bell", "rep7", "five_qubit", "c422_a", "c422_b", "c833"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    /// A graph state with Alice's vertices marked.
    Graph { graph: Graph, bipartition: Bipartition },
    /// A stabilizer code on Bob's `n` qubits. The bipartition describes the
    /// extended state, whose appended qubits belong to Alice.
    Code { code: PauliSubgroup, bipartition: Bipartition },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Builtin {
    pub name: &'static str,
    pub description: &'static str,
    pub kind: BuiltinKind,
}

impl Builtin {
    /// The associated graph state and bipartition; codes are converted through
    /// [`code_to_graph_code`].
    pub fn graph_state(&self) -> Result<(Graph, Bipartition)> {
        match &self.kind {
            BuiltinKind::Graph { graph, bipartition } => Ok((graph.clone(), bipartition.clone())),
            BuiltinKind::Code { code, .. } => {
                let gc = code_to_graph_code(code)?;
                Ok((gc.graph, Bipartition::from_alice(gc.new_qubits)))
            }
        }
    }
}

/// `[[4,2,2]]` graph: vertices 1, 2 are Alice's diamonds, 3–6 the
/// square `a b c d`. Diamond 1 touches `b, d`; diamond 2 touches `a, c`.
fn c422(with_diamond_edge: bool) -> Result<Graph> {
    let mut edges = vec![(2, 3), (3, 4), (4, 5), (5, 2), (0, 3), (0, 5), (1, 2), (1, 4)];
    if with_diamond_edge {
        edges.push((0, 1));
    }
    Graph::from_edges(6, &edges)
}

fn code_builtin(text: &str) -> Result<BuiltinKind> {
    let code = parse_subgroup(text)?;
    let n = code.num_qubits();
    let k = n - code.rank();
    let alice = QubitSubset::range(n + k, n, n + k)?;
    Ok(BuiltinKind::Code {
        code,
        bipartition: Bipartition::from_alice(alice),
    })
}

pub fn builtin(name: &str) -> Result<Builtin> {
    let first = |m: usize| QubitSubset::new(m, [0]).map(Bipartition::from_alice);
    let diamonds = || QubitSubset::new(6, [0, 1]).map(Bipartition::from_alice);
    let (name, description, kind) = match name {
        "bell" => (
            "bell",
            "Bell pair: K2 with Alice on vertex 1",
            BuiltinKind::Graph {
                graph: Graph::complete(2),
                bipartition: first(2)?,
            },
        ),
        "rep7" => (
            "rep7",
            "seven-qubit repetition code: star K_{1,7}, Alice at the center",
            BuiltinKind::Graph {
                graph: Graph::star(7),
                bipartition: first(8)?,
            },
        ),
        "c422_a" => (
            "c422_a",
            "[[4,2,2]] graph code, diamonds 1-2 unconnected",
            BuiltinKind::Graph {
                graph: c422(false)?,
                bipartition: diamonds()?,
            },
        ),
        "c422_b" => (
            "c422_b",
            "[[4,2,2]] graph code, diamonds 1-2 connected",
            BuiltinKind::Graph {
                graph: c422(true)?,
                bipartition: diamonds()?,
            },
        ),
        "five_qubit" => ("five_qubit", "[[5,1,3]] perfect code", code_builtin(FIVE_QUBIT)?),
        "c833" => ("c833", "[[8,3,3]] code", code_builtin(C833)?),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    Ok(Builtin {
        name,
        description,
        kind,
    })
}
