//! Plain-text formats for Pauli lists, graphs, bipartitions and Clifford records.
//!
//! All qubit indices in these formats are 1-based. Blank lines and anything
//! after `#` are ignored.

use std::fmt::Write as _;

use crate::clifford::{LocalClifford, LocalCliffordRecord};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::pauli::PauliString;
use crate::subgroup::{PauliSubgroup, QubitSubset};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

/// One Pauli string per line, e.g. `XZZ`.
pub fn parse_pauli_lines(text: &str) -> Result<Vec<PauliString>> {
    content_lines(text)
        .map(|(line, body)| {
            body.parse::<PauliString>()
                .map_err(|e| Error::Parse(format!("line {line}: {e}")))
        })
        .collect()
}

/// A subgroup file: Pauli lines of equal length.
pub fn parse_subgroup(text: &str) -> Result<PauliSubgroup> {
    let gens = parse_pauli_lines(text)?;
    let m = gens
        .first()
        .map(|g| g.num_qubits())
        .ok_or_else(|| Error::Parse("no generators found".into()))?;
    if let Some(bad) = gens.iter().find(|g| g.num_qubits() != m) {
        return Err(Error::Parse(format!(
            "generator {bad} has {} qubits, expected {m}",
            bad.num_qubits()
        )));
    }
    PauliSubgroup::from_generators(m, &gens)
}

pub fn format_subgroup(h: &PauliSubgroup) -> String {
    let mut out = String::new();
    for g in h.generators() {
        let _ = writeln!(out, "{g}");
    }
    out
}

/// Parses `A: 1 3 5` (Alice's qubits) for a register of `m` qubits.
pub fn parse_bipartition(text: &str, m: usize) -> Result<Bipartition> {
    let body = text.trim();
    let rest = body
        .strip_prefix("A:")
        .or_else(|| body.strip_prefix("A :"))
        .ok_or_else(|| Error::Parse(format!("bipartition `{body}` must start with `A:`")))?;
    let indices = rest
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad qubit index `{t}` in bipartition")))
        })
        .collect::<Result<Vec<_>>>()?;
    let alice = QubitSubset::from_one_based(m, indices)
        .map_err(|e| Error::InvalidBipartition(e.to_string()))?;
    Ok(Bipartition::from_alice(alice))
}

pub fn format_bipartition(bip: &Bipartition) -> String {
    let items: Vec<String> = bip.alice().one_based().iter().map(|q| q.to_string()).collect();
    format!("A: {}", items.join(" "))
}

/// A graph file: a vertex count `m`, then `u v` edges, optionally an `A: ...`
/// bipartition line.
pub fn parse_graph(text: &str) -> Result<(Graph, Option<Bipartition>)> {
    let mut lines = content_lines(text);
    let (_, first) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let m: usize = first
        .parse()
        .map_err(|_| Error::Parse(format!("first line `{first}` must be the vertex count")))?;
    let mut graph = Graph::empty(m);
    let mut bip = None;
    for (line, body) in lines {
        if body.starts_with('A') {
            if bip.is_some() {
                return Err(Error::Parse(format!("line {line}: second bipartition line")));
            }
            bip = Some(parse_bipartition(body, m)?);
            continue;
        }
        let ends: Vec<&str> = body.split_whitespace().collect();
        let [u, v] = ends.as_slice() else {
            return Err(Error::Parse(format!("line {line}: expected `u v`, found `{body}`")));
        };
        let parse = |t: &str| -> Result<usize> {
            let q: usize = t
                .parse()
                .map_err(|_| Error::Parse(format!("line {line}: bad vertex `{t}`")))?;
            if q == 0 || q > m {
                return Err(Error::Parse(format!("line {line}: vertex {q} outside 1..={m}")));
            }
            Ok(q - 1)
        };
        let (u, v) = (parse(u)?, parse(v)?);
        graph
            .add_edge(u, v)
            .map_err(|e| Error::Parse(format!("line {line}: {e}")))?;
    }
    Ok((graph, bip))
}

pub fn format_graph(graph: &Graph, bip: Option<&Bipartition>) -> String {
    let mut out = format!("{}\n", graph.num_vertices());
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    if let Some(b) = bip {
        let _ = writeln!(out, "{}", format_bipartition(b));
    }
    out
}

/// One line per qubit: `q a b c d`, the 2×2 block acting on `(x, z)`.
pub fn format_record(record: &LocalCliffordRecord) -> String {
    let mut out = String::from("# qubit a b c d   (x', z') = (a x + b z, c x + d z)\n");
    for (q, g) in record.per_qubit.iter().enumerate() {
        let _ = writeln!(out, "{} {g}   # {}", q + 1, g.name());
    }
    out
}

pub fn parse_record(text: &str) -> Result<LocalCliffordRecord> {
    let mut per_qubit = Vec::new();
    for (line, body) in content_lines(text) {
        let fields = body
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {line}: bad field `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let [q, a, b, c, d] = fields.as_slice() else {
            return Err(Error::Parse(format!("line {line}: expected `q a b c d`")));
        };
        if *q != per_qubit.len() + 1 {
            return Err(Error::Parse(format!("line {line}: qubits must be listed in order")));
        }
        if [a, b, c, d].iter().any(|&&v| v > 1) {
            return Err(Error::Parse(format!("line {line}: entries must be 0 or 1")));
        }
        per_qubit.push(LocalClifford::new(*a == 1, *b == 1, *c == 1, *d == 1)?);
    }
    Ok(LocalCliffordRecord { per_qubit })
}
