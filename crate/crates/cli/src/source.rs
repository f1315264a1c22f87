//! Loading the state or group a command works on.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use stabci::construct::code_to_graph_code;
use stabci::io::{parse_bipartition, parse_graph, parse_subgroup};
use stabci::library::builtin;
use stabci::sweep::StateSpec;
use stabci::{Bipartition, PauliSubgroup};

#[derive(Args, Debug, Clone)]
#[group(multiple = false)]
pub struct SourceArgs {
    /// Built-in state: bell, rep7, five_qubit, c422_a, c422_b, c833.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Graph file: vertex count, `u v` edge lines, optional `A: ...` line.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Generators file: one Pauli string per line.
    #[arg(long)]
    pub generators: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "state".into())
}

pub struct LoadedState {
    pub name: String,
    pub spec: StateSpec,
}

/// A bipartite stabilizer state. Codes (generator files of rank below the
/// qubit count) are extended to graph codes whose appended qubits are Alice's.
pub fn load_state(src: &SourceArgs, bipartition: Option<&str>) -> Result<LoadedState> {
    let override_bip = |m: usize| -> Result<Option<Bipartition>> {
        bipartition.map(|b| parse_bipartition(b, m)).transpose().map_err(Into::into)
    };
    if let Some(name) = &src.builtin {
        let b = builtin(name)?;
        let (graph, default_bip) = b.graph_state()?;
        let bip = override_bip(graph.num_vertices())?.unwrap_or(default_bip);
        return Ok(LoadedState {
            name: b.name.to_string(),
            spec: StateSpec::Graph { graph, bipartition: bip },
        });
    }
    if let Some(path) = &src.graph {
        let (graph, file_bip) = parse_graph(&read(path)?)?;
        let Some(bip) = override_bip(graph.num_vertices())?.or(file_bip) else {
            bail!(stabci::Error::InvalidBipartition(format!(
                "{} has no `A:` line; pass --bipartition",
                path.display()
            )));
        };
        return Ok(LoadedState {
            name: stem(path),
            spec: StateSpec::Graph { graph, bipartition: bip },
        });
    }
    let Some(path) = &src.generators else {
        bail!(stabci::Error::Parse("pass one of --builtin, --graph or --generators".into()));
    };
    let group = parse_subgroup(&read(path)?)?;
    group.require_isotropic()?;
    let m = group.num_qubits();
    if group.rank() == m {
        let Some(bip) = override_bip(m)? else {
            bail!(stabci::Error::InvalidBipartition(
                "a state from a generators file needs --bipartition".into()
            ));
        };
        return Ok(LoadedState {
            name: stem(path),
            spec: StateSpec::Stabilizer { state: group, bipartition: bip },
        });
    }
    if bipartition.is_some() {
        bail!(stabci::Error::InvalidBipartition(
            "a code's bipartition is fixed: Alice holds the appended qubits".into()
        ));
    }
    let gc = code_to_graph_code(&group)?;
    Ok(LoadedState {
        name: stem(path),
        spec: StateSpec::Graph {
            graph: gc.graph,
            bipartition: Bipartition::from_alice(gc.new_qubits),
        },
    })
}

/// The raw group behind a source: a generators file as written, otherwise the
/// state group.
pub fn load_group(src: &SourceArgs, bipartition: Option<&str>) -> Result<(PauliSubgroup, Option<Bipartition>)> {
    if let Some(path) = &src.generators {
        let group = parse_subgroup(&read(path)?)?;
        let bip = bipartition
            .map(|b| parse_bipartition(b, group.num_qubits()))
            .transpose()?;
        return Ok((group, bip));
    }
    let state = load_state(src, bipartition)?;
    let bip = state.spec.bipartition().clone();
    Ok((state.spec.group(), Some(bip)))
}
