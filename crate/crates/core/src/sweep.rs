//! Channel templates, parameter grids, and coherent-information sweeps.

use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::coherent::{CoherentInformationReport, PrepNoise, Scope, StateAnalysis};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::limits::Limits;
use crate::noise::PauliChannelSpec;
use crate::subgroup::{PauliSubgroup, QubitSubset};

/// Column names of the sweep CSV, in order.
pub const CSV_HEADER: [&str; 8] = [
    "noise_param",
    "S_B_bits",
    "S_AB_bits",
    "coherent_information_bits",
    "method",
    "state",
    "n",
    "k",
];

/// Placeholder replaced by each grid value.
pub const GRID_PLACEHOLDER: &str = "{grid}";

/// A channel parameter: fixed, or taken from the sweep grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Param {
    Value(f64),
    Grid,
}

impl Param {
    fn resolve(self, grid_value: Option<f64>) -> Result<f64> {
        match (self, grid_value) {
            (Param::Value(v), _) => Ok(v),
            (Param::Grid, Some(v)) => Ok(v),
            (Param::Grid, None) => Err(Error::InvalidChannel(format!(
                "channel uses {GRID_PLACEHOLDER} but no grid value was given"
            ))),
        }
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == GRID_PLACEHOLDER {
            return Ok(Param::Grid);
        }
        s.parse::<f64>()
            .map(Param::Value)
            .map_err(|_| Error::Parse(format!("bad channel parameter `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ChannelKind {
    Depolarizing(Param),
    Dephasing(Param),
    /// One `[pI, pX, pY, pZ]` for every qubit, or one per qubit.
    Pauli(Vec<[f64; 4]>),
}

/// Qubits a channel template acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    All,
    Alice,
    Bob,
    /// 1-based qubit indices.
    Qubits(Vec<usize>),
}

/// A channel in the text syntax `depol:L`, `dephase:P`,
/// `pauli:pI,pX,pY,pZ[;...]`, with an optional `@A`, `@B` or `@1,3` suffix.
/// `L` and `P` may be `{grid}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelTemplate {
    pub kind: ChannelKind,
    pub support: Support,
}

impl FromStr for ChannelTemplate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, support) = match s.split_once('@') {
            None => (s, Support::All),
            Some((body, sup)) => {
                let sup = sup.trim();
                let support = match sup {
                    "A" => Support::Alice,
                    "B" => Support::Bob,
                    "all" => Support::All,
                    list => Support::Qubits(
                        list.split(',')
                            .map(|t| {
                                t.trim()
                                    .parse::<usize>()
                                    .map_err(|_| Error::Parse(format!("bad support `{sup}`")))
                            })
                            .collect::<Result<_>>()?,
                    ),
                };
                (body, support)
            }
        };
        let (name, args) = body
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("channel `{s}` must look like `depol:0.5`")))?;
        let kind = match name.trim() {
            "depol" => ChannelKind::Depolarizing(args.parse()?),
            "dephase" => ChannelKind::Dephasing(args.parse()?),
            "pauli" => ChannelKind::Pauli(
                args.split(';')
                    .map(|q| {
                        let v: Vec<f64> = q
                            .split(',')
                            .map(|t| {
                                t.trim()
                                    .parse::<f64>()
                                    .map_err(|_| Error::Parse(format!("bad probability `{t}`")))
                            })
                            .collect::<Result<_>>()?;
                        <[f64; 4]>::try_from(v.as_slice())
                            .map_err(|_| Error::Parse(format!("`{q}` needs four probabilities")))
                    })
                    .collect::<Result<_>>()?,
            ),
            other => return Err(Error::Parse(format!("unknown channel `{other}`"))),
        };
        Ok(Self { kind, support })
    }
}

impl ChannelTemplate {
    pub fn uses_grid(&self) -> bool {
        matches!(
            self.kind,
            ChannelKind::Depolarizing(Param::Grid) | ChannelKind::Dephasing(Param::Grid)
        )
    }

    /// The qubits the channel may touch.
    pub fn support_mask(&self, bip: &Bipartition) -> Result<QubitSubset> {
        let m = bip.num_qubits();
        match &self.support {
            Support::All => QubitSubset::range(m, 0, m),
            Support::Alice => Ok(bip.alice().clone()),
            Support::Bob => Ok(bip.bob().clone()),
            Support::Qubits(q) => QubitSubset::from_one_based(m, q.iter().copied()),
        }
    }

    pub fn instantiate(&self, bip: &Bipartition, grid_value: Option<f64>) -> Result<PauliChannelSpec> {
        let m = bip.num_qubits();
        let full = match &self.kind {
            ChannelKind::Depolarizing(p) => PauliChannelSpec::uniform_depolarizing(m, p.resolve(grid_value)?)?,
            ChannelKind::Dephasing(p) => PauliChannelSpec::dephasing(m, p.resolve(grid_value)?)?,
            ChannelKind::Pauli(per) => match per.len() {
                1 => PauliChannelSpec::from_per_qubit(vec![per[0]; m])?,
                len if len == m => PauliChannelSpec::from_per_qubit(per.clone())?,
                len => {
                    return Err(Error::InvalidChannel(format!(
                        "{len} per-qubit distributions for {m} qubits"
                    )))
                }
            },
        };
        if self.support == Support::All {
            return Ok(full);
        }
        full.with_support(&self.support_mask(bip)?)
    }
}

/// `steps` evenly spaced points from `start` to `stop` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, steps: usize) -> Result<Self> {
        for v in [start, stop] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Parse(format!("grid bound {v} outside [0, 1]")));
            }
        }
        if steps == 0 {
            return Err(Error::Parse("grid needs at least one step".into()));
        }
        Ok(Self { start, stop, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64 / last)
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;
    /// `start:stop:steps`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Error::Parse(format!("grid `{s}` must be start:stop:steps")));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad grid bound `{t}`")))
        };
        let steps = c
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad grid step count `{c}`")))?;
        Grid::new(num(a)?, num(b)?, steps)
    }
}

/// A state to analyse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateSpec {
    Graph { graph: Graph, bipartition: Bipartition },
    Stabilizer { state: PauliSubgroup, bipartition: Bipartition },
}

impl StateSpec {
    pub fn bipartition(&self) -> &Bipartition {
        match self {
            StateSpec::Graph { bipartition, .. } | StateSpec::Stabilizer { bipartition, .. } => bipartition,
        }
    }

    pub fn group(&self) -> PauliSubgroup {
        match self {
            StateSpec::Graph { graph, .. } => graph.stabilizer_group(),
            StateSpec::Stabilizer { state, .. } => state.clone(),
        }
    }

    pub fn analysis(&self, limits: &Limits) -> Result<StateAnalysis> {
        match self {
            StateSpec::Graph { graph, bipartition } => StateAnalysis::for_graph(graph, bipartition, limits),
            StateSpec::Stabilizer { state, bipartition } => StateAnalysis::new(state, bipartition, limits),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepOptions {
    pub scope: Scope,
    /// Use the classical reduction for graph states under dephasing.
    pub use_reduction: bool,
    /// Noisy `|+⟩` preparation before the CZ layer (graph states only).
    pub prep: Option<PrepNoise>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            scope: Scope::All,
            use_reduction: true,
            prep: None,
        }
    }
}

/// One grid point of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub noise_param: f64,
    #[serde(flatten)]
    pub report: CoherentInformationReport,
}

/// Evaluates one channel on a prepared state, choosing the formula from the
/// template's support and the options. The choice depends only on the
/// template, so every point of a sweep uses the same method.
pub fn evaluate(
    analysis: &StateAnalysis,
    template: &ChannelTemplate,
    options: &SweepOptions,
    grid_value: Option<f64>,
) -> Result<CoherentInformationReport> {
    let bip = analysis.bipartition();
    let mut channel = template.instantiate(bip, grid_value)?;
    let mut mask = template.support_mask(bip)?;
    if options.scope == Scope::Bob {
        channel = channel.with_support(bip.bob())?;
        mask = QubitSubset::new(bip.num_qubits(), mask.indices().into_iter().filter(|&q| !bip.is_alice(q)))?;
    }
    if let Some(prep) = options.prep {
        return analysis.prep_and_post(prep, &channel);
    }
    let on_bob_only = mask.indices().iter().all(|&q| !bip.is_alice(q));
    let graph_dephasing = match template.kind {
        ChannelKind::Dephasing(p) if options.use_reduction && analysis.graph().is_some() => Some(p.resolve(grid_value)?),
        _ => None,
    };
    if on_bob_only {
        match graph_dephasing {
            Some(p) if mask == *bip.bob() => analysis.graph_dephasing(p, true),
            _ => analysis.bob_only_noise(&channel),
        }
    } else {
        match graph_dephasing {
            Some(p) if mask.len() == bip.num_qubits() => analysis.graph_dephasing(p, false),
            _ => analysis.all_qubit_noise(&channel),
        }
    }
}

/// One report per grid point. Weight tables are built at the first point and
/// reused for the rest, which are evaluated in parallel.
pub fn sweep(
    state: &StateSpec,
    template: &ChannelTemplate,
    options: &SweepOptions,
    points: &[f64],
    limits: &Limits,
) -> Result<Vec<SweepRow>> {
    let analysis = state.analysis(limits)?;
    let Some((&first, rest)) = points.split_first() else {
        return Ok(Vec::new());
    };
    let row = |x: f64| -> Result<SweepRow> {
        Ok(SweepRow {
            noise_param: x,
            report: evaluate(&analysis, template, options, Some(x))?,
        })
    };
    let mut rows = vec![row(first)?];
    rows.extend(rest.par_iter().map(|&x| row(x)).collect::<Result<Vec<_>>>()?);
    Ok(rows)
}

/// 17 significant digits, the same bytes on every run.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the sweep CSV.
pub fn write_csv<W: Write>(out: W, state_name: &str, rows: &[SweepRow]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            format_float(r.noise_param),
            format_float(r.report.s_b),
            format_float(r.report.s_ab),
            format_float(r.report.ci),
            r.report.method.as_str().to_string(),
            state_name.to_string(),
            r.report.n.to_string(),
            r.report.k.to_string(),
        ])?;
    }
    w.flush()
}
