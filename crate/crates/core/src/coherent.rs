//! Coherent information of stabilizer states under Pauli noise.
//!
//! Every entropy is a syndrome entropy plus a count of logical qubits:
//!
//! * `S_AB` is the entropy of the cosets of the state group `H̄` under the
//!   channel, or of the contraction `H̄/A` in Bob's Pauli group when the noise
//!   only touches Bob.
//! * `S_B` is `k` plus the entropy of the cosets of the deletion `H̄\A` under
//!   the channel restricted to Bob.
//! * For graph states under dephasing the `S_B` term reduces to the syndrome
//!   entropy of the classical code generated by the biadjacency matrix.

use std::sync::OnceLock;

use serde::Serialize;

use crate::convolve::convolve;
use crate::cosets::{CosetSpace, CosetWeightTable, SyndromeDistribution};
use crate::entropy::binary_entropy;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::{Bipartition, Graph};
use crate::limits::Limits;
use crate::noise::{ChannelFamily, PauliChannelSpec};
use crate::subgroup::PauliSubgroup;

/// Which qubits the noise acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    All,
    Bob,
}

/// The formula that produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Cosets of `H̄` and `H̄\A`, noise anywhere.
    AllQubitCosets,
    /// Cosets of `H̄/A` and `H̄\A`, noise on Bob only.
    BobOnlyCosets,
    /// Graph state under dephasing on every qubit, classical code reduction.
    GraphDephasing,
    /// Graph state under dephasing on Bob only, classical code reduction.
    GraphDephasingBobOnly,
    /// Preparation and post-CZ noise combined by XOR convolution.
    PrepPostConvolution,
    /// Preparation and post-CZ noise composed per qubit, then enumerated.
    PrepPostCombined,
    /// Dense density matrices.
    DenseOracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::AllQubitCosets => "all_qubit_cosets",
            Method::BobOnlyCosets => "bob_only_cosets",
            Method::GraphDephasing => "graph_dephasing",
            Method::GraphDephasingBobOnly => "graph_dephasing_bob_only",
            Method::PrepPostConvolution => "prep_post_convolution",
            Method::PrepPostCombined => "prep_post_combined",
            Method::DenseOracle => "dense_oracle",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One named entropy that went into a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyTerm {
    pub name: &'static str,
    pub bits: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoherentInformationReport {
    pub n: usize,
    pub k: usize,
    pub s_b: f64,
    pub s_ab: f64,
    pub ci: f64,
    pub terms: Vec<EntropyTerm>,
    pub noise: String,
    pub method: Method,
    /// Set when the biadjacency matrix has rank below `k`; `S_B` then uses the
    /// rank in place of `k`.
    pub rank_deficient: bool,
}

impl CoherentInformationReport {
    fn new(bip: &Bipartition, s_b: f64, s_ab: f64, terms: Vec<EntropyTerm>, noise: String, method: Method) -> Self {
        Self {
            n: bip.n(),
            k: bip.k(),
            s_b,
            s_ab,
            ci: s_b - s_ab,
            terms,
            noise,
            method,
            rank_deficient: false,
        }
    }
}

/// Entropy of a noisy code projector: `κ + S(cosets of dual(H))` with
/// `κ = m - rank(H)` logical qubits.
pub fn noisy_projector_entropy(h: &PauliSubgroup, channel: &PauliChannelSpec, limits: &Limits) -> Result<f64> {
    h.require_isotropic()?;
    let kappa = h.num_qubits() - h.rank();
    let dist = CosetSpace::for_pauli(&h.dual())?.distribution(channel, limits)?;
    Ok(kappa as f64 + dist.entropy())
}

/// Coset space with lazily built weight tables, shared across grid points.
#[derive(Debug)]
struct GroupTables {
    space: CosetSpace,
    full: OnceLock<CosetWeightTable>,
    z_only: OnceLock<CosetWeightTable>,
}

fn cached(
    cell: &OnceLock<CosetWeightTable>,
    build: impl FnOnce() -> Result<CosetWeightTable>,
) -> Result<&CosetWeightTable> {
    if let Some(t) = cell.get() {
        return Ok(t);
    }
    let t = build()?;
    Ok(cell.get_or_init(|| t))
}

impl GroupTables {
    fn new(group: &PauliSubgroup) -> Result<Self> {
        Ok(Self {
            space: CosetSpace::for_pauli(group)?,
            full: OnceLock::new(),
            z_only: OnceLock::new(),
        })
    }

    fn distribution(&self, channel: &PauliChannelSpec, limits: &Limits) -> Result<SyndromeDistribution> {
        match channel.uniform_family() {
            Some(ChannelFamily::UniformDepolarizing { lambda }) => {
                let t = cached(&self.full, || self.space.weight_table_single_pass(limits))?;
                Ok(t.depolarizing_distribution(lambda))
            }
            Some(ChannelFamily::Dephasing { p }) => {
                let t = cached(&self.z_only, || self.space.z_string_weight_table(limits))?;
                Ok(t.flip_distribution(1.0 - p))
            }
            _ => self.space.distribution_by_enumeration(channel, limits),
        }
    }
}

/// Preparation noise on each `|+⟩` before the CZ layer of a graph state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrepNoise {
    /// Depolarizing parameter, `1` for none.
    pub lambda0: f64,
    /// Dephasing parameter, `1` for none.
    pub p0: f64,
}

impl PrepNoise {
    pub const NONE: PrepNoise = PrepNoise { lambda0: 1.0, p0: 1.0 };

    /// Depolarizing a `|+⟩` with `λ₀` equals dephasing it with `(1+λ₀)/2`;
    /// composing with dephasing `p₀` gives the returned parameter.
    pub fn effective_dephasing(&self) -> f64 {
        let p1 = (1.0 + self.lambda0) / 2.0;
        p1 * self.p0 + (1.0 - p1) * (1.0 - self.p0)
    }

    /// Equivalent dephasing channel applied after the CZ layer.
    pub fn channel(&self, num_qubits: usize) -> Result<PauliChannelSpec> {
        if !(0.0..=1.0).contains(&self.lambda0) || !(0.0..=1.0).contains(&self.p0) {
            return Err(Error::InvalidChannel(format!(
                "preparation noise ({}, {}) outside [0, 1]",
                self.lambda0, self.p0
            )));
        }
        PauliChannelSpec::dephasing(num_qubits, self.effective_dephasing())
    }

    fn describe(&self) -> String {
        format!("prep(depol:{}, dephase:{})", self.lambda0, self.p0)
    }
}

/// A state and bipartition prepared once for repeated evaluation.
///
/// Weight tables for the state, its deletion and its contraction are built on
/// first use and reused for every later channel of the same uniform family.
#[derive(Debug)]
pub struct StateAnalysis {
    state: PauliSubgroup,
    bip: Bipartition,
    graph: Option<Graph>,
    limits: Limits,
    whole: GroupTables,
    deleted: Option<GroupTables>,
    contracted: GroupTables,
    classical: OnceLock<(BitMatrix, CosetWeightTable)>,
}

impl StateAnalysis {
    pub fn new(state: &PauliSubgroup, bip: &Bipartition, limits: &Limits) -> Result<Self> {
        state.require_state()?;
        bip.check_size(state.num_qubits())?;
        let deletion = state.delete(bip.alice())?;
        let deleted = if deletion.rank_preserved {
            Some(GroupTables::new(&deletion.group)?)
        } else {
            None
        };
        Ok(Self {
            state: state.clone(),
            bip: bip.clone(),
            graph: None,
            limits: *limits,
            whole: GroupTables::new(state)?,
            deleted,
            contracted: GroupTables::new(&state.contract(bip.alice())?)?,
            classical: OnceLock::new(),
        })
    }

    pub fn for_graph(graph: &Graph, bip: &Bipartition, limits: &Limits) -> Result<Self> {
        let mut a = Self::new(&graph.stabilizer_group(), bip, limits)?;
        a.graph = Some(graph.clone());
        Ok(a)
    }

    pub fn state(&self) -> &PauliSubgroup {
        &self.state
    }

    pub fn bipartition(&self) -> &Bipartition {
        &self.bip
    }

    pub fn graph(&self) -> Option<&Graph> {
        self.graph.as_ref()
    }

    /// False when deleting Alice's qubits lowers the rank.
    pub fn deletion_preserves_rank(&self) -> bool {
        self.deleted.is_some()
    }

    fn deleted(&self) -> Result<&GroupTables> {
        self.deleted.as_ref().ok_or_else(|| {
            let before = self.state.rank();
            let after = self
                .state
                .delete(self.bip.alice())
                .map(|d| d.group.rank())
                .unwrap_or(0);
            Error::RankDrop { before, after }
        })
    }

    fn check_channel(&self, channel: &PauliChannelSpec) -> Result<()> {
        if channel.num_qubits() != self.state.num_qubits() {
            return Err(Error::SizeMismatch {
                expected: self.state.num_qubits(),
                found: channel.num_qubits(),
            });
        }
        Ok(())
    }

    /// `S_B - k` for a channel given on all qubits; only Bob's part matters.
    fn bob_syndrome_entropy(&self, channel: &PauliChannelSpec) -> Result<f64> {
        let on_bob = channel.restrict(self.bip.bob())?;
        Ok(self.deleted()?.distribution(&on_bob, &self.limits)?.entropy())
    }

    /// Noise anywhere: `S_AB` from the cosets of `H̄`.
    pub fn all_qubit_noise(&self, channel: &PauliChannelSpec) -> Result<CoherentInformationReport> {
        self.check_channel(channel)?;
        let s_b_syn = self.bob_syndrome_entropy(channel)?;
        let s_ab = self.whole.distribution(channel, &self.limits)?.entropy();
        let k = self.bip.k() as f64;
        Ok(CoherentInformationReport::new(
            &self.bip,
            k + s_b_syn,
            s_ab,
            vec![
                EntropyTerm {
                    name: "deleted_syndrome_entropy",
                    bits: s_b_syn,
                },
                EntropyTerm {
                    name: "state_syndrome_entropy",
                    bits: s_ab,
                },
            ],
            channel.describe(),
            Method::AllQubitCosets,
        ))
    }

    /// Noise on Bob only: `S_AB` from the cosets of `H̄/A` in Bob's Pauli group.
    pub fn bob_only_noise(&self, channel: &PauliChannelSpec) -> Result<CoherentInformationReport> {
        self.check_channel(channel)?;
        if !channel.is_supported_within(self.bip.bob()) {
            return Err(Error::InvalidChannel(format!(
                "channel {} acts outside Bob's qubits {}",
                channel.describe(),
                self.bip.bob()
            )));
        }
        let s_b_syn = self.bob_syndrome_entropy(channel)?;
        let on_bob = channel.restrict(self.bip.bob())?;
        let s_ab = self.contracted.distribution(&on_bob, &self.limits)?.entropy();
        let k = self.bip.k() as f64;
        Ok(CoherentInformationReport::new(
            &self.bip,
            k + s_b_syn,
            s_ab,
            vec![
                EntropyTerm {
                    name: "deleted_syndrome_entropy",
                    bits: s_b_syn,
                },
                EntropyTerm {
                    name: "contracted_syndrome_entropy",
                    bits: s_ab,
                },
            ],
            channel.describe(),
            Method::BobOnlyCosets,
        ))
    }

    fn classical_table(&self) -> Result<&(BitMatrix, CosetWeightTable)> {
        if let Some(t) = self.classical.get() {
            return Ok(t);
        }
        let graph = self
            .graph
            .as_ref()
            .ok_or_else(|| Error::InvalidGraph("classical reduction needs a graph state".into()))?;
        let gab = graph.biadjacency(&self.bip)?;
        let table = CosetSpace::for_bits(&gab)?.weight_table_single_pass(&self.limits)?;
        Ok(self.classical.get_or_init(|| (gab, table)))
    }

    /// Graph state under dephasing `p`, on every qubit or on Bob only.
    ///
    /// `S_B = rank(G_AB) + S(s_{G_AB})` with bits flipping with probability
    /// `1-p`; `S_AB` is `S̄(p)` per noisy qubit.
    pub fn graph_dephasing(&self, p: f64, bob_only: bool) -> Result<CoherentInformationReport> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidChannel(format!("p = {p} outside [0, 1]")));
        }
        let (gab, table) = self.classical_table()?;
        let rank = table.subspace_rank();
        let syn = table.flip_distribution(1.0 - p).entropy();
        let noisy = if bob_only { self.bip.n() } else { self.bip.num_qubits() };
        let s_ab = noisy as f64 * binary_entropy(p);
        let (method, noise) = if bob_only {
            (Method::GraphDephasingBobOnly, format!("dephase:{p}@B"))
        } else {
            (Method::GraphDephasing, format!("dephase:{p}"))
        };
        let mut report = CoherentInformationReport::new(
            &self.bip,
            rank as f64 + syn,
            s_ab,
            vec![
                EntropyTerm {
                    name: "classical_syndrome_entropy",
                    bits: syn,
                },
                EntropyTerm {
                    name: "biadjacency_rank",
                    bits: rank as f64,
                },
            ],
            noise,
            method,
        );
        report.rank_deficient = rank < gab.num_rows();
        Ok(report)
    }

    fn post_channel(&self, post: &PauliChannelSpec) -> Result<PauliChannelSpec> {
        self.check_channel(post)?;
        if self.graph.is_none() {
            return Err(Error::InvalidGraph("preparation noise needs a graph state".into()));
        }
        Ok(post.clone())
    }

    /// Graph state with noisy `|+⟩` preparation followed by `post` after the
    /// CZ layer. Each stage gives a syndrome distribution over the same
    /// cosets; the stages are combined by XOR convolution.
    pub fn prep_and_post(&self, prep: PrepNoise, post: &PauliChannelSpec) -> Result<CoherentInformationReport> {
        let post = self.post_channel(post)?;
        let prep_ch = prep.channel(self.state.num_qubits())?;
        let bob = self.bip.bob();
        let deleted = self.deleted()?;
        let q_b = convolve(
            &deleted.distribution(&prep_ch.restrict(bob)?, &self.limits)?,
            &deleted.distribution(&post.restrict(bob)?, &self.limits)?,
        )?;
        let q_ab = convolve(
            &self.whole.distribution(&prep_ch, &self.limits)?,
            &self.whole.distribution(&post, &self.limits)?,
        )?;
        let s_b_syn = q_b.entropy();
        let s_ab = q_ab.entropy();
        Ok(CoherentInformationReport::new(
            &self.bip,
            self.bip.k() as f64 + s_b_syn,
            s_ab,
            vec![
                EntropyTerm {
                    name: "deleted_syndrome_entropy",
                    bits: s_b_syn,
                },
                EntropyTerm {
                    name: "state_syndrome_entropy",
                    bits: s_ab,
                },
            ],
            format!("{} then {}", prep.describe(), post.describe()),
            Method::PrepPostConvolution,
        ))
    }

    /// Same quantity as [`Self::prep_and_post`], composing both stages into one
    /// per-qubit channel before enumerating.
    pub fn prep_and_post_combined(
        &self,
        prep: PrepNoise,
        post: &PauliChannelSpec,
    ) -> Result<CoherentInformationReport> {
        let post = self.post_channel(post)?;
        let combined = prep.channel(self.state.num_qubits())?.then(&post)?;
        let mut report = self.all_qubit_noise(&combined)?;
        report.noise = format!("{} then {}", prep.describe(), post.describe());
        report.method = Method::PrepPostCombined;
        Ok(report)
    }
}

/// Coherent information with noise on any qubits.
pub fn ci_all_qubit_noise(
    state: &PauliSubgroup,
    bip: &Bipartition,
    channel: &PauliChannelSpec,
    limits: &Limits,
) -> Result<CoherentInformationReport> {
    StateAnalysis::new(state, bip, limits)?.all_qubit_noise(channel)
}

/// Coherent information with noise supported on Bob's qubits.
pub fn ci_bob_only_noise(
    state: &PauliSubgroup,
    bip: &Bipartition,
    channel: &PauliChannelSpec,
    limits: &Limits,
) -> Result<CoherentInformationReport> {
    StateAnalysis::new(state, bip, limits)?.bob_only_noise(channel)
}

/// Graph state under dephasing through the classical code of `G_AB`.
///
/// Edges inside A or inside B are local unitaries on one side and do not
/// change either entropy, so only the biadjacency matrix is used.
pub fn ci_graph_dephasing(
    graph: &Graph,
    bip: &Bipartition,
    p: f64,
    bob_only: bool,
    limits: &Limits,
) -> Result<CoherentInformationReport> {
    StateAnalysis::for_graph(graph, bip, limits)?.graph_dephasing(p, bob_only)
}

/// Graph state with preparation noise and post-CZ noise, combined by convolution.
pub fn ci_graph_prep_and_post(
    graph: &Graph,
    bip: &Bipartition,
    prep: PrepNoise,
    post: &PauliChannelSpec,
    limits: &Limits,
) -> Result<CoherentInformationReport> {
    StateAnalysis::for_graph(graph, bip, limits)?.prep_and_post(prep, post)
}
