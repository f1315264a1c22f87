//! Exact coherent information of stabilizer states under Pauli noise.
//!
//! Entropies of noisy stabilizer states reduce to Shannon entropies of
//! syndrome distributions, which are computed here from exact coset weight
//! counts. A dense density-matrix [`oracle`] checks the results on small
//! registers.

pub mod clifford;
pub mod coherent;
pub mod construct;
pub mod convolve;
pub mod cosets;
pub mod entropy;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod io;
pub mod library;
pub mod limits;
pub mod noise;
pub mod oracle;
pub mod pauli;
pub mod random;
pub mod subgroup;
pub mod sweep;

pub use coherent::{
    ci_all_qubit_noise, ci_bob_only_noise, ci_graph_dephasing, ci_graph_prep_and_post, noisy_projector_entropy,
    CoherentInformationReport, Method, PrepNoise, Scope, StateAnalysis,
};
pub use cosets::{
    build_error_basis, classical_syndrome_distribution, coset_weight_table, syndrome_distribution, syndrome_of,
    weight_enumerator_eval, CosetWeightTable, ErrorBasis, SyndromeDistribution,
};
pub use error::{Error, Result};
pub use graph::{Bipartition, Graph};
pub use limits::Limits;
pub use noise::PauliChannelSpec;
pub use pauli::{Pauli, PauliString};
pub use subgroup::{PauliSubgroup, QubitSubset};
