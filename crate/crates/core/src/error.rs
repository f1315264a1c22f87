use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected} qubits, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("qubit index {index} out of range for {size} qubits")]
    QubitOutOfRange { index: usize, size: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("the group is not isotropic (generators {first} and {second} anticommute)")]
    NotIsotropic { first: usize, second: usize },

    #[error("not a stabilizer state: rank {rank} on {qubits} qubits")]
    NotAState { rank: usize, qubits: usize },

    #[error("deleting Alice's qubits drops the group rank from {before} to {after}")]
    RankDrop { before: usize, after: usize },

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("unknown built-in state `{0}`")]
    UnknownBuiltin(String),

    #[error("{what} needs 2^{required} enumeration steps, above the cap of 2^{cap}")]
    CapExceeded {
        what: &'static str,
        required: u32,
        cap: u32,
    },

    #[error("dense operator has eigenvalue {0:e} below tolerance")]
    NegativeEigenvalue(f64),

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, Error>;
