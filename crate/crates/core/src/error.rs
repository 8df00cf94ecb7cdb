//! Error type shared across the crate.

use thiserror::Error;

use crate::state::QubitLabel;

#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate qubit label {0}")]
    DuplicateLabel(QubitLabel),
    #[error("unknown qubit label {0}")]
    UnknownLabel(QubitLabel),
    #[error("operator {name} acts on {arity} qubit(s) but {targets} target(s) were given")]
    ArityMismatch {
        name: String,
        arity: usize,
        targets: usize,
    },
    #[error("amplitude length {amps} does not match 2^{qubits}")]
    DimensionMismatch { amps: usize, qubits: usize },
    #[error("states are defined on different labels")]
    LabelMismatch,
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("cannot normalize a state with zero norm")]
    ZeroNorm,
    #[error("non-finite amplitude produced")]
    NonFinite,
    #[error("Bell-ket index must be a single bit, got {0}")]
    NotABit(u32),
    #[error("Hadamard transform is only provided for 1 or 2 qubits, got {0}")]
    BadHadamardSize(usize),
    #[error("occupation numbers must be 0 or 1")]
    BadOccupation,
    #[error("fermionic mode is already occupied")]
    ModeOccupied,
    #[error("configuration uses {config} orbitals per dot but parameters declare {params}")]
    OrbitalMismatch { config: usize, params: usize },
    #[error("{n} electrons exceed the {modes} available modes")]
    TooManyElectrons { n: usize, modes: usize },
    #[error("temperature must be positive, got {0} K")]
    NonPositiveTemperature(f64),
    #[error("error probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error("noise target must be a non-empty subset of the state labels")]
    BadNoiseTarget,
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("probability grid is empty")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
