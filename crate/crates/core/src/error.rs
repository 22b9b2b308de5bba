use thiserror::Error;

use crate::lattice::QubitId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ladder size: {0}")]
    InvalidSize(String),

    #[error("unknown qubit {0:?}")]
    UnknownQubit(QubitId),

    #[error("index {index} out of range (limit {limit})")]
    OutOfBounds { index: usize, limit: usize },

    #[error("rotation axis is not a unit vector (norm {0})")]
    NonUnitAxis(f64),

    #[error("qubit {0:?} cannot control itself")]
    SelfControl(QubitId),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("operator is not Hermitian (deviation {0:e})")]
    NonHermitian(f64),

    #[error("empty argument: {0}")]
    EmptyArgument(&'static str),

    #[error("schedule violation: {0}")]
    Schedule(String),

    #[error("drive frequency for {species} is {actual}, rotating frame needs {expected}")]
    FrameMismatch {
        species: crate::lattice::Species,
        expected: f64,
        actual: f64,
    },

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("axis has a z component ({0}); only xy-plane axes are supported here")]
    UnsupportedAxis(f64),

    #[error("unsupported pulse request: {0}")]
    Unsupported(String),

    #[error("well-formed encoding error: {0}")]
    Encoding(String),

    #[error("compilation error: {0}")]
    Compilation(String),

    #[error("backend error: {0}")]
    Backend(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pole in closed-form expression: {0}")]
    Pole(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
