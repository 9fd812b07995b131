use thiserror::Error;

use crate::scalar::ScalarParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live in different fields")]
    MixedFields,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("leg {leg} out of range for a tensor of degree {degree}")]
    LegOutOfRange { leg: usize, degree: usize },

    #[error("antipode is singular")]
    SingularAntipode,

    #[error("invalid gauge transformation: {0}")]
    InvalidGauge(String),

    #[error("cannot normalize alpha/beta: eps(alpha)*eps(beta) = {0}, expected 1")]
    Normalization(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A result that a theorem guarantees failed to hold. Either the input is
    /// not what it claims to be or an axiom check let something through.
    #[error("theorem contradiction: {0}")]
    TheoremContradiction(String),

    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },

    #[error("coefficient error in `{field}`: {source}")]
    Coefficient {
        field: String,
        #[source]
        source: ScalarParseError,
    },

    #[error("index out of range in `{field}`: {index} >= {bound}")]
    IndexOutOfRange {
        field: String,
        index: usize,
        bound: usize,
    },

    #[error("unknown fixture kind `{0}`")]
    UnknownKind(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
