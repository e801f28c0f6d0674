use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("capacity exceeded: {n} qubits is over the dense cap of {cap}")]
    CapacityExceeded { n: usize, cap: usize },

    #[error("operator is not Hermitian: {0}")]
    NotHermitian(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("format error: {0}")]
    Format(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("model error: {0}")]
    Model(String),

    #[error("sector leak: {0}")]
    SectorLeak(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("optimization aborted: {0}")]
    Optimization(String),

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("degeneracy resolution failed: {0}")]
    DegeneracyResolution(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
