use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |A - A^dagger| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary: max |U^dagger U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("trace deviates from 1 by {deviation:e}")]
    NotUnitTrace { deviation: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("Kraus operators are not trace preserving: max |sum K^dagger K - I| = {deviation:e}")]
    NotTracePreserving { deviation: f64 },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix of size {rows}x{cols} exceeds the {cap}x{cap} cap")]
    Overflow { rows: usize, cols: usize, cap: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("expected {expected} phases, got {got}")]
    BadPhaseCount { expected: usize, got: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("unknown preset: {0}")]
    UnknownPreset(String),

    #[error("not a probability distribution: {0}")]
    NotDistribution(String),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("unsupported operation: {0}")]
    UnsupportedOperation(String),

    #[error("state is not bipartite: {0}")]
    NotBipartite(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),

    #[error("bad range: {0}")]
    BadRange(String),

    #[error("parse error: {0}")]
    Parse(String),
}
