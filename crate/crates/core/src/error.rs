use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("{what} is not normalized (squared norm {norm_sqr})")]
    NotNormalized { what: &'static str, norm_sqr: f64 },

    #[error("deletion amplitude p must be nonzero (|p|² + |q|² = 1 with p ≠ 0)")]
    ZeroDeletionAmplitude,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown factor `{0}`")]
    UnknownFactor(String),

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("not a density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("expectation value has imaginary residue {0:e}")]
    NonRealExpectation(f64),

    #[error("domain error: {0}")]
    Domain(String),
}
