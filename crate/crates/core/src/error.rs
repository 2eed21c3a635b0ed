use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("determinant deviates from one by {0:e}")]
    NotUnimodular(f64),
    #[error("matrix is not traceless (|tr| = {0:e})")]
    NotTraceless(f64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("no orbit type matches the invariants: {0}")]
    Classification(String),
    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),
    #[error("point outside the chart domain: {0}")]
    OffDomain(String),
    #[error("singular configuration: {0}")]
    Singular(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
