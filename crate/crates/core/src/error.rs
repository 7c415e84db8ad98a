use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Unsupported root-system type, rank, or presentation.
    #[error("configuration error: {0}")]
    Config(String),

    /// Input outside the domain of an operation (not a root, not orthogonal, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation would exceed an explicit size limit.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The closure rule produced a set that is not mutually orthogonal.
    #[error("no admissible superset of {0}")]
    NoAdmissibleSuperset(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
