use thiserror::Error;

/// Errors raised by the geometry, action and iteration layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("negative radius {0}")]
    NegativeRadius(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("empty set: {0}")]
    EmptySet(&'static str),

    #[error("malformed group table: {0}")]
    MalformedTable(String),

    #[error("invalid mapping: {0}")]
    InvalidMapping(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("{name} = {value} is out of range ({range})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("word enumeration exceeded the cap of {cap} word evaluations")]
    WordCapExceeded { cap: usize },

    #[error("mapping is not an involution: max deviation {deviation:e}")]
    NotAnInvolution { deviation: f64 },

    #[error("center set is empty at step {step}")]
    EmptyCenter { step: usize },

    #[error("no convergence after {max_iter} iterations (delta = {delta:e})")]
    MaxIter { max_iter: usize, delta: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
