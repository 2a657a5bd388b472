use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed user input, e.g. a generator that is not a bijection.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("capacity exceeded: {what} (cap {cap})")]
    Capacity { what: String, cap: usize },

    /// Mathematically invalid request (non-normal subgroup, bad family parameter, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("undefined for non-solvable input: {0}")]
    Undefined(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("missing dependency: {0}")]
    Dependency(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, cap: usize) -> Self {
        Error::Capacity { what: what.into(), cap }
    }
}
