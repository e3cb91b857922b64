use thiserror::Error;

/// Which axiom of an inversion set was violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `(i,j)` and `(j,k)` present but `(i,k)` missing.
    Transitivity,
    /// `(i,k)` present but neither `(i,j)` nor `(j,k)`.
    Interpolation,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axiom::Transitivity => f.write_str("transitivity"),
            Axiom::Interpolation => f.write_str("interpolation"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid inversion set: {axiom} axiom fails at ({i},{j},{k})")]
    InvalidInversionSet {
        axiom: Axiom,
        i: usize,
        j: usize,
        k: usize,
    },

    #[error("{0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{op} is capped at n <= {cap}, got n = {n}")]
    Scale { op: &'static str, n: usize, cap: usize },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// A proved statement failed on a concrete instance.
    #[error("falsification: {0}")]
    Falsified(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
