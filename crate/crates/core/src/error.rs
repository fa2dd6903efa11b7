use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("cap `{cap}` exceeded: needed {needed}, limit {limit}")]
    CapExceeded {
        cap: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("weight {0} is not dominant integral")]
    NotDominant(String),

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("input is not Weyl-invariant")]
    NotWeylInvariant,

    #[error("decomposition did not terminate")]
    NonTerminating,

    #[error("q-exponent {0} is not a non-negative integer")]
    BadExponent(String),

    #[error("identity check failed: {0}")]
    IdentityFailed(String),

    #[error("result left the degree-2 subspace: {0}")]
    GriessReadback(String),

    #[error("span deficiency at level {level}: generated {generated}, invariant {invariant}")]
    SpanDeficiency {
        level: usize,
        generated: usize,
        invariant: usize,
    },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}
