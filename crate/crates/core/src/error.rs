use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("rank must be positive, got {0}")]
    NonPositiveRank(i64),
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),
    #[error("cocharacter {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("cocharacter has length {got}, expected rank {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("elements belong to different root data")]
    MismatchedRootData,
    #[error("finite Weyl group exceeds the configured bound of {0} elements")]
    WeylGroupTooLarge(usize),
    #[error("element length {length} exceeds the configured bound {bound}")]
    LengthBoundExceeded { length: u64, bound: u64 },
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("exponent overflow in Laurent polynomial arithmetic")]
    ExponentOverflow,
    #[error("parse error: {0}")]
    Parse(String),
    /// An internal consistency check failed. These indicate a bug, never bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
