use thiserror::Error;

use crate::origami::Origami;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid origami: {0}")]
    InvalidOrigami(String),

    #[error("invalid L-shape L({n},{m}): both sides need at least 2 squares")]
    InvalidShape { n: usize, m: usize },

    #[error("invalid direction ({p},{q})")]
    InvalidDirection { p: i64, q: i64 },

    #[error("orbit exceeds cap of {cap} origamis")]
    OrbitTooLarge { cap: usize, partial: Vec<Origami> },

    #[error("flow hit a cone point in square {square}")]
    ConePointHit { square: usize },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("homology basis unavailable: {0}")]
    BasisUnavailable(String),

    #[error("no basis directions found within cap {cap}")]
    NoBasisFound { cap: usize },

    #[error("non-integral solution: {0}")]
    Integrality(String),

    #[error("singular intersection matrix")]
    Rank,

    #[error("matrix is not unimodular (det = {det})")]
    Unimodularity { det: i64 },

    #[error("coset enumeration exceeded cap of {cap} cosets")]
    IndexExceedsCap { cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
