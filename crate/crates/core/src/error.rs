use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty score list")]
    EmptyScores,

    #[error("non-finite score at index {index}")]
    NonFiniteScore { index: usize },

    #[error("invalid rank {value} at index {index} (must lie in [1, {len}])")]
    InvalidRank {
        index: usize,
        value: f64,
        len: usize,
    },

    #[error("length mismatch: {left} != {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("at least {min} items required, got {got}")]
    TooFewItems { min: usize, got: usize },

    #[error("degenerate ranking: {0}")]
    DegenerateRanking(&'static str),

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid protocol parameters: {0}")]
    InvalidParams(String),

    #[error("votes do not match the plan: {0}")]
    VoteMismatch(String),

    #[error("invalid range [{lo}, {hi}] for {what}")]
    InvalidRange {
        what: &'static str,
        lo: f64,
        hi: f64,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("replicate with seed {seed} failed: {source}")]
    Replicate {
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
