use thiserror::Error;

use crate::rational::ParseRationalError;

#[derive(Debug, Error)]
pub enum AuctionError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Marginal payment increase between two slots with equal click-through rates.
    #[error("degenerate slot pair ({k}, {k_prime}): equal click-through rates")]
    DegeneratePair { k: usize, k_prime: usize },

    /// Internal misuse of the incremental pricing state.
    #[error("protocol error: {0}")]
    Protocol(String),

    #[error("instance requires pairwise distinct bidder values")]
    NotStrict,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generation error: {0}")]
    Generation(String),

    #[error(transparent)]
    Rational(#[from] ParseRationalError),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = AuctionError> = std::result::Result<T, E>;
