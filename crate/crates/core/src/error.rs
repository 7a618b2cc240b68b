//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-contract input: bad identifiers, offsets out of
    /// range, negative radii, empty sets and the like.
    #[error("invalid input: {0}")]
    Input(String),

    #[error("objects belong to different spaces")]
    Mismatch,

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// A hypothesis required by a check does not hold on the supplied data
    /// (e.g. a quotient sample centred at a point without the shooting property).
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
