//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid puzzle: {0}")]
    InvalidPuzzle(String),

    #[error("position {position} out of range for {n} logicians")]
    PositionOutOfRange { position: usize, n: usize },

    #[error("{count} assignments exceed the enumeration cap of {cap}; use sampled verification")]
    EnumerationCapExceeded { count: u128, cap: u64 },

    #[error("strategy `{id}` does not apply here: {reason}")]
    UnsupportedStrategy { id: String, reason: String },

    #[error("strategy bug: {0}")]
    StrategyBug(String),

    #[error("illegal assignment: {0}")]
    IllegalAssignment(String),

    #[error("actual world is not in the current world set")]
    InconsistentHistory,

    #[error("announcement is inconsistent with the current world set")]
    InconsistentAnnouncement,

    #[error("no world is consistent with the observed transcript")]
    InconsistentTranscript,

    #[error("instance exceeds the synthesis search limits: {0}")]
    SearchLimitExceeded(String),

    #[error("reports cannot be merged: {0}")]
    MergeMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}
