use std::path::PathBuf;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("patient count must be at least 1")]
    ZeroPatients,

    #[error("group count must be at least 1")]
    ZeroGroups,

    #[error("group count {groups} does not divide patient count {patients}")]
    NonDivisible { patients: usize, groups: usize },

    #[error("survivor count must be at least 1")]
    ZeroSurvivors,

    #[error("no survivors left to draw from")]
    EmptySurvivors,

    #[error("replay value {value} is outside [0, 1)")]
    ReplayValueOutOfRange { value: f64 },

    #[error("replay source exhausted after {provided} recorded draws")]
    ReplayExhausted { provided: usize },

    #[error("assignment list has {len} of {expected} entries")]
    IncompleteList { len: usize, expected: usize },

    #[error("first row must be a permutation of 1..={order}")]
    NotAPermutation { order: usize },

    #[error(
        "expected count per cell would be {expected:.2}; at least {floor} is required \
         (raise --trials)"
    )]
    ExpectedCountTooLow { expected: f64, floor: f64 },

    #[error("exhaustive permutation test supports at most {max} patients, got {patients}")]
    PermutationSpaceTooLarge { patients: usize, max: usize },

    #[error("significance must lie strictly between 0 and 1, got {value}")]
    InvalidSignificance { value: f64 },

    #[error("invalid timestamp {value:?}: expected RFC 3339, e.g. 2026-01-01T00:00:00Z")]
    InvalidTimestamp { value: String },

    #[error("cannot parse {value:?} as a uniform draw")]
    InvalidReplayLiteral { value: String },

    #[error("sealed export requires the phase schedule; bundle has none")]
    MissingPhases,

    #[error("refusing to write into existing non-empty directory {}", path.display())]
    DirectoryNotEmpty { path: PathBuf },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid bundle document: {0}")]
    BundleParse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Attach path context to an I/O error.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
