use thiserror::Error;

use crate::taxonomy::Domain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine reports. Channel numbers in messages are
/// 1-based, matching the period numbering.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value at t={t}, channel {channel}")]
    NonFiniteValue { t: i64, channel: usize },

    #[error("time axis gap: expected t={expected}, found t={found} (row {row})")]
    TimeAxisGap {
        row: usize,
        expected: i64,
        found: i64,
    },

    #[error("empty model: {periods} periods x {channels} channels")]
    EmptyModel { periods: usize, channels: usize },

    #[error("row {row} has {found} values, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("duplicate channel name `{0}`")]
    DuplicateChannel(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("masked binding produced no channels (mask is all zero)")]
    EmptySignal,

    #[error("mask cell ({row}, {column}) is {value}, expected 0 or 1")]
    NonBinaryMask {
        row: usize,
        column: usize,
        value: u8,
    },

    #[error("competency map is empty")]
    EmptyCompetencyMap,

    #[error("competency `{0}` has a negative or non-finite cost")]
    InvalidCost(String),

    #[error("unknown competency `{0}`")]
    UnknownCompetency(String),

    #[error("level `{level}` is not part of the {domain} domain")]
    UnknownTaxonomyLevel { domain: Domain, level: String },

    #[error("invalid taxonomy: {0}")]
    InvalidTaxonomy(String),

    #[error("insufficient history at t={t}: {available} lags available, {required} required")]
    InsufficientHistory {
        t: usize,
        available: usize,
        required: usize,
    },

    #[error("window has {rows} rows, at least 2 are required")]
    DegenerateWindow { rows: usize },

    #[error("window length k={0} is invalid, k must be at least 2")]
    InvalidWindow(usize),

    #[error("index {index} out of range for {len} channels")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("intervention `{name}` spans t={start}..={end}, outside 1..={periods}")]
    OutOfRange {
        name: String,
        start: usize,
        end: usize,
        periods: usize,
    },

    #[error("unknown channel `{0}`")]
    UnknownChannel(String),

    #[error("invalid intervention `{name}`: {reason}")]
    InvalidIntervention { name: String, reason: String },

    #[error("non-finite input: {0}")]
    NonFiniteInput(String),

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: u64, reason: String },

    #[error("line {line}, column {column}: malformed number `{text}`: {reason}")]
    MalformedNumber {
        line: u64,
        column: usize,
        text: String,
        reason: String,
    },

    #[error("line {line}: time index {t} does not increase")]
    NonMonotonicTime { line: u64, t: i64 },

    #[error("line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(format!(
            "line {}, column {}: {}",
            err.line(),
            err.column(),
            err
        ))
    }
}
