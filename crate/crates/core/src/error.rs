use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("distance must be non-negative and finite, got {0} m")]
    InvalidDistance(f64),

    #[error("line-of-sight path has zero length (d = 0 with equal antenna heights)")]
    Singularity,

    #[error("antenna height must be positive and finite, got {0} m")]
    InvalidHeight(f64),

    #[error("frequency must be positive and finite, got {0}")]
    InvalidFrequency(f64),

    #[error("a frequency pair needs two distinct frequencies, got {0} Hz twice")]
    EqualFrequencies(f64),

    #[error("transmit power must be positive and finite, got {0} W")]
    InvalidPower(f64),

    #[error("speed of light must be positive and finite, got {0} m/s")]
    InvalidSpeedOfLight(f64),

    #[error("invalid distance interval [{d_min}, {d_max}] m (need 0 < d_min <= d_max)")]
    InvalidInterval { d_min: f64, d_max: f64 },

    #[error("frequency {0} Hz appears more than once")]
    DuplicateFrequency(f64),

    #[error("{what} index {index} out of range (size {size})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },

    #[error("assignment is infeasible: {0}")]
    Infeasible(String),

    #[error("item {0} has zero weight; value density is undefined")]
    ZeroWeight(usize),

    #[error("instance too large for exhaustive enumeration ({0} candidate allocations)")]
    TooLarge(f64),

    #[error("malformed instance: {0}")]
    MalformedInstance(String),

    #[error("scheme requires unit item weights and capacity 2 per knapsack")]
    NotFrequencyInstance,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}
