use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),

    #[error("column `{0}` not found in header")]
    MissingColumn(String),

    #[error("row {row}: {reason}")]
    InvalidRow { row: usize, reason: String },

    #[error("series has {len} observation(s), at least 2 are required")]
    SeriesTooShort { len: usize },

    #[error("insufficient data: need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("variability signal has zero spread, thresholds in sigma units are undefined")]
    DegenerateScale,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no low-variability periods at this threshold")]
    EmptyDistribution,

    #[error("n = {n} is outside the domain [1, {longest}]")]
    OutOfDomain { n: f64, longest: u64 },

    #[error("fit range [{n_min}, {n_max}] contains {found} knot(s), at least 3 are required")]
    InsufficientKnots {
        n_min: u64,
        n_max: u64,
        found: usize,
    },

    #[error("fitted slope is non-negative, no decaying power law in range")]
    NonDecaying,

    #[error("cutoff {cutoff} leaves no samples (longest period N = {longest})")]
    EmptyCutoff { cutoff: u64, longest: u64 },

    #[error("{found} sample(s) with n >= {lower}, at least {needed} are required")]
    InsufficientSamples {
        lower: u64,
        found: usize,
        needed: usize,
    },
}

impl Error {
    /// Whether the failure comes from bad input or parameters, as opposed to
    /// an analysis that ran on valid input and came up empty.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Io { .. }
                | Error::Csv(_)
                | Error::MissingColumn(_)
                | Error::InvalidRow { .. }
                | Error::SeriesTooShort { .. }
                | Error::InvalidParameter(_)
        )
    }
}
