//! Statistics of low-variability periods in price series.
//!
//! A low-variability period is a maximal run of consecutive steps during which
//! the variability of the log-price stays strictly below a threshold. This
//! crate extracts those periods, builds their cumulative length distribution
//! `R(n)`, fits its power-law exponent and estimates the probability
//! `p(n) = [R(n) - R(n+1)] / R(n)` that a quiet period of length `n` ends at
//! the next step. For power-law distributed lengths `p(n) * n` approaches the
//! exponent, independent of threshold and window.
//!
//! The pipeline is:
//!
//! ```text
//! ingest -> variability -> distribution -> silence
//!                 surrogate ---^
//! ```

pub mod cli;
pub mod distribution;
pub mod error;
pub mod ingest;
pub mod output;
pub mod silence;
pub mod surrogate;
pub mod variability;

pub use distribution::{
    build_cumulative, fit_alpha, fit_exponential, interpolate, CumulativeDistribution,
    ExponentialFit, Knot, ScalingFit,
};
pub use error::{Error, Result};
pub use ingest::{load_price_csv, to_log_prices, ColumnConfig, PricePoint, PriceSeries};
pub use silence::{
    plateau_estimate, silence_curve, silence_probability, PowerLawSurvival, SilenceCurve,
    SilenceSample, Survival,
};
pub use surrogate::{generate_gaussian_control, generate_power_law_intervals, SurrogateParams};
pub use variability::{
    compute_variability, extract_intervals, extract_intervals_absolute, IntervalSet,
    IntervalSource, SigmaSource, VariabilityParams, VariabilitySignal,
};
