//! Synthetic data with known statistics.
//!
//! Power-law surrogates are interval sets only; no price path is built. The
//! Gaussian control is a full price series with i.i.d. standard-normal
//! log-returns, whose quiet periods decay exponentially rather than as a power
//! law.

use chrono::{Datelike, Days, NaiveDate, Weekday};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::ingest::{PricePoint, PriceSeries};
use crate::variability::{IntervalSet, IntervalSource};

/// Recorded in output metadata so results can be reproduced elsewhere.
pub const GENERATOR: &str = "rand_chacha::ChaCha8Rng 0.9 (SeedableRng::seed_from_u64)";

pub const MIN_CONTROL_LENGTH: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurrogateParams {
    count: u64,
    alpha: f64,
    seed: u64,
}

impl SurrogateParams {
    pub fn new(count: u64, alpha: f64, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParameter(
                "surrogate count must be at least 1".into(),
            ));
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "surrogate exponent must be positive, got {alpha}"
            )));
        }
        Ok(Self { count, alpha, seed })
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// `floor(u^(-1/alpha))` for `u` in `(0, 1]`, so that `P(tau >= n) = n^-alpha`
/// at every integer `n >= 1`. Saturates at `u64::MAX`.
pub fn power_law_length(u: f64, alpha: f64) -> u64 {
    // float-to-int casts saturate
    u.powf(-1.0 / alpha).floor() as u64
}

/// `count` independent power-law lengths from a seeded ChaCha8 stream.
pub fn generate_power_law_intervals(params: &SurrogateParams) -> IntervalSet {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let lengths = (0..params.count)
        .map(|_| {
            // [0, 1) -> (0, 1]
            let u = 1.0 - rng.random::<f64>();
            power_law_length(u, params.alpha)
        })
        .collect();
    IntervalSet::new(lengths, IntervalSource::Surrogate(*params))
        .expect("power-law lengths are at least 1")
}

/// Series of `length` points starting at log-price 0 with standard-normal
/// log-returns, dated on consecutive weekdays from 2000-01-03.
pub fn generate_gaussian_control(length: usize, seed: u64) -> Result<PriceSeries> {
    if length < MIN_CONTROL_LENGTH {
        return Err(Error::InvalidParameter(format!(
            "control series needs at least {MIN_CONTROL_LENGTH} points, got {length}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dates = trading_days(NaiveDate::from_ymd_opt(2000, 1, 3).unwrap(), length);
    let mut level = 0.0f64;
    let mut points = Vec::with_capacity(length);
    for (i, date) in dates.into_iter().enumerate() {
        if i > 0 {
            level += rng.sample::<f64, _>(StandardNormal);
        }
        points.push(PricePoint::from_log_close(date, level).expect("finite log-price"));
    }
    PriceSeries::new(format!("gaussian-{seed}"), points)
}

/// `count` consecutive Monday-to-Friday dates starting at `start` (or the
/// next weekday after it).
pub fn trading_days(start: NaiveDate, count: usize) -> Vec<NaiveDate> {
    let mut out = Vec::with_capacity(count);
    let mut day = start;
    while out.len() < count {
        if !matches!(day.weekday(), Weekday::Sat | Weekday::Sun) {
            out.push(day);
        }
        day = day + Days::new(1);
    }
    out
}
