//! Sliding-window variability and low-variability period extraction.

use crate::error::{Error, Result};
use crate::surrogate::SurrogateParams;

/// Window width and threshold (in units of the signal's sigma).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariabilityParams {
    window: usize,
    delta_sigma: f64,
}

impl VariabilityParams {
    pub fn new(window: usize, delta_sigma: f64) -> Result<Self> {
        if window == 0 {
            return Err(Error::InvalidParameter("window must be at least 1".into()));
        }
        if !(delta_sigma.is_finite() && delta_sigma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "threshold must be a positive number of sigmas, got {delta_sigma}"
            )));
        }
        Ok(Self {
            window,
            delta_sigma,
        })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn delta_sigma(&self) -> f64 {
        self.delta_sigma
    }
}

impl Default for VariabilityParams {
    fn default() -> Self {
        Self {
            window: 1,
            delta_sigma: 2.0,
        }
    }
}

/// Which quantity sets the normalization scale sigma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SigmaSource {
    /// Sample standard deviation of the variability signal itself.
    #[default]
    Signal,
    /// Sample standard deviation of one-step log-returns, for every window.
    Returns,
}

/// `values[i]` is the variability at step `t = window + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariabilitySignal {
    values: Vec<f64>,
    sigma: f64,
    window: usize,
}

impl VariabilitySignal {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Normalization scale. Zero only for a series with no variability at all.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Where an interval set came from.
#[derive(Debug, Clone, PartialEq)]
pub enum IntervalSource {
    /// Runs below an absolute threshold on a variability signal.
    Empirical {
        window: usize,
        threshold: f64,
    },
    Surrogate(SurrogateParams),
    Manual,
}

/// Multiset of period lengths, in units of the window width.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet {
    lengths: Vec<u64>,
    source: IntervalSource,
}

impl IntervalSet {
    /// Lengths must all be at least 1.
    pub fn new(lengths: Vec<u64>, source: IntervalSource) -> Result<Self> {
        if lengths.contains(&0) {
            return Err(Error::InvalidParameter(
                "interval lengths must be at least 1".into(),
            ));
        }
        Ok(Self { lengths, source })
    }

    pub fn from_lengths(lengths: Vec<u64>) -> Result<Self> {
        Self::new(lengths, IntervalSource::Manual)
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn source(&self) -> &IntervalSource {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn longest(&self) -> Option<u64> {
        self.lengths.iter().copied().max()
    }
}

/// `Δ_w(t) = |x(t) - mean(x(t-w), ..., x(t-1))|` for `t` in `[w, T-1]`, with
/// sigma taken from the signal.
pub fn compute_variability(x: &[f64], window: usize) -> Result<VariabilitySignal> {
    compute_variability_with(x, window, SigmaSource::Signal)
}

pub fn compute_variability_with(
    x: &[f64],
    window: usize,
    sigma_source: SigmaSource,
) -> Result<VariabilitySignal> {
    if window == 0 {
        return Err(Error::InvalidParameter("window must be at least 1".into()));
    }
    if x.len() < window + 1 {
        return Err(Error::InsufficientData {
            needed: window + 1,
            got: x.len(),
        });
    }
    if let Some(i) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "log-price at index {i} is not finite"
        )));
    }

    // Summing differences rather than prices keeps the result independent of
    // the absolute price level.
    let scale = window as f64;
    let values: Vec<f64> = (window..x.len())
        .map(|t| {
            let s: f64 = x[t - window..t].iter().map(|&past| x[t] - past).sum();
            (s / scale).abs()
        })
        .collect();

    let sigma = match sigma_source {
        SigmaSource::Signal => sample_std(&values),
        SigmaSource::Returns => {
            let returns: Vec<f64> = x.windows(2).map(|p| p[1] - p[0]).collect();
            sample_std(&returns)
        }
    };

    Ok(VariabilitySignal {
        values,
        sigma,
        window,
    })
}

fn sample_std(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let ss: f64 = v.iter().map(|&a| (a - mean) * (a - mean)).sum();
    (ss / (n - 1.0)).sqrt()
}

/// Periods during which the signal stays strictly below `delta_sigma * sigma`.
pub fn extract_intervals(signal: &VariabilitySignal, delta_sigma: f64) -> Result<IntervalSet> {
    if !(delta_sigma.is_finite() && delta_sigma > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "threshold must be a positive number of sigmas, got {delta_sigma}"
        )));
    }
    if signal.sigma <= 0.0 {
        return Err(Error::DegenerateScale);
    }
    Ok(extract_intervals_absolute(
        &signal.values,
        delta_sigma * signal.sigma,
        signal.window,
    ))
}

/// Maximal runs of `values[t] < threshold`. A run of `s` steps becomes a
/// period of `floor(s / window)`; zero-length periods are dropped. Runs cut
/// off by either end of the signal are kept.
pub fn extract_intervals_absolute(values: &[f64], threshold: f64, window: usize) -> IntervalSet {
    let window = window.max(1);
    let lengths = run_lengths(values, threshold)
        .into_iter()
        .map(|s| (s / window) as u64)
        .filter(|&tau| tau > 0)
        .collect();
    IntervalSet {
        lengths,
        source: IntervalSource::Empirical { window, threshold },
    }
}

/// Raw step counts of the maximal sub-threshold runs, in order.
pub fn run_lengths(values: &[f64], threshold: f64) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut current = 0usize;
    for &v in values {
        if v < threshold {
            current += 1;
        } else if current > 0 {
            runs.push(current);
            current = 0;
        }
    }
    if current > 0 {
        runs.push(current);
    }
    runs
}
