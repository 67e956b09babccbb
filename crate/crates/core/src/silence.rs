//! Silence-breaking probability `p(n) = [R~(n) - R~(n+1)] / R~(n)`: the chance
//! that a quiet period which has lasted `n` units ends at the next unit.
//!
//! For `R(n) ∝ n^-alpha` and large `n`, `p(n) * n` settles on `alpha`. Curves
//! are evaluated on the smoothed distribution so that sparse tails do not
//! produce isolated spikes.

use crate::distribution::CumulativeDistribution;
use crate::error::{Error, Result};

/// Up to this cutoff every integer `n` is sampled.
pub const DENSE_LIMIT: u64 = 1_000_000;

/// Above [`DENSE_LIMIT`] consecutive samples differ by `n / GEOMETRIC_STEP`
/// (about 1000 samples per decade).
pub const GEOMETRIC_STEP: u64 = 434;

pub const DEFAULT_CUTOFF_FRACTION: f64 = 0.25;

pub const DEFAULT_PLATEAU_LOWER: u64 = 20;

const MIN_PLATEAU_SAMPLES: usize = 5;

/// A survival count `R(n)`: the number of periods lasting at least `n`.
pub trait Survival {
    fn survivors(&self, n: u64) -> f64;

    /// `[R(n) - R(n+1)] / R(n)`.
    fn breaking_probability(&self, n: u64) -> Result<f64> {
        let here = self.survivors(n);
        if n == 0 || here <= 0.0 {
            return Err(Error::OutOfDomain {
                n: n as f64,
                longest: 0,
            });
        }
        Ok((here - self.survivors(n + 1)) / here)
    }
}

/// Exact analytic `R(n) = r0 * n^-alpha`, unbounded in `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawSurvival {
    pub r0: f64,
    pub alpha: f64,
}

impl Survival for PowerLawSurvival {
    fn survivors(&self, n: u64) -> f64 {
        self.r0 * (n as f64).powf(-self.alpha)
    }
}

impl Survival for CumulativeDistribution {
    /// Smoothed `R~(n)`, zero past the longest period.
    fn survivors(&self, n: u64) -> f64 {
        let (num, den) = self.interpolate_exact(n);
        num as f64 / den as f64
    }

    fn breaking_probability(&self, n: u64) -> Result<f64> {
        silence_probability(self, n)
    }
}

/// `p(n)` on the smoothed distribution for integer `n` in `[1, N]`, with
/// `R~(N + 1) = 0` so that `p(N) = 1`.
pub fn silence_probability(dist: &CumulativeDistribution, n: u64) -> Result<f64> {
    let longest = dist.longest();
    if n == 0 || n > longest {
        return Err(Error::OutOfDomain {
            n: n as f64,
            longest,
        });
    }
    if n == longest {
        return Ok(1.0);
    }
    // n and n + 1 share the segment [a, b], where R~ drops by (R_a - R_b)/(b - a)
    // per unit; the (b - a) cancels against R~(n)'s denominator.
    let knots = dist.knots();
    let idx = dist.segment_index(n);
    let (lo, hi) = (knots[idx], knots[idx + 1]);
    let drop = (lo.count - hi.count) as u128;
    let level = lo.count as u128 * (hi.n - n) as u128 + hi.count as u128 * (n - lo.n) as u128;
    Ok(drop as f64 / level as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SilenceSample {
    pub n: u64,
    pub p: f64,
    pub pn: f64,
    /// `R~(n)`, the number of periods backing the estimate.
    pub survivors: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SilenceCurve {
    samples: Vec<SilenceSample>,
    cutoff: u64,
    longest: u64,
    alpha_ref: Option<f64>,
}

impl SilenceCurve {
    pub fn samples(&self) -> &[SilenceSample] {
        &self.samples
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn longest(&self) -> u64 {
        self.longest
    }

    pub fn alpha_ref(&self) -> Option<f64> {
        self.alpha_ref
    }

    pub fn with_reference(mut self, alpha: f64) -> Self {
        self.alpha_ref = Some(alpha);
        self
    }

    /// True when every integer in `[1, cutoff]` was sampled.
    pub fn is_dense(&self) -> bool {
        self.samples.len() as u64 == self.cutoff
    }
}

/// Integer sample points in `[1, cutoff]`: all of them up to [`DENSE_LIMIT`],
/// otherwise a geometric progression that still visits every small `n`.
pub fn sample_points(cutoff: u64) -> Vec<u64> {
    if cutoff <= DENSE_LIMIT {
        return (1..=cutoff).collect();
    }
    let mut points = Vec::new();
    let mut n = 1u64;
    while n < cutoff {
        points.push(n);
        n = n.saturating_add((n / GEOMETRIC_STEP).max(1));
    }
    points.push(cutoff);
    points
}

/// `p(n)` and `p(n) * n` for `n` in `[1, floor(cutoff_fraction * N)]`.
pub fn silence_curve(dist: &CumulativeDistribution, cutoff_fraction: f64) -> Result<SilenceCurve> {
    if !(cutoff_fraction > 0.0 && cutoff_fraction <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "cutoff fraction must lie in (0, 1], got {cutoff_fraction}"
        )));
    }
    let longest = dist.longest();
    let cutoff = (cutoff_fraction * longest as f64).floor() as u64;
    if cutoff == 0 {
        return Err(Error::EmptyCutoff { cutoff, longest });
    }
    let samples = sample_points(cutoff)
        .into_iter()
        .map(|n| {
            let p = silence_probability(dist, n)?;
            Ok(SilenceSample {
                n,
                p,
                pn: p * n as f64,
                survivors: dist.survivors(n),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SilenceCurve {
        samples,
        cutoff,
        longest,
        alpha_ref: None,
    })
}

/// Plateau level of `p(n) * n` over samples with `n >= lower`.
///
/// Samples are averaged with inverse-variance weights. `p(n)` rests on about
/// `R~(n)` periods, so `Var[p(n) * n] ≈ n * alpha / R~(n)`; each sample gets
/// weight `R~(n) / n` times the span of integers it stands for (1 on a dense
/// curve). The sparse tail near the cutoff, where only a handful of periods
/// remain, therefore cannot swamp the estimate.
pub fn plateau_estimate(curve: &SilenceCurve, lower: u64) -> Result<f64> {
    let start = curve.samples.partition_point(|s| s.n < lower);
    let selected = &curve.samples[start..];
    if selected.len() < MIN_PLATEAU_SAMPLES {
        return Err(Error::InsufficientSamples {
            lower,
            found: selected.len(),
            needed: MIN_PLATEAU_SAMPLES,
        });
    }

    let edge = |i: usize| -> f64 {
        if i == 0 {
            selected[0].n as f64 - 0.5
        } else if i == selected.len() {
            selected[i - 1].n as f64 + 0.5
        } else {
            0.5 * (selected[i - 1].n as f64 + selected[i].n as f64)
        }
    };

    // centered on the first value so a constant curve comes back unchanged
    let base = selected[0].pn;
    let (mut sum_w, mut sum_wd) = (0.0, 0.0);
    for (i, s) in selected.iter().enumerate() {
        let w = (edge(i + 1) - edge(i)) * s.survivors / s.n as f64;
        sum_w += w;
        sum_wd += w * (s.pn - base);
    }
    Ok(base + sum_wd / sum_w)
}
