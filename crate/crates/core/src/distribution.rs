//! Cumulative length distribution `R(n)`, its piecewise-linear smoothing and
//! log-log exponent fit.

use crate::error::{Error, Result};
use crate::variability::IntervalSet;

/// `count` periods have length `>= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Knot {
    pub n: u64,
    pub count: u64,
}

/// Step function `R(n)` stored at its change points.
///
/// Knots sit at `n = 1` and at every distinct period length, i.e. every `n`
/// with `R(n + 1) != R(n)`. Counts strictly decrease from the second knot on;
/// the first two knots share a count only when no period has length 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulativeDistribution {
    knots: Vec<Knot>,
}

impl CumulativeDistribution {
    pub fn from_lengths(lengths: &[u64]) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        if lengths.contains(&0) {
            return Err(Error::InvalidParameter(
                "interval lengths must be at least 1".into(),
            ));
        }
        let mut sorted = lengths.to_vec();
        sorted.sort_unstable();

        let total = sorted.len() as u64;
        let mut knots = Vec::new();
        if sorted[0] > 1 {
            knots.push(Knot { n: 1, count: total });
        }
        let mut i = 0;
        while i < sorted.len() {
            let n = sorted[i];
            knots.push(Knot {
                n,
                count: total - i as u64,
            });
            while i < sorted.len() && sorted[i] == n {
                i += 1;
            }
        }
        Ok(Self { knots })
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    /// `R(1)`, the number of periods.
    pub fn total(&self) -> u64 {
        self.knots[0].count
    }

    /// `N`, the longest period.
    pub fn longest(&self) -> u64 {
        self.knots[self.knots.len() - 1].n
    }

    /// Raw step value `R(n)`; `R(0)` is taken as `R(1)`.
    pub fn count_at(&self, n: u64) -> u64 {
        // first knot with knot.n >= n carries R(n)
        let idx = self.knots.partition_point(|k| k.n < n);
        self.knots.get(idx).map_or(0, |k| k.count)
    }

    /// Index `i` of the segment `[knots[i].n, knots[i+1].n)` containing `n`.
    /// Returns the last knot index when `n == N`.
    pub(crate) fn segment_index(&self, n: u64) -> usize {
        self.knots.partition_point(|k| k.n <= n) - 1
    }

    /// Smoothed `R~(n)` at real `n` in `[1, N]`, exact at knots.
    pub fn interpolate(&self, n: f64) -> Result<f64> {
        let longest = self.longest();
        if !(n >= 1.0 && n <= longest as f64) {
            return Err(Error::OutOfDomain { n, longest });
        }
        let idx = self.knots.partition_point(|k| (k.n as f64) <= n) - 1;
        let lo = self.knots[idx];
        if lo.n as f64 == n || idx + 1 == self.knots.len() {
            return Ok(lo.count as f64);
        }
        let hi = self.knots[idx + 1];
        let (a, b) = (lo.n as f64, hi.n as f64);
        Ok((lo.count as f64 * (b - n) + hi.count as f64 * (n - a)) / (b - a))
    }

    /// `R~(n)` at integer `n` as an exact fraction `(numerator, denominator)`.
    /// `R~(n) = 0` for `n > N`.
    pub(crate) fn interpolate_exact(&self, n: u64) -> (u128, u128) {
        if n == 0 || n > self.longest() {
            return (0, 1);
        }
        let idx = self.segment_index(n);
        let lo = self.knots[idx];
        if lo.n == n {
            return (lo.count as u128, 1);
        }
        let hi = self.knots[idx + 1];
        let num = lo.count as u128 * (hi.n - n) as u128 + hi.count as u128 * (n - lo.n) as u128;
        (num, (hi.n - lo.n) as u128)
    }
}

pub fn build_cumulative(intervals: &IntervalSet) -> Result<CumulativeDistribution> {
    CumulativeDistribution::from_lengths(intervals.lengths())
}

/// Two-point linear interpolation of `R` between adjacent knots.
pub fn interpolate(dist: &CumulativeDistribution, n: f64) -> Result<f64> {
    dist.interpolate(n)
}

/// `R(n) ≈ r0 * n^-alpha` fitted on the knots in a range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    pub alpha: f64,
    pub r0: f64,
    pub fit_range: (u64, u64),
    /// RMS residual of `ln R` in log-log space.
    pub residual: f64,
    pub knots_used: usize,
}

/// `ln R(n) ≈ log_prefactor - rate * n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialFit {
    pub rate: f64,
    pub log_prefactor: f64,
    pub fit_range: (u64, u64),
    pub residual: f64,
    pub knots_used: usize,
}

/// `[2, N/4]`.
pub fn default_fit_range(dist: &CumulativeDistribution) -> (u64, u64) {
    (2, dist.longest() / 4)
}

fn knots_in_range(
    dist: &CumulativeDistribution,
    n_min: u64,
    n_max: u64,
) -> Result<impl Iterator<Item = &Knot>> {
    if n_min >= n_max {
        return Err(Error::InvalidParameter(format!(
            "fit range [{n_min}, {n_max}] is empty"
        )));
    }
    let found = dist
        .knots()
        .iter()
        .filter(|k| (n_min..=n_max).contains(&k.n))
        .count();
    if found < 3 {
        return Err(Error::InsufficientKnots {
            n_min,
            n_max,
            found,
        });
    }
    Ok(dist
        .knots()
        .iter()
        .filter(move |k| (n_min..=n_max).contains(&k.n)))
}

/// Unweighted least squares of `ln R(n_i)` on `ln n_i` over the knots with
/// `n_min <= n_i <= n_max`.
pub fn fit_alpha(dist: &CumulativeDistribution, n_min: u64, n_max: u64) -> Result<ScalingFit> {
    let points: Vec<(f64, f64)> = knots_in_range(dist, n_min, n_max)?
        .map(|k| ((k.n as f64).ln(), (k.count as f64).ln()))
        .collect();
    let line = least_squares(&points);
    if line.slope >= 0.0 {
        return Err(Error::NonDecaying);
    }
    Ok(ScalingFit {
        alpha: -line.slope,
        r0: line.intercept.exp(),
        fit_range: (n_min, n_max),
        residual: line.rms,
        knots_used: points.len(),
    })
}

/// Same knots as [`fit_alpha`], regressing `ln R` on `n`.
pub fn fit_exponential(
    dist: &CumulativeDistribution,
    n_min: u64,
    n_max: u64,
) -> Result<ExponentialFit> {
    let points: Vec<(f64, f64)> = knots_in_range(dist, n_min, n_max)?
        .map(|k| (k.n as f64, (k.count as f64).ln()))
        .collect();
    let line = least_squares(&points);
    if line.slope >= 0.0 {
        return Err(Error::NonDecaying);
    }
    Ok(ExponentialFit {
        rate: -line.slope,
        log_prefactor: line.intercept,
        fit_range: (n_min, n_max),
        residual: line.rms,
        knots_used: points.len(),
    })
}

struct Line {
    slope: f64,
    intercept: f64,
    rms: f64,
}

fn least_squares(points: &[(f64, f64)]) -> Line {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(x, y) in points {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    Line {
        slope,
        intercept,
        rms: (ss / n).sqrt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dist(lengths: &[u64]) -> CumulativeDistribution {
        CumulativeDistribution::from_lengths(lengths).unwrap()
    }

    fn from_knots(knots: &[(u64, u64)]) -> CumulativeDistribution {
        CumulativeDistribution {
            knots: knots.iter().map(|&(n, count)| Knot { n, count }).collect(),
        }
    }

    fn brute_r(lengths: &[u64], n: u64) -> u64 {
        lengths.iter().filter(|&&t| t >= n).count() as u64
    }

    #[test]
    fn small_multiset() {
        let d = dist(&[1, 2, 2, 5]);
        assert_eq!(d.total(), 4);
        assert_eq!(d.longest(), 5);
        let got: Vec<_> = d.knots().iter().map(|k| (k.n, k.count)).collect();
        assert_eq!(got, vec![(1, 4), (2, 3), (5, 1)]);
        for (n, r) in [(1, 4), (2, 3), (3, 1), (5, 1), (6, 0)] {
            assert_eq!(d.count_at(n), r);
        }
    }

    #[test]
    fn single_interval() {
        let d = dist(&[7]);
        assert_eq!(d.longest(), 7);
        assert_eq!(d.total(), 1);
        assert!((1..=7).all(|n| d.count_at(n) == 1));
        assert_eq!(d.count_at(8), 0);
        assert_eq!(d.interpolate(4.0).unwrap(), 1.0);
    }

    #[test]
    fn empty_is_an_error() {
        let set = IntervalSet::from_lengths(vec![]).unwrap();
        assert!(matches!(
            build_cumulative(&set),
            Err(Error::EmptyDistribution)
        ));
    }

    #[test]
    fn interpolation_examples() {
        let d = from_knots(&[(1, 12), (2, 10), (5, 4)]);
        assert_eq!(d.interpolate(3.0).unwrap(), 8.0);
        assert_eq!(d.interpolate(2.0).unwrap(), 10.0);
        assert_eq!(d.interpolate(5.0).unwrap(), 4.0);

        let d = from_knots(&[(1, 6), (2, 3)]);
        assert_eq!(d.interpolate(1.5).unwrap(), 4.5);

        assert!(matches!(d.interpolate(0.5), Err(Error::OutOfDomain { .. })));
        assert!(d.interpolate(2.01).is_err());
        assert!(d.interpolate(f64::NAN).is_err());
    }

    #[test]
    fn exact_interpolation_agrees() {
        let d = from_knots(&[(1, 12), (2, 10), (5, 4)]);
        assert_eq!(d.interpolate_exact(3), (24, 3));
        assert_eq!(d.interpolate_exact(5), (4, 1));
        assert_eq!(d.interpolate_exact(6), (0, 1));
    }

    #[test]
    fn fit_on_doubling_pattern() {
        // R = 32, 16, ..., 1 at n = 1, 2, ..., 32
        let mut lengths = Vec::new();
        for (n, count) in [(1, 16), (2, 8), (4, 4), (8, 2), (16, 1), (32, 1)] {
            lengths.extend(std::iter::repeat_n(n, count));
        }
        let d = dist(&lengths);
        let fit = fit_alpha(&d, 1, 32).unwrap();
        assert!((fit.alpha - 1.0).abs() < 1e-12);
        assert!((fit.r0 - 32.0).abs() < 1e-9);
        assert!(fit.residual < 1e-12);
        assert_eq!(fit.knots_used, 6);
    }

    #[test]
    fn fit_on_two_decades() {
        let d = from_knots(&[(1, 100), (10, 10), (100, 1)]);
        let fit = fit_alpha(&d, 1, 100).unwrap();
        assert!((fit.alpha - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fit_needs_three_knots() {
        let d = from_knots(&[(1, 100), (10, 10), (100, 1)]);
        assert!(matches!(
            fit_alpha(&d, 2, 100),
            Err(Error::InsufficientKnots { found: 2, .. })
        ));
        assert!(fit_alpha(&d, 5, 5).is_err());
    }

    #[test]
    fn exponential_fit_recovers_rate() {
        // R = 2^(10 - n) for n = 1..=10
        let knots: Vec<_> = (1..=10).map(|n| (n, 1u64 << (10 - n))).collect();
        let d = from_knots(&knots);
        let fit = fit_exponential(&d, 1, 10).unwrap();
        assert!((fit.rate - 2f64.ln()).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    proptest! {
        #[test]
        fn matches_counting_oracle(lengths in prop::collection::vec(1u64..=20, 1..=50)) {
            let d = dist(&lengths);
            prop_assert_eq!(d.total(), lengths.len() as u64);
            prop_assert_eq!(d.longest(), *lengths.iter().max().unwrap());
            for n in 1..=22 {
                prop_assert_eq!(d.count_at(n), brute_r(&lengths, n));
            }
            let knots = d.knots();
            prop_assert_eq!(knots[0].n, 1);
            for pair in knots[1..].windows(2) {
                prop_assert!(pair[1].count < pair[0].count);
                prop_assert!(pair[1].n > pair[0].n);
            }
            // telescoping: sum of (R(n) - R(n+1)) over n = 1..=N is R(1)
            let sum: u64 = (1..=d.longest())
                .map(|n| d.count_at(n) - d.count_at(n + 1))
                .sum();
            prop_assert_eq!(sum, d.total());
        }

        #[test]
        fn smoothing_is_monotone_and_exact_at_knots(
            lengths in prop::collection::vec(1u64..=30, 1..=40),
        ) {
            let d = dist(&lengths);
            for k in d.knots() {
                prop_assert_eq!(d.interpolate(k.n as f64).unwrap(), k.count as f64);
            }
            let steps = 200;
            let span = (d.longest() - 1) as f64;
            let mut prev = f64::INFINITY;
            for i in 0..=steps {
                let n = 1.0 + span * i as f64 / steps as f64;
                let v = d.interpolate(n).unwrap();
                prop_assert!(v <= prev + 1e-9);
                prop_assert!(v >= d.count_at(d.longest()) as f64 - 1e-9);
                prev = v;
            }
        }

        #[test]
        fn smoothing_is_continuous(lengths in prop::collection::vec(1u64..=30, 1..=40)) {
            let d = dist(&lengths);
            let eps = 1e-7;
            for k in d.knots() {
                let n = k.n as f64;
                let here = d.interpolate(n).unwrap();
                if n - eps >= 1.0 {
                    prop_assert!((d.interpolate(n - eps).unwrap() - here).abs() < 1e-4);
                }
                if n + eps <= d.longest() as f64 {
                    prop_assert!((d.interpolate(n + eps).unwrap() - here).abs() < 1e-4);
                }
            }
        }

        #[test]
        fn collinear_knots_fit_exactly(base in 2u64..=6, ratio in 2u64..=6, levels in 3u32..=6) {
            // knots (base^k, ratio^(levels-k)) lie on a line of slope -ln(ratio)/ln(base)
            let mut lengths = Vec::new();
            for k in 0..=levels {
                let here = ratio.pow(levels - k);
                let next = if k == levels { 0 } else { ratio.pow(levels - k - 1) };
                lengths.extend(std::iter::repeat_n(base.pow(k), (here - next) as usize));
            }
            let d = dist(&lengths);
            let fit = fit_alpha(&d, 1, base.pow(levels)).unwrap();
            let alpha = (ratio as f64).ln() / (base as f64).ln();
            prop_assert!((fit.alpha - alpha).abs() < 1e-6);
            prop_assert!(fit.residual < 1e-9);
        }
    }
}
