//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use silence_core::{silence_probability, CumulativeDistribution};

pub type Q = Ratio<i64>;

/// `R(n)` by counting every period of length at least `n`.
pub fn count_at_least(lengths: &[u64], n: u64) -> i64 {
    lengths.iter().filter(|&&t| t >= n).count() as i64
}

/// Change points of `R`: `n = 1` plus every distinct length, ascending.
pub fn knot_positions(lengths: &[u64]) -> Vec<u64> {
    let mut pos: Vec<u64> = lengths.to_vec();
    pos.push(1);
    pos.sort_unstable();
    pos.dedup();
    pos
}

/// Smoothed `R~(n)` as an exact rational, zero past the longest period.
pub fn smoothed(lengths: &[u64], n: u64) -> Q {
    let pos = knot_positions(lengths);
    let longest = *pos.last().unwrap();
    if n > longest {
        return Q::from_integer(0);
    }
    if pos.contains(&n) {
        return Q::from_integer(count_at_least(lengths, n));
    }
    let a = *pos.iter().rev().find(|&&k| k < n).unwrap();
    let b = *pos.iter().find(|&&k| k > n).unwrap();
    let (ra, rb) = (count_at_least(lengths, a), count_at_least(lengths, b));
    let (a, b, n) = (a as i64, b as i64, n as i64);
    Q::from_integer(ra) + Q::new((rb - ra) * (n - a), b - a)
}

pub fn breaking(lengths: &[u64], n: u64) -> Q {
    let here = smoothed(lengths, n);
    (here - smoothed(lengths, n + 1)) / here
}

/// Correctly rounded `f64` of a reduced ratio with small parts.
pub fn to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

pub fn random_lengths(rng: &mut ChaCha8Rng, max_count: usize, max_len: u64) -> Vec<u64> {
    let count = rng.random_range(1..=max_count);
    (0..count).map(|_| rng.random_range(1..=max_len)).collect()
}

/// Compares the library against the reference on one multiset, returning a
/// description of the first disagreement.
pub fn check_against_oracle(lengths: &[u64]) -> Result<(), String> {
    let dist = CumulativeDistribution::from_lengths(lengths).map_err(|e| e.to_string())?;
    let longest = *lengths.iter().max().unwrap();
    if dist.longest() != longest {
        return Err(format!("longest {} != {longest}", dist.longest()));
    }
    let pos = knot_positions(lengths);
    let got: Vec<(u64, i64)> = dist.knots().iter().map(|k| (k.n, k.count as i64)).collect();
    let want: Vec<(u64, i64)> = pos
        .iter()
        .map(|&n| (n, count_at_least(lengths, n)))
        .collect();
    if got != want {
        return Err(format!("knots {got:?} != {want:?} for {lengths:?}"));
    }
    for n in 1..=longest {
        let r = dist.count_at(n) as i64;
        if r != count_at_least(lengths, n) {
            return Err(format!("R({n}) = {r} for {lengths:?}"));
        }
        let s = dist.interpolate(n as f64).map_err(|e| e.to_string())?;
        let want = to_f64(smoothed(lengths, n));
        if s != want {
            return Err(format!("R~({n}) = {s}, expected {want} for {lengths:?}"));
        }
        let p = silence_probability(&dist, n).map_err(|e| e.to_string())?;
        let want = to_f64(breaking(lengths, n));
        if p != want {
            return Err(format!("p({n}) = {p}, expected {want} for {lengths:?}"));
        }
    }
    Ok(())
}

/// Seeded batch of random multisets (at most 50 periods, lengths at most 20).
pub fn oracle_batch(seed: u64, sets: usize) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..sets)
        .map(|_| random_lengths(&mut rng, 50, 20))
        .collect()
}
