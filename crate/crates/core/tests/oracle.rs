mod common;

use common::*;
use silence_core::{silence_probability, CumulativeDistribution};

#[test]
fn thousand_random_sets_match_exactly() {
    for lengths in oracle_batch(7, 1000) {
        if let Err(msg) = check_against_oracle(&lengths) {
            panic!("{msg}");
        }
    }
}

#[test]
fn oracle_reproduces_hand_values() {
    let l = [1, 2, 2, 5];
    assert_eq!(smoothed(&l, 3), Q::new(7, 3));
    assert_eq!(breaking(&l, 2), Q::new(2, 9));
    assert_eq!(breaking(&l, 5), Q::from_integer(1));
}

#[test]
fn long_tail_sets_match_exactly() {
    // wide gaps between knots exercise long interpolated segments
    let sets: [&[u64]; 3] = [&[1, 1000], &[3, 3, 3, 700, 701], &[2, 50, 51, 52, 999]];
    for l in sets {
        check_against_oracle(l).unwrap();
    }
}

#[test]
fn breaking_probability_at_longest_is_one() {
    for lengths in oracle_batch(11, 200) {
        let d = CumulativeDistribution::from_lengths(&lengths).unwrap();
        assert_eq!(silence_probability(&d, d.longest()).unwrap(), 1.0);
    }
}
