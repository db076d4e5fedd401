#![allow(dead_code)]

use proptest::prelude::*;
use timely_core::{Bound, Rational, Schedule, TimeModel, TimelySpec};

pub const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// Ordered distinct pairs of `0..n` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

pub fn spec_from(n: usize, bounds: &[Option<i64>]) -> TimelySpec {
    TimelySpec::from_entries(
        TimeModel::Discrete,
        NAMES[..n].iter().copied(),
        pairs(n)
            .into_iter()
            .zip(bounds)
            .filter_map(|((i, j), b)| b.map(|v| (i, j, Bound::from(v)))),
    )
    .unwrap()
}

/// Discrete specs over `n` actions, each pair bounded in `lo..=hi` with
/// probability `density`.
pub fn specs(n: std::ops::RangeInclusive<usize>, lo: i64, hi: i64, density: f64) -> impl Strategy<Value = TimelySpec> {
    n.prop_flat_map(move |n| {
        prop::collection::vec(prop::option::weighted(density, lo..=hi), n * (n - 1))
            .prop_map(move |bounds| spec_from(n, &bounds))
    })
}

/// Two specs over the same `n` actions.
pub fn spec_pairs(n: std::ops::RangeInclusive<usize>, lo: i64, hi: i64) -> impl Strategy<Value = (TimelySpec, TimelySpec)> {
    n.prop_flat_map(move |n| {
        let one = prop::collection::vec(prop::option::weighted(0.5, lo..=hi), n * (n - 1));
        (one.clone(), one).prop_map(move |(x, y)| (spec_from(n, &x), spec_from(n, &y)))
    })
}

pub fn schedule(spec: &TimelySpec, times: &[i64]) -> Schedule {
    Schedule::new(spec, times.iter().map(|&t| Rational::from_i64(t)).collect()).unwrap()
}

pub fn int(v: i64) -> Rational {
    Rational::from_i64(v)
}

pub fn s1() -> TimelySpec {
    spec_from(3, &[Some(5), None, Some(-3), Some(2), Some(0), None])
}
