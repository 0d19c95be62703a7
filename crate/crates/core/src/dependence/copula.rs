//! Empirical copula transform and the median heuristic.

use super::{median_in_place, Sample};
use alloc::vec;
use alloc::vec::Vec;

/// Floor applied when massive ties push the median pairwise distance to
/// zero; the Gaussian projection scale must stay positive.
pub const MEDIAN_DISTANCE_FLOOR: f64 = 1e-6;

/// Empirical copula transform: each value is replaced by its average rank
/// divided by n, giving values in (0, 1] with uniform marginals.
///
/// The output depends on the values only through their ordering, so any
/// strictly increasing transformation of the input produces bit-identical
/// output.
pub fn copula_transform(x: &Sample) -> Sample {
    Sample {
        values: average_ranks_over_n(x.values()),
    }
}

/// Average ranks (ties share the mean of their rank range) divided by n.
pub(crate) fn average_ranks_over_n(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| values[a].total_cmp(&values[b]));

    let nf = n as f64;
    let mut out = vec![0.0; n];
    let mut pos = 0;
    while pos < n {
        let mut end = pos + 1;
        while end < n && values[order[end]] == values[order[pos]] {
            end += 1;
        }
        // Positions pos..end hold ranks pos+1..=end; ties get the average.
        let rank = (pos + 1 + end) as f64 * 0.5;
        for &idx in &order[pos..end] {
            out[idx] = rank / nf;
        }
        pos = end;
    }
    out
}

/// Median of the n(n-1)/2 pairwise squared Euclidean distances of a
/// one-dimensional sample, floored at [`MEDIAN_DISTANCE_FLOOR`].
pub fn median_heuristic(u: &Sample) -> f64 {
    median_sq_dist(u.values())
}

pub(crate) fn median_sq_dist(values: &[f64]) -> f64 {
    let n = values.len();
    debug_assert!(n >= 2);
    let mut dists = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        let vi = values[i];
        for &vj in &values[i + 1..] {
            let d = vi - vj;
            dists.push(d * d);
        }
    }
    median_in_place(&mut dists).max(MEDIAN_DISTANCE_FLOOR)
}
