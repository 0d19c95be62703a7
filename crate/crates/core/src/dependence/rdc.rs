//! The randomized dependence coefficient estimator.

use super::{
    canonical_correlation, copula::average_ranks_over_n, copula::median_sq_dist,
    median_in_place, random_projection, DependenceError, RdcParams, SMode, Sample,
};
use crate::rng::RngStream;
use alloc::vec;
use alloc::vec::Vec;

/// One evaluation of the randomized dependence coefficient.
#[derive(Clone, Debug)]
pub struct RdcEstimate {
    /// Median of the per-repetition values, in [0, 1].
    pub value: f64,
    /// Individual repetition values, in evaluation order.
    pub repetitions: Vec<f64>,
    /// Set when either input was constant; the value is then 0 by
    /// convention instead of an error, since a near-constant window of a
    /// pegged series should not abort a whole pipeline run.
    pub degenerate: bool,
}

/// Projection scale from the median heuristic.
///
/// `median_sq` is the empirical median of pairwise squared distances. The
/// features approximate the Gaussian kernel `exp(-|d|^2 / median_sq)`, whose
/// random Fourier frequencies have variance `2 / median_sq`. Using the
/// median itself as the frequency variance would make the features nearly
/// affine in the copula values (the copula lives in (0, 1], so the median
/// is about 0.086) and the estimator would lose all non-monotone structure.
#[inline]
pub(crate) fn projection_scale(median_sq: f64) -> f64 {
    2.0 / median_sq
}

/// Randomized dependence coefficient between two equal-length samples.
///
/// Each repetition projects the copula transforms of `x` and `y` with fresh
/// random features (per-sample scale from the median heuristic unless fixed)
/// and takes the largest canonical correlation; the reported value is the
/// median over repetitions. Deterministic given `params.seed`.
pub fn rdc(x: &Sample, y: &Sample, params: &RdcParams) -> Result<RdcEstimate, DependenceError> {
    params.validate()?;
    if x.len() != y.len() {
        return Err(DependenceError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_constant() || y.is_constant() {
        return Ok(RdcEstimate {
            value: 0.0,
            repetitions: vec![0.0; params.repetitions],
            degenerate: true,
        });
    }
    let ux = average_ranks_over_n(x.values());
    let uy = average_ranks_over_n(y.values());
    let mx = median_sq_dist(&ux);
    let my = median_sq_dist(&uy);
    Ok(rdc_prepared(&ux, mx, &uy, my, params, params.seed))
}

/// The repetition loop on precomputed copula transforms and median
/// distances.
///
/// Rolling-window callers cache the per-column copula transform and median
/// (both deterministic) and derive `seed` per (window, pair) so that every
/// cell has its own stream; `rdc` itself passes `params.seed` through.
pub fn rdc_prepared(
    ux: &[f64],
    median_x: f64,
    uy: &[f64],
    median_y: f64,
    params: &RdcParams,
    seed: u64,
) -> RdcEstimate {
    let (sx, sy) = match params.s_mode {
        SMode::MedianHeuristic => (projection_scale(median_x), projection_scale(median_y)),
        SMode::Fixed(s) => (s, s),
    };
    let sample_x = Sample { values: ux.to_vec() };
    let sample_y = Sample { values: uy.to_vec() };
    let mut reps = Vec::with_capacity(params.repetitions);
    for rep in 0..params.repetitions {
        let mut stream_x = RngStream::derive(seed, &[rep as u64, 0]);
        let mut stream_y = RngStream::derive(seed, &[rep as u64, 1]);
        let fx = random_projection(&sample_x, params.k, sx, &mut stream_x)
            .expect("scale is positive by construction");
        let fy = random_projection(&sample_y, params.k, sy, &mut stream_y)
            .expect("scale is positive by construction");
        let out = canonical_correlation(fx.as_mat(), fy.as_mat(), params.ridge);
        reps.push(out.value);
    }
    let mut scratch = reps.clone();
    let value = median_in_place(&mut scratch);
    RdcEstimate {
        value,
        repetitions: reps,
        degenerate: false,
    }
}
