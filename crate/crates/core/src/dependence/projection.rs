//! Random sine/cosine feature projections of copula-transformed samples.

use super::{DependenceError, Sample};
use crate::linalg::Mat;
use crate::math;
use crate::rng::RngStream;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// A 2k x n matrix of random nonlinear features. Row pairs (2i, 2i+1) hold
/// the cosine and sine of `w_i * u + b_i`, so every entry lies in [-1, 1]
/// and each pair satisfies cos^2 + sin^2 = 1 columnwise.
#[derive(Clone, Debug)]
pub struct FeatureMatrix {
    mat: Mat,
}

impl FeatureMatrix {
    #[inline]
    pub fn rows(&self) -> usize {
        self.mat.rows()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.mat.cols()
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        self.mat.row(r)
    }

    #[inline]
    pub fn as_mat(&self) -> &Mat {
        &self.mat
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }
}

/// Project a copula-transformed sample with k random features.
///
/// Frequencies are drawn as `w_i ~ N(0, s)` and phases as `b_i ~ U[-pi, pi)`
/// from the given stream, so the result is deterministic given the stream
/// state.
pub fn random_projection(
    u: &Sample,
    k: usize,
    s: f64,
    rng: &mut RngStream,
) -> Result<FeatureMatrix, DependenceError> {
    if k == 0 {
        return Err(DependenceError::InvalidParameter("k must be at least 1"));
    }
    if !(s > 0.0) {
        return Err(DependenceError::InvalidParameter(
            "projection scale s must be positive",
        ));
    }
    let sd = math::sqrt(s);
    let mut freqs = Vec::with_capacity(k);
    let mut phases = Vec::with_capacity(k);
    for _ in 0..k {
        freqs.push(sd * rng.next_normal());
        phases.push(rng.next_range(-PI, PI));
    }
    Ok(project_with_params(u.values(), &freqs, &phases))
}

/// Evaluate the feature map for explicit frequencies and phases.
pub(crate) fn project_with_params(u: &[f64], freqs: &[f64], phases: &[f64]) -> FeatureMatrix {
    debug_assert_eq!(freqs.len(), phases.len());
    let k = freqs.len();
    let n = u.len();
    let mut mat = Mat::zeros(2 * k, n);
    for i in 0..k {
        let (w, b) = (freqs[i], phases[i]);
        for (t, &ut) in u.iter().enumerate() {
            let (sin, cos) = math::sin_cos(w * ut + b);
            mat.set(2 * i, t, cos);
            mat.set(2 * i + 1, t, sin);
        }
    }
    FeatureMatrix { mat }
}
