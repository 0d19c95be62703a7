//! Largest canonical correlation between two feature sets.

use crate::linalg::{self, Mat};
use crate::math;

/// Result of a canonical correlation computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CcaOutcome {
    /// Largest canonical correlation, clamped to [0, 1].
    pub value: f64,
    /// Set when a within-set covariance was not positive definite (after the
    /// ridge), in which case `value` is 0.
    pub rank_deficient: bool,
}

/// Largest canonical correlation between the rows of `x` (p x n) and the
/// rows of `y` (q x n), whose columns are paired observations.
///
/// Rows are mean-centered, `ridge` is added to the within-set covariance
/// diagonals, and the value is the largest singular value of
/// `Cxx^{-1/2} Cxy Cyy^{-1/2}` computed through Cholesky factors and power
/// iteration on the small symmetric product.
pub fn canonical_correlation(x: &Mat, y: &Mat, ridge: f64) -> CcaOutcome {
    let n = x.cols();
    assert_eq!(n, y.cols(), "paired samples must have equal length");
    assert!(n >= 2, "need at least two observations");
    let ridge = ridge.max(0.0);

    let mut xc = x.clone();
    let mut yc = y.clone();
    xc.center_rows();
    yc.center_rows();

    let scale = 1.0 / (n - 1) as f64;
    let mut cxx = linalg::sym_gram(&xc, scale);
    let mut cyy = linalg::sym_gram(&yc, scale);
    let cxy = linalg::gram(&xc, &yc, scale);
    cxx.add_diagonal(ridge);
    cyy.add_diagonal(ridge);

    let (lx, ly) = match (linalg::cholesky(&cxx), linalg::cholesky(&cyy)) {
        (Some(lx), Some(ly)) => (lx, ly),
        _ => {
            return CcaOutcome {
                value: 0.0,
                rank_deficient: true,
            }
        }
    };

    // M = Lx^{-1} Cxy Ly^{-T}, computed as two triangular solves.
    let mut w = cxy;
    linalg::solve_lower_in_place(&lx, &mut w);
    let mut mt = w.transposed();
    linalg::solve_lower_in_place(&ly, &mut mt);

    // Largest singular value of M via the top eigenvalue of M^T M.
    let b = linalg::sym_gram(&mt, 1.0);
    let lambda = linalg::largest_symmetric_eigenvalue(&b).max(0.0);
    CcaOutcome {
        value: math::sqrt(lambda).clamp(0.0, 1.0),
        rank_deficient: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use alloc::vec::Vec;

    fn random_mat(rows: usize, cols: usize, stream: &mut RngStream) -> Mat {
        let data: Vec<f64> = (0..rows * cols).map(|_| stream.next_normal()).collect();
        Mat::from_vec(rows, cols, data)
    }

    #[test]
    fn identical_sets_have_unit_correlation() {
        let mut s = RngStream::new(5);
        let x = random_mat(3, 40, &mut s);
        let out = canonical_correlation(&x, &x, 0.0);
        assert!(!out.rank_deficient);
        assert!(out.value > 1.0 - 1e-9, "value {}", out.value);
    }

    #[test]
    fn univariate_case_equals_absolute_pearson() {
        let mut s = RngStream::new(11);
        for trial in 0..20 {
            let n = 30 + trial;
            let xv: Vec<f64> = (0..n).map(|_| s.next_normal()).collect();
            let yv: Vec<f64> = xv
                .iter()
                .map(|&x| 0.6 * x + 0.8 * s.next_normal() - 0.3)
                .collect();
            let x = Mat::from_vec(1, n, xv.clone());
            let y = Mat::from_vec(1, n, yv.clone());
            let cca = canonical_correlation(&x, &y, 0.0).value;

            let sx = crate::dependence::Sample::new(xv).unwrap();
            let sy = crate::dependence::Sample::new(yv).unwrap();
            let r = crate::dependence::pearson(&sx, &sy).unwrap().abs();
            assert!((cca - r).abs() < 1e-10, "cca {cca} vs |pearson| {r}");
        }
    }

    #[test]
    fn independent_noise_has_low_correlation() {
        let mut s = RngStream::new(23);
        let x = random_mat(2, 5000, &mut s);
        let y = random_mat(2, 5000, &mut s);
        let out = canonical_correlation(&x, &y, 0.0);
        assert!(out.value < 0.1, "null value {}", out.value);
    }

    #[test]
    fn swap_symmetry_within_tolerance() {
        let mut s = RngStream::new(31);
        for _ in 0..10 {
            let x = random_mat(4, 60, &mut s);
            let mut y = random_mat(3, 60, &mut s);
            // Correlate y with x a little so the top value is not pure noise.
            for c in 0..60 {
                let v = y.get(0, c) + 0.5 * x.get(0, c);
                y.set(0, c, v);
            }
            let a = canonical_correlation(&x, &y, 1e-6).value;
            let b = canonical_correlation(&y, &x, 1e-6).value;
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn matches_angle_grid_oracle_for_two_dims() {
        // Independent route: for p = q = 2 and ridge 0, scan unit vectors
        // alpha on a fine angle grid; for each alpha the best beta is the
        // regression direction, giving rho(alpha)^2 =
        // (a' Cxy Cyy^-1 Cyx a) / (a' Cxx a). The maximum over the grid must
        // match the Cholesky/power-iteration route.
        let mut s = RngStream::new(47);
        let x = random_mat(2, 200, &mut s);
        let mut y = random_mat(2, 200, &mut s);
        for c in 0..200 {
            let v = y.get(0, c) + 0.8 * x.get(1, c);
            y.set(0, c, v);
        }

        let mut xc = x.clone();
        let mut yc = y.clone();
        xc.center_rows();
        yc.center_rows();
        let scale = 1.0 / 199.0;
        let cxx = crate::linalg::sym_gram(&xc, scale);
        let cyy = crate::linalg::sym_gram(&yc, scale);
        let cxy = crate::linalg::gram(&xc, &yc, scale);

        // 2x2 inverse of Cyy.
        let det = cyy.get(0, 0) * cyy.get(1, 1) - cyy.get(0, 1) * cyy.get(1, 0);
        let inv = [
            cyy.get(1, 1) / det,
            -cyy.get(0, 1) / det,
            -cyy.get(1, 0) / det,
            cyy.get(0, 0) / det,
        ];
        // K = Cxy Cyy^-1 Cyx (2x2, symmetric).
        let mut k = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = 0.0;
                for a in 0..2 {
                    for b in 0..2 {
                        acc += cxy.get(i, a) * inv[a * 2 + b] * cxy.get(j, b);
                    }
                }
                k[i][j] = acc;
            }
        }
        let mut best: f64 = 0.0;
        let steps = 20000;
        for t in 0..steps {
            let theta = core::f64::consts::PI * t as f64 / steps as f64;
            let (sin, cos) = crate::math::sin_cos(theta);
            let a = [cos, sin];
            let num = a[0] * (k[0][0] * a[0] + k[0][1] * a[1])
                + a[1] * (k[1][0] * a[0] + k[1][1] * a[1]);
            let den = a[0] * (cxx.get(0, 0) * a[0] + cxx.get(0, 1) * a[1])
                + a[1] * (cxx.get(1, 0) * a[0] + cxx.get(1, 1) * a[1]);
            best = best.max(num / den);
        }
        let oracle = crate::math::sqrt(best);
        let fast = canonical_correlation(&x, &y, 0.0).value;
        assert!((oracle - fast).abs() < 1e-4, "oracle {oracle} vs {fast}");
    }

    #[test]
    fn degenerate_covariance_is_flagged() {
        let x = Mat::zeros(2, 10);
        let y = Mat::zeros(2, 10);
        let out = canonical_correlation(&x, &y, 0.0);
        assert!(out.rank_deficient);
        assert_eq!(out.value, 0.0);
        // With a ridge the system is positive definite and the value is a
        // clean zero without the flag.
        let out = canonical_correlation(&x, &y, 1e-6);
        assert!(!out.rank_deficient);
        assert_eq!(out.value, 0.0);
    }
}
