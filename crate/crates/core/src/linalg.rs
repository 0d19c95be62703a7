//! Small dense matrices and the few factorizations the estimators need.
//!
//! The matrices involved are tiny (2k x 2k with the default k = 10), so
//! everything is straightforward row-major code with no blocking.

use crate::math;
use alloc::vec;
use alloc::vec::Vec;

/// Row-major dense matrix of `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Build from a row-major buffer. Panics if the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transposed(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Subtract each row's mean from the row.
    pub fn center_rows(&mut self) {
        let n = self.cols as f64;
        for r in 0..self.rows {
            let row = self.row_mut(r);
            let mean = row.iter().sum::<f64>() / n;
            for v in row {
                *v -= mean;
            }
        }
    }

    pub fn add_diagonal(&mut self, v: f64) {
        let n = self.rows.min(self.cols);
        for i in 0..n {
            self.data[i * self.cols + i] += v;
        }
    }
}

/// `a * b^T * scale` where both matrices have the same number of columns.
pub fn gram(a: &Mat, b: &Mat, scale: f64) -> Mat {
    assert_eq!(a.cols, b.cols);
    let mut out = Mat::zeros(a.rows, b.rows);
    for i in 0..a.rows {
        let ra = a.row(i);
        for j in 0..b.rows {
            let rb = b.row(j);
            let mut acc = 0.0;
            for t in 0..a.cols {
                acc += ra[t] * rb[t];
            }
            out.set(i, j, acc * scale);
        }
    }
    out
}

/// `a * a^T * scale`, filling both triangles.
pub fn sym_gram(a: &Mat, scale: f64) -> Mat {
    let mut out = Mat::zeros(a.rows, a.rows);
    for i in 0..a.rows {
        let ri = a.row(i);
        for j in i..a.rows {
            let rj = a.row(j);
            let mut acc = 0.0;
            for t in 0..a.cols {
                acc += ri[t] * rj[t];
            }
            let v = acc * scale;
            out.set(i, j, v);
            out.set(j, i, v);
        }
    }
    out
}

/// Lower Cholesky factor of a symmetric positive-definite matrix.
///
/// Returns `None` when a pivot is not strictly positive and finite, which is
/// how callers detect rank deficiency.
pub fn cholesky(a: &Mat) -> Option<Mat> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut l = Mat::zeros(n, n);
    for j in 0..n {
        let mut d = a.get(j, j);
        for k in 0..j {
            let v = l.get(j, k);
            d -= v * v;
        }
        if !(d > 0.0) || !d.is_finite() {
            return None;
        }
        let dj = math::sqrt(d);
        l.set(j, j, dj);
        for i in j + 1..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, s / dj);
        }
    }
    Some(l)
}

/// Solve `L X = B` in place for lower-triangular `L`, overwriting `B` with `X`.
pub fn solve_lower_in_place(l: &Mat, b: &mut Mat) {
    assert_eq!(l.rows, l.cols);
    assert_eq!(l.rows, b.rows);
    let n = l.rows;
    let bc = b.cols;
    for i in 0..n {
        for k in 0..i {
            let lik = l.get(i, k);
            if lik != 0.0 {
                for c in 0..bc {
                    let v = b.get(i, c) - lik * b.get(k, c);
                    b.set(i, c, v);
                }
            }
        }
        let lii = l.get(i, i);
        for v in b.row_mut(i) {
            *v /= lii;
        }
    }
}

/// Largest eigenvalue of a symmetric positive-semidefinite matrix by power
/// iteration with a Rayleigh-quotient stop.
pub fn largest_symmetric_eigenvalue(b: &Mat) -> f64 {
    assert_eq!(b.rows, b.cols);
    let n = b.rows;
    if n == 0 {
        return 0.0;
    }
    // Start from the column with the largest diagonal entry.
    let mut start = 0;
    for j in 1..n {
        if b.get(j, j) > b.get(start, start) {
            start = j;
        }
    }
    if !(b.get(start, start) > 0.0) {
        return 0.0;
    }
    let mut v = vec![0.0; n];
    v[start] = 1.0;
    let mut w = vec![0.0; n];
    let mut prev = 0.0;
    for _ in 0..1000 {
        for i in 0..n {
            let row = b.row(i);
            let mut acc = 0.0;
            for j in 0..n {
                acc += row[j] * v[j];
            }
            w[i] = acc;
        }
        let rayleigh: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let norm = math::sqrt(w.iter().map(|x| x * x).sum::<f64>());
        if norm == 0.0 {
            return 0.0;
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
        if (rayleigh - prev).abs() <= 1e-15 * rayleigh.abs().max(1.0) {
            break;
        }
        prev = rayleigh;
    }
    // Rayleigh quotient with the final (normalized) vector.
    for i in 0..n {
        let row = b.row(i);
        let mut acc = 0.0;
        for j in 0..n {
            acc += row[j] * v[j];
        }
        w[i] = acc;
    }
    v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn cholesky_reconstructs() {
        // SPD matrix with known factor: A = L L^T.
        let a = Mat::from_vec(3, 3, vec![4.0, 2.0, -2.0, 2.0, 10.0, 2.0, -2.0, 2.0, 14.0]);
        let l = cholesky(&a).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0.0;
                for k in 0..3 {
                    acc += l.get(i, k) * l.get(j, k);
                }
                assert!(close(acc, a.get(i, j), 1e-12));
            }
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = Mat::from_vec(2, 2, vec![1.0, 2.0, 2.0, 1.0]);
        assert!(cholesky(&a).is_none());
        let zero = Mat::zeros(2, 2);
        assert!(cholesky(&zero).is_none());
    }

    #[test]
    fn lower_solve_matches_direct() {
        let l = Mat::from_vec(3, 3, vec![2.0, 0.0, 0.0, 1.0, 3.0, 0.0, -1.0, 2.0, 4.0]);
        let x_true = Mat::from_vec(3, 2, vec![1.0, -2.0, 0.5, 3.0, -1.5, 0.25]);
        // B = L * X
        let mut b = Mat::zeros(3, 2);
        for i in 0..3 {
            for c in 0..2 {
                let mut acc = 0.0;
                for k in 0..3 {
                    acc += l.get(i, k) * x_true.get(k, c);
                }
                b.set(i, c, acc);
            }
        }
        solve_lower_in_place(&l, &mut b);
        for i in 0..3 {
            for c in 0..2 {
                assert!(close(b.get(i, c), x_true.get(i, c), 1e-12));
            }
        }
    }

    #[test]
    fn power_iteration_finds_top_eigenvalue() {
        // Symmetric matrix with eigenvalues 6, 3, 1 (built from a known
        // orthogonal basis would be overkill; use a diagonal plus rotation).
        let a = Mat::from_vec(2, 2, vec![2.0, 1.0, 1.0, 2.0]); // eigenvalues 3 and 1
        assert!(close(largest_symmetric_eigenvalue(&a), 3.0, 1e-10));
        let d = Mat::from_vec(3, 3, vec![6.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(close(largest_symmetric_eigenvalue(&d), 6.0, 1e-10));
        assert_eq!(largest_symmetric_eigenvalue(&Mat::zeros(3, 3)), 0.0);
    }

    #[test]
    fn gram_products() {
        let a = Mat::from_vec(2, 3, vec![1.0, 2.0, 3.0, 0.0, -1.0, 1.0]);
        let g = sym_gram(&a, 1.0);
        assert!(close(g.get(0, 0), 14.0, 1e-12));
        assert!(close(g.get(0, 1), 1.0, 1e-12));
        assert!(close(g.get(1, 0), 1.0, 1e-12));
        assert!(close(g.get(1, 1), 2.0, 1e-12));
        let b = Mat::from_vec(1, 3, vec![1.0, 1.0, 1.0]);
        let c = gram(&a, &b, 0.5);
        assert!(close(c.get(0, 0), 3.0, 1e-12));
        assert!(close(c.get(1, 0), 0.0, 1e-12));
    }
}
