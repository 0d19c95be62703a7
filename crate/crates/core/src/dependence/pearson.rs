//! Sample Pearson correlation, the linear baseline.

use super::{DependenceError, Sample};
use crate::math;

/// Pearson correlation of two equal-length samples.
///
/// Errors on length mismatch and on constant input, where the coefficient
/// is undefined.
pub fn pearson(x: &Sample, y: &Sample) -> Result<f64, DependenceError> {
    if x.len() != y.len() {
        return Err(DependenceError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_constant() || y.is_constant() {
        return Err(DependenceError::ConstantSample);
    }
    let n = x.len() as f64;
    let mx = x.values().iter().sum::<f64>() / n;
    let my = y.values().iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.values().iter().zip(y.values()) {
        let da = a - mx;
        let db = b - my;
        sxx += da * da;
        syy += db * db;
        sxy += da * db;
    }
    Ok((sxy / math::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn sample(v: &[f64]) -> Sample {
        Sample::from_slice(v).unwrap()
    }

    #[test]
    fn perfect_correlation() {
        let x = sample(&[1.0, 2.0, 5.0, -3.0]);
        assert_eq!(pearson(&x, &x).unwrap(), 1.0);
        let neg = Sample::new(x.values().iter().map(|v| -v).collect::<Vec<_>>()).unwrap();
        assert_eq!(pearson(&x, &neg).unwrap(), -1.0);
    }

    #[test]
    fn three_point_hand_value() {
        // means 2, 2; covariance 1; variances 2, 2 => r = 0.5.
        let x = sample(&[1.0, 2.0, 3.0]);
        let y = sample(&[1.0, 3.0, 2.0]);
        assert!((pearson(&x, &y).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn rejects_degenerate_input() {
        let x = sample(&[1.0, 2.0, 3.0]);
        let c = sample(&[4.0, 4.0, 4.0]);
        assert_eq!(pearson(&x, &c), Err(DependenceError::ConstantSample));
        assert_eq!(pearson(&c, &x), Err(DependenceError::ConstantSample));
        let short = sample(&[1.0, 2.0]);
        assert_eq!(
            pearson(&x, &short),
            Err(DependenceError::LengthMismatch { left: 3, right: 2 })
        );
    }
}
