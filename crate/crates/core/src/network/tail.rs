//! Degree-tail fits: discrete power law and log-normal, compared through
//! Kolmogorov-Smirnov distances.

use super::NetworkError;
use crate::math;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// Fitted tail parameters for a degree sample.
#[derive(Clone, Copy, Debug)]
pub struct TailFit {
    /// Power-law exponent (> 1).
    pub alpha: f64,
    /// Lower cutoff chosen by minimal KS distance.
    pub xmin: u64,
    /// Log-normal location, fitted on degrees >= xmin.
    pub mu: f64,
    /// Log-normal scale (> 0).
    pub sigma: f64,
    /// KS distance of the power-law fit on the tail.
    pub ks_pl: f64,
    /// KS distance of the log-normal fit on the tail.
    pub ks_ln: f64,
}

/// Hurwitz zeta `sum_{i >= 0} (a + i)^-alpha` for `alpha > 1`, by direct
/// summation with an Euler-Maclaurin tail.
pub(crate) fn hurwitz_zeta(alpha: f64, a: f64) -> f64 {
    debug_assert!(alpha > 1.0 && a > 0.0);
    const TERMS: usize = 64;
    let mut sum = 0.0;
    for i in 0..TERMS {
        sum += math::powf(a + i as f64, -alpha);
    }
    let m = a + TERMS as f64;
    // Tail: integral + boundary + first correction terms.
    sum + math::powf(m, 1.0 - alpha) / (alpha - 1.0) + 0.5 * math::powf(m, -alpha)
        + alpha / 12.0 * math::powf(m, -alpha - 1.0)
        - alpha * (alpha + 1.0) * (alpha + 2.0) / 720.0 * math::powf(m, -alpha - 3.0)
}

/// Discrete power-law and log-normal fits of a degree sample.
///
/// The power law is fitted by maximum likelihood on the tail `k >= xmin`
/// with `xmin` scanned over the observed values and chosen by minimal KS
/// distance. The log-normal is fitted on the same tail (half-integer
/// continuity correction in its KS distance). Needs at least two distinct
/// degree values; a flat histogram has no tail to fit.
pub fn fit_degree_tail(degrees: &[u64]) -> Result<TailFit, NetworkError> {
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for &d in degrees {
        if d == 0 {
            continue; // isolated nodes cannot appear in a tree
        }
        *counts.entry(d).or_insert(0) += 1;
    }
    let histogram: Vec<(u64, usize)> = counts.into_iter().collect();
    if histogram.len() < 2 {
        return Err(NetworkError::FitUnavailable);
    }

    // Candidate cutoffs keep at least two distinct values in the tail.
    let mut best: Option<(f64, f64, u64)> = None; // (ks, alpha, xmin)
    for cand in 0..histogram.len() - 1 {
        let xmin = histogram[cand].0;
        let tail = &histogram[cand..];
        let (alpha, ks) = power_law_on_tail(tail, xmin);
        if best.map_or(true, |(bks, _, _)| ks < bks) {
            best = Some((ks, alpha, xmin));
        }
    }
    let (ks_pl, alpha, xmin) = best.expect("at least one candidate");

    // Log-normal on the chosen tail.
    let tail_start = histogram.iter().position(|&(v, _)| v == xmin).unwrap();
    let tail = &histogram[tail_start..];
    let n_tail: usize = tail.iter().map(|&(_, c)| c).sum();
    let mean_log = tail
        .iter()
        .map(|&(v, c)| c as f64 * math::ln(v as f64))
        .sum::<f64>()
        / n_tail as f64;
    let var_log = tail
        .iter()
        .map(|&(v, c)| {
            let d = math::ln(v as f64) - mean_log;
            c as f64 * d * d
        })
        .sum::<f64>()
        / n_tail as f64;
    let sigma = math::sqrt(var_log);
    let ks_ln = if sigma > 0.0 {
        lognormal_ks(tail, xmin, mean_log, sigma)
    } else {
        1.0
    };

    Ok(TailFit {
        alpha,
        xmin,
        mu: mean_log,
        sigma,
        ks_pl,
        ks_ln,
    })
}

/// MLE exponent and KS distance for one cutoff.
fn power_law_on_tail(tail: &[(u64, usize)], xmin: u64) -> (f64, f64) {
    let n: usize = tail.iter().map(|&(_, c)| c).sum();
    let sum_log: f64 = tail
        .iter()
        .map(|&(v, c)| c as f64 * math::ln(v as f64))
        .sum();
    let a = xmin as f64;

    // Log-likelihood l(alpha) = -alpha sum_log - n ln zeta(alpha, xmin) is
    // concave in alpha; golden-section search on a bracketing interval.
    let ll = |alpha: f64| -alpha * sum_log - n as f64 * math::ln(hurwitz_zeta(alpha, a));
    let (mut lo, mut hi) = (1.000_001, 25.0);
    let phi = 0.618_033_988_749_894_8;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (ll(x1), ll(x2));
    for _ in 0..90 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = ll(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = ll(x2);
        }
    }
    let alpha = 0.5 * (lo + hi);

    // KS over the observed tail values against the discrete model CDF,
    // sharing one pass of partial sums over the integer support.
    let zeta = hurwitz_zeta(alpha, a);
    let max_v = tail.last().unwrap().0;
    let mut ks: f64 = 0.0;
    let mut model_mass = 0.0;
    let mut seen = 0usize;
    let mut next = 0usize; // index into tail
    for k in xmin..=max_v {
        model_mass += math::powf(k as f64, -alpha) / zeta;
        if next < tail.len() && tail[next].0 == k {
            seen += tail[next].1;
            next += 1;
            let ecdf = seen as f64 / n as f64;
            ks = ks.max(math::abs(ecdf - model_mass));
        }
    }
    (alpha, ks)
}

/// KS distance of a log-normal fit conditioned on the tail, evaluated with a
/// half-integer continuity correction.
fn lognormal_ks(tail: &[(u64, usize)], xmin: u64, mu: f64, sigma: f64) -> f64 {
    let n: usize = tail.iter().map(|&(_, c)| c).sum();
    let z = |x: f64| (math::ln(x) - mu) / sigma;
    let low = math::normal_cdf(z(xmin as f64 - 0.5));
    let denom = 1.0 - low;
    if denom <= 0.0 {
        return 1.0;
    }
    let mut ks: f64 = 0.0;
    let mut seen = 0usize;
    for &(v, c) in tail {
        seen += c;
        let ecdf = seen as f64 / n as f64;
        let model = (math::normal_cdf(z(v as f64 + 0.5)) - low) / denom;
        ks = ks.max(math::abs(ecdf - model));
    }
    ks
}
