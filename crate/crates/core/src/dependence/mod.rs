//! Dependence measures on raw sample vectors: the randomized dependence
//! coefficient and the Pearson baseline.
//!
//! The randomized dependence coefficient of two samples is the largest
//! canonical correlation between random sine/cosine projections of their
//! empirical copula transforms. It is invariant under strictly increasing
//! transformations of either input (the copula step), picks up non-monotone
//! association (the projections), and reduces to |rho| for bivariate
//! Gaussian data.

mod cca;
pub(crate) mod copula;
mod pearson;
mod projection;
mod rdc;

pub use cca::{canonical_correlation, CcaOutcome};
pub use copula::{copula_transform, median_heuristic, MEDIAN_DISTANCE_FLOOR};
pub use pearson::pearson;
pub use projection::{random_projection, FeatureMatrix};
pub use rdc::{rdc, rdc_prepared, RdcEstimate};

use alloc::vec::Vec;
use core::fmt;

/// A validated sample vector: at least two finite values.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self, DependenceError> {
        if values.len() < 2 {
            return Err(DependenceError::TooShort { len: values.len() });
        }
        for (index, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(DependenceError::NonFiniteValue { index });
            }
        }
        Ok(Sample { values })
    }

    pub fn from_slice(values: &[f64]) -> Result<Self, DependenceError> {
        Sample::new(values.to_vec())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// True when every value equals the first one. Constant samples carry no
    /// rank information and are flagged rather than estimated.
    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }
}

/// How the projection scale `s` is chosen for each sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SMode {
    /// Per-sample scale from the median of pairwise squared distances of the
    /// copula-transformed sample (see [`median_heuristic`]).
    MedianHeuristic,
    /// A fixed positive scale used for both samples.
    Fixed(f64),
}

/// Parameters of the randomized dependence coefficient estimator.
#[derive(Clone, Debug)]
pub struct RdcParams {
    /// Number of random features per sample (k; the projection has 2k rows).
    pub k: usize,
    /// Projection scale selection.
    pub s_mode: SMode,
    /// Number of independent evaluations whose median is reported.
    pub repetitions: usize,
    /// Root seed for the derived random streams.
    pub seed: u64,
    /// Ridge added to the within-set covariance diagonals in the CCA step.
    pub ridge: f64,
}

impl Default for RdcParams {
    fn default() -> Self {
        RdcParams {
            k: 10,
            s_mode: SMode::MedianHeuristic,
            repetitions: 5,
            seed: 0,
            // Large enough to keep the independence bias of the estimator in
            // check at daily sample sizes without washing out genuine
            // nonlinear association.
            ridge: 0.03,
        }
    }
}

impl RdcParams {
    pub fn validate(&self) -> Result<(), DependenceError> {
        if self.k == 0 {
            return Err(DependenceError::InvalidParameter("k must be at least 1"));
        }
        if self.repetitions == 0 {
            return Err(DependenceError::InvalidParameter(
                "repetitions must be at least 1",
            ));
        }
        if !(self.ridge >= 0.0) {
            return Err(DependenceError::InvalidParameter(
                "ridge must be non-negative",
            ));
        }
        if let SMode::Fixed(s) = self.s_mode {
            if !(s > 0.0) {
                return Err(DependenceError::InvalidParameter(
                    "fixed scale must be positive",
                ));
            }
        }
        Ok(())
    }

    /// Params with a different seed, everything else unchanged.
    pub fn with_seed(&self, seed: u64) -> Self {
        RdcParams { seed, ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DependenceError {
    /// A sample value was NaN or infinite.
    NonFiniteValue { index: usize },
    /// Fewer than two observations.
    TooShort { len: usize },
    /// Paired samples of different lengths.
    LengthMismatch { left: usize, right: usize },
    /// A constant sample where a non-constant one is required.
    ConstantSample,
    InvalidParameter(&'static str),
}

impl fmt::Display for DependenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DependenceError::NonFiniteValue { index } => {
                write!(f, "sample value at index {index} is not finite")
            }
            DependenceError::TooShort { len } => {
                write!(f, "sample needs at least 2 values, got {len}")
            }
            DependenceError::LengthMismatch { left, right } => {
                write!(f, "paired samples differ in length: {left} vs {right}")
            }
            DependenceError::ConstantSample => write!(f, "sample is constant"),
            DependenceError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DependenceError {}

/// Median of a scratch buffer; the even case averages the two central order
/// statistics. The buffer is reordered in place.
pub(crate) fn median_in_place(v: &mut [f64]) -> f64 {
    debug_assert!(!v.is_empty());
    let m = v.len() / 2;
    let (_, upper, _) = v.select_nth_unstable_by(m, f64::total_cmp);
    let upper = *upper;
    if v.len() % 2 == 1 {
        upper
    } else {
        let lower = v[..m]
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        0.5 * (lower + upper)
    }
}
