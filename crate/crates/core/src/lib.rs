//! Nonlinear dependence measures and spanning-tree network analytics for
//! currency return series.
//!
//! The crate covers the full analytical chain:
//!
//! * [`returns`] — ingesting dated exchange-rate tables, switching the base
//!   denomination and computing logarithmic returns;
//! * [`dependence`] — the randomized dependence coefficient (largest
//!   canonical correlation between random sine/cosine projections of the
//!   empirical copula transforms) and the plain Pearson baseline;
//! * [`network`] — dependence and distance matrices for one window, minimum
//!   spanning trees, degree statistics, continental link fractions and
//!   degree-tail fits;
//! * [`evolution`] — the rolling-window pipeline and the time-evolution
//!   series derived from it (degree rankings, smoothed degree series,
//!   max-degree/gap series, link-fraction distributions).
//!
//! Everything is deterministic given a seed: random streams are derived by
//! counter-based splitting ([`rng::RngStream::derive`]) so results do not
//! depend on evaluation order, and distinct (window, pair, repetition) cells
//! can be computed in parallel by a caller.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default
//! `std` feature and enable `libm` to build without the standard library.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod dependence;
pub mod evolution;
pub mod kde;
pub mod linalg;
mod math;
pub mod network;
pub mod returns;
pub mod rng;

pub use dependence::{pearson, rdc, RdcEstimate, RdcParams, Sample, SMode};
pub use network::{
    dependence_matrix, distance_matrix, mst, DependenceMatrix, DistanceMatrix, Measure,
    SpanningTree,
};
pub use returns::{parse_rates, RateTable, ReturnsMatrix};
