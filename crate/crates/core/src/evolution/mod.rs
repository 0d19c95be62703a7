//! Rolling-window pipeline: one network per window end date, plus the
//! time-evolution statistics derived from the resulting series.

mod series;

pub use series::{
    average_degree_ranking, degree_series_correlation, intracontinental_distribution, max_and_gap,
    max_degree_gap_series, raw_degree_series, smoothed_degree_series, DegreeSeries,
    IntracontinentalDistribution, PeriodFilter, Ranking, RankingRow,
};

use crate::dependence::RdcParams;
use crate::network::{
    dependence_matrix, distance_matrix, mst, Measure, NetworkError, SpanningTree,
};
use crate::returns::{Date, ReturnsMatrix};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum EvolutionError {
    InvalidWindow { window: usize },
    WindowExceedsHistory { window: usize, rows: usize },
    UnknownCurrency(String),
    SmoothingTooLong { smoothing: usize, len: usize },
    EmptyPeriod(String),
    ConstantSeries,
    Network(NetworkError),
}

impl fmt::Display for EvolutionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvolutionError::InvalidWindow { window } => {
                write!(f, "window must be at least 2, got {window}")
            }
            EvolutionError::WindowExceedsHistory { window, rows } => {
                write!(f, "window {window} exceeds the {rows} available return rows")
            }
            EvolutionError::UnknownCurrency(c) => write!(f, "unknown currency `{c}`"),
            EvolutionError::SmoothingTooLong { smoothing, len } => {
                write!(f, "smoothing {smoothing} exceeds the {len} available networks")
            }
            EvolutionError::EmptyPeriod(p) => write!(f, "no networks in period {p}"),
            EvolutionError::ConstantSeries => write!(f, "series is constant"),
            EvolutionError::Network(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EvolutionError {}

impl From<NetworkError> for EvolutionError {
    fn from(e: NetworkError) -> Self {
        EvolutionError::Network(e)
    }
}

/// The network of one window, dated by the window's last row.
#[derive(Clone, Debug)]
pub struct WindowNetwork {
    pub end_date: Date,
    pub tree: SpanningTree,
    pub degrees: BTreeMap<String, usize>,
}

/// Ordered sequence of per-window networks.
#[derive(Clone, Debug)]
pub struct NetworkSeries {
    pub entries: Vec<WindowNetwork>,
    pub window: usize,
    pub measure: Measure,
}

impl NetworkSeries {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Number of windows a return history yields: `T - window + 1`.
pub fn window_count(t_returns: usize, window: usize) -> usize {
    t_returns.saturating_sub(window) + 1
}

/// Validate window geometry against the available history.
pub fn check_window(returns: &ReturnsMatrix, window: usize) -> Result<(), EvolutionError> {
    if window < 2 {
        return Err(EvolutionError::InvalidWindow { window });
    }
    if window > returns.rows() {
        return Err(EvolutionError::WindowExceedsHistory {
            window,
            rows: returns.rows(),
        });
    }
    Ok(())
}

/// Build the network whose window ends at return row `end_row` (inclusive).
///
/// This is the unit of parallelism: every cell derives its random stream
/// from `(seed, end_row, pair, repetition)`, so distinct windows can be
/// evaluated concurrently and merged in any order.
pub fn build_window(
    returns: &ReturnsMatrix,
    window: usize,
    end_row: usize,
    measure: Measure,
    params: &RdcParams,
) -> Result<WindowNetwork, EvolutionError> {
    debug_assert!(end_row + 1 >= window && end_row < returns.rows());
    let rows = (end_row + 1 - window)..(end_row + 1);
    let c = dependence_matrix(returns, rows, measure, params, end_row as u64)?;
    let d = distance_matrix(&c);
    let tree = mst(&d)?;
    let degrees = tree.degree_map();
    Ok(WindowNetwork {
        end_date: returns.dates()[end_row].clone(),
        tree,
        degrees,
    })
}

/// Run the full rolling-window pipeline sequentially.
///
/// Every window of `window` consecutive return rows produces one network
/// labelled with the window's final date. Deterministic given
/// `params.seed`; a parallel driver calling [`build_window`] per end row
/// produces the identical series.
pub fn rolling_networks(
    returns: &ReturnsMatrix,
    window: usize,
    measure: Measure,
    params: &RdcParams,
) -> Result<NetworkSeries, EvolutionError> {
    check_window(returns, window)?;
    let mut entries = Vec::with_capacity(window_count(returns.rows(), window));
    for end_row in (window - 1)..returns.rows() {
        entries.push(build_window(returns, window, end_row, measure, params)?);
    }
    Ok(NetworkSeries {
        entries,
        window,
        measure,
    })
}
