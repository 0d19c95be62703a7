//! Time-evolution statistics over a network series: rankings, smoothed
//! degree series, concentration measures and link-fraction distributions.

use super::{EvolutionError, NetworkSeries};
use crate::dependence::{pearson, Sample};
use crate::kde::{gaussian_kde_unit_interval, KdeCurve};
use crate::network::{intracontinental_fraction, ContinentMap};
use crate::returns::Date;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// A dated sequence of (possibly smoothed) degree values for one label.
#[derive(Clone, Debug)]
pub struct DegreeSeries {
    pub label: String,
    pub dates: Vec<Date>,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankingRow {
    pub rank: usize,
    pub currency: String,
    pub average_degree: f64,
}

/// Currencies ordered by average degree over a period.
#[derive(Clone, Debug)]
pub struct Ranking {
    pub period: String,
    pub rows: Vec<RankingRow>,
}

/// Which networks enter an aggregate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PeriodFilter {
    Whole,
    /// Calendar year of the network's end date.
    Year(i32),
}

impl PeriodFilter {
    fn label(self) -> String {
        match self {
            PeriodFilter::Whole => "whole".to_string(),
            PeriodFilter::Year(y) => format!("{y}"),
        }
    }

    fn accepts(self, date: &Date) -> bool {
        match self {
            PeriodFilter::Whole => true,
            PeriodFilter::Year(y) => date.year() == y,
        }
    }
}

/// Mean degree per currency over the filtered networks, ranked descending
/// (ties broken by code). Currencies average over the networks they appear
/// in, so late entrants are ranked on their own history.
pub fn average_degree_ranking(
    series: &NetworkSeries,
    filter: PeriodFilter,
) -> Result<Ranking, EvolutionError> {
    let mut sums: alloc::collections::BTreeMap<&str, (f64, usize)> =
        alloc::collections::BTreeMap::new();
    let mut matched = 0usize;
    for entry in &series.entries {
        if !filter.accepts(&entry.end_date) {
            continue;
        }
        matched += 1;
        for (code, &deg) in &entry.degrees {
            let slot = sums.entry(code).or_insert((0.0, 0));
            slot.0 += deg as f64;
            slot.1 += 1;
        }
    }
    if matched == 0 {
        return Err(EvolutionError::EmptyPeriod(filter.label()));
    }
    let mut rows: Vec<RankingRow> = sums
        .into_iter()
        .map(|(code, (sum, count))| RankingRow {
            rank: 0,
            currency: code.to_string(),
            average_degree: sum / count as f64,
        })
        .collect();
    rows.sort_by(|a, b| {
        b.average_degree
            .total_cmp(&a.average_degree)
            .then_with(|| a.currency.cmp(&b.currency))
    });
    for (i, row) in rows.iter_mut().enumerate() {
        row.rank = i + 1;
    }
    Ok(Ranking {
        period: filter.label(),
        rows,
    })
}

/// Rolling mean of one currency's degree over `smoothing` consecutive
/// networks; the value at a date averages the window ending there, so the
/// series starts once `smoothing` networks have accumulated.
pub fn smoothed_degree_series(
    series: &NetworkSeries,
    currency: &str,
    smoothing: usize,
) -> Result<DegreeSeries, EvolutionError> {
    let raw = raw_degree_series(series, currency)?;
    let smoothed = rolling_mean(&raw.values, smoothing).ok_or(
        EvolutionError::SmoothingTooLong {
            smoothing,
            len: raw.values.len(),
        },
    )?;
    Ok(DegreeSeries {
        label: currency.to_string(),
        dates: raw.dates[smoothing - 1..].to_vec(),
        values: smoothed,
    })
}

/// Raw per-network degrees of one currency (only the networks containing it,
/// which form a contiguous suffix of the series).
pub fn raw_degree_series(
    series: &NetworkSeries,
    currency: &str,
) -> Result<DegreeSeries, EvolutionError> {
    let mut dates = Vec::new();
    let mut values = Vec::new();
    for entry in &series.entries {
        if let Some(&deg) = entry.degrees.get(currency) {
            dates.push(entry.end_date.clone());
            values.push(deg as f64);
        }
    }
    if values.is_empty() {
        return Err(EvolutionError::UnknownCurrency(currency.to_string()));
    }
    Ok(DegreeSeries {
        label: currency.to_string(),
        dates,
        values,
    })
}

fn rolling_mean(values: &[f64], window: usize) -> Option<Vec<f64>> {
    if window == 0 || window > values.len() {
        return None;
    }
    let inv = 1.0 / window as f64;
    Some(
        values
            .windows(window)
            .map(|w| w.iter().sum::<f64>() * inv)
            .collect(),
    )
}

/// Maximum degree and its gap to the second-largest degree, where "second"
/// counts multiplicity: a tie at the top yields a gap of zero.
pub fn max_and_gap(degrees: impl IntoIterator<Item = usize>) -> Option<(usize, usize)> {
    let (mut top, mut second) = (None::<usize>, None::<usize>);
    for d in degrees {
        if top.map_or(true, |t| d > t) {
            second = top;
            top = Some(d);
        } else if second.map_or(true, |s| d > s) {
            second = Some(d);
        }
    }
    Some((top?, top? - second?))
}

/// Smoothed series of the per-network maximum degree and max-to-second gap.
pub fn max_degree_gap_series(
    series: &NetworkSeries,
    smoothing: usize,
) -> Result<(DegreeSeries, DegreeSeries), EvolutionError> {
    let mut dates = Vec::with_capacity(series.len());
    let mut maxes = Vec::with_capacity(series.len());
    let mut gaps = Vec::with_capacity(series.len());
    for entry in &series.entries {
        let (m, g) = max_and_gap(entry.degrees.values().copied())
            .expect("trees have at least two nodes");
        dates.push(entry.end_date.clone());
        maxes.push(m as f64);
        gaps.push(g as f64);
    }
    let smooth = |v: &[f64]| {
        rolling_mean(v, smoothing).ok_or(EvolutionError::SmoothingTooLong {
            smoothing,
            len: v.len(),
        })
    };
    let sm = smooth(&maxes)?;
    let sg = smooth(&gaps)?;
    let dates = dates[smoothing - 1..].to_vec();
    Ok((
        DegreeSeries {
            label: "max".to_string(),
            dates: dates.clone(),
            values: sm,
        },
        DegreeSeries {
            label: "gap".to_string(),
            dates,
            values: sg,
        },
    ))
}

/// Pearson correlation of two currencies' smoothed degree series over their
/// common dates.
pub fn degree_series_correlation(
    series: &NetworkSeries,
    currency_a: &str,
    currency_b: &str,
    smoothing: usize,
) -> Result<f64, EvolutionError> {
    let a = smoothed_degree_series(series, currency_a, smoothing)?;
    let b = smoothed_degree_series(series, currency_b, smoothing)?;
    // Both series are suffixes of the same date axis; align on the shorter.
    let common = a.dates.iter().filter(|d| b.dates.contains(d)).count();
    if common < 2 {
        return Err(EvolutionError::EmptyPeriod("common range".to_string()));
    }
    let va = &a.values[a.values.len() - common..];
    let vb = &b.values[b.values.len() - common..];
    let sa = Sample::from_slice(va).map_err(|_| EvolutionError::ConstantSeries)?;
    let sb = Sample::from_slice(vb).map_err(|_| EvolutionError::ConstantSeries)?;
    pearson(&sa, &sb).map_err(|_| EvolutionError::ConstantSeries)
}

/// Per-network intracontinental link fractions with their kernel density
/// estimate, sample mean and standard deviation.
#[derive(Clone, Debug)]
pub struct IntracontinentalDistribution {
    pub dates: Vec<Date>,
    pub fractions: Vec<f64>,
    pub mean: f64,
    pub sd: f64,
    pub kde: KdeCurve,
}

pub fn intracontinental_distribution(
    series: &NetworkSeries,
    map: &ContinentMap,
    grid_points: usize,
) -> Result<IntracontinentalDistribution, EvolutionError> {
    let mut dates = Vec::with_capacity(series.len());
    let mut fractions = Vec::with_capacity(series.len());
    for entry in &series.entries {
        dates.push(entry.end_date.clone());
        fractions.push(intracontinental_fraction(&entry.tree, map)?);
    }
    let n = fractions.len() as f64;
    let mean = fractions.iter().sum::<f64>() / n;
    let sd = if fractions.len() > 1 {
        crate::math::sqrt(
            fractions.iter().map(|f| (f - mean) * (f - mean)).sum::<f64>() / (n - 1.0),
        )
    } else {
        0.0
    };
    let kde = gaussian_kde_unit_interval(&fractions, grid_points);
    Ok(IntracontinentalDistribution {
        dates,
        fractions,
        mean,
        sd,
        kde,
    })
}
