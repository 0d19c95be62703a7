//! The evolve pipeline: parse, redenominate, window in parallel, aggregate,
//! and emit the result files in one ordered write phase.

use crate::config::RunConfig;
use crate::format::g6;
use crate::io::{
    self, continents_source, load_continents, Manifest, OutputWriter,
};
use crate::CliError;
use fxnet_core::dependence::RdcParams;
use fxnet_core::evolution::{
    self, average_degree_ranking, intracontinental_distribution, max_degree_gap_series,
    raw_degree_series, smoothed_degree_series, EvolutionError, NetworkSeries, PeriodFilter,
    Ranking,
};
use fxnet_core::network::{ContinentMap, Measure};
use fxnet_core::returns::ReturnsMatrix;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::path::Path;

/// Everything computed by a run, before any file is written.
pub struct EvolveOutputs {
    pub manifest: Manifest,
    pub series: NetworkSeries,
    pub rankings: Vec<Ranking>,
    pub continents: ContinentMap,
}

/// Build the rolling network series with a bounded worker pool. Results are
/// identical to the sequential driver because every (window, pair,
/// repetition) cell owns a derived random stream.
pub fn rolling_networks_parallel(
    returns: &ReturnsMatrix,
    window: usize,
    measure: Measure,
    params: &RdcParams,
    jobs: usize,
) -> Result<NetworkSeries, EvolutionError> {
    evolution::check_window(returns, window)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let entries = pool.install(|| {
        ((window - 1)..returns.rows())
            .into_par_iter()
            .map(|end_row| evolution::build_window(returns, window, end_row, measure, params))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(NetworkSeries {
        entries,
        window,
        measure,
    })
}

/// Parse the input table and run the full pipeline described by `config`.
pub fn run_evolve(config: &RunConfig) -> Result<EvolveOutputs, CliError> {
    config.validate()?;
    let text = std::fs::read_to_string(&config.input).map_err(|e| {
        CliError::input(format!("cannot read {}: {e}", config.input.display()))
    })?;
    let table = fxnet_core::returns::parse_rates(&text, &config.file_base)?;
    let table = if config.base != config.file_base {
        table.redenominate(&config.base)?
    } else {
        table
    };
    if table.rows() < 2 {
        return Err(CliError::input("need at least two dated rows"));
    }
    let returns = table.log_returns();

    let continents = load_continents(config.continents.as_deref())?;
    for code in returns.currencies() {
        if continents.continent(code).is_none() {
            return Err(CliError::input(format!(
                "currency `{code}` missing from the continent mapping"
            )));
        }
    }

    let series = rolling_networks_parallel(
        &returns,
        config.window,
        config.measure,
        &config.rdc_params(),
        config.jobs,
    )?;

    let mut rankings = vec![average_degree_ranking(&series, PeriodFilter::Whole)?];
    let years: BTreeSet<i32> = series.entries.iter().map(|e| e.end_date.year()).collect();
    for year in years {
        rankings.push(average_degree_ranking(&series, PeriodFilter::Year(year))?);
    }

    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        input: config.input.display().to_string(),
        file_base: config.file_base.clone(),
        base: config.base.clone(),
        measure: config.measure.to_string(),
        window: config.window,
        smoothing: config.smoothing,
        k: config.k,
        repetitions: config.repetitions,
        ridge: config.ridge,
        seed: config.seed,
        continents: continents_source(config.continents.as_deref()),
        currencies: returns.currencies().to_vec(),
        rate_rows: table.rows(),
        return_rows: returns.rows(),
        networks: series.len(),
        first_end_date: series.entries[0].end_date.as_str().to_string(),
        last_end_date: series.entries[series.len() - 1].end_date.as_str().to_string(),
    };

    Ok(EvolveOutputs {
        manifest,
        series,
        rankings,
        continents,
    })
}

/// Render the rankings table: one block per period, ranks ascending.
pub fn rankings_csv(rankings: &[Ranking]) -> String {
    let mut out = String::from("period,rank,currency,avg_degree\n");
    for ranking in rankings {
        for row in &ranking.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                ranking.period,
                row.rank,
                row.currency,
                g6(row.average_degree)
            ));
        }
    }
    out
}

/// Render raw and smoothed degree series for the given currencies. Smoothed
/// cells stay empty until `smoothing` networks have accumulated (or always,
/// when the series is shorter than the smoothing window).
pub fn degree_series_csv(
    series: &NetworkSeries,
    currencies: &[String],
    smoothing: usize,
) -> Result<String, CliError> {
    let mut out = String::from("date,currency,raw,smoothed\n");
    for code in currencies {
        let raw = raw_degree_series(series, code)
            .map_err(|e| CliError::input(e.to_string()))?;
        let smoothed = match smoothed_degree_series(series, code, smoothing) {
            Ok(s) => Some(s),
            Err(EvolutionError::SmoothingTooLong { .. }) => None,
            Err(e) => return Err(CliError::input(e.to_string())),
        };
        let offset = smoothing.saturating_sub(1);
        for (i, (date, value)) in raw.dates.iter().zip(&raw.values).enumerate() {
            let smooth_cell = match &smoothed {
                Some(s) if i >= offset => g6(s.values[i - offset]),
                _ => String::new(),
            };
            out.push_str(&format!(
                "{},{},{},{}\n",
                date.as_str(),
                code,
                g6(*value),
                smooth_cell
            ));
        }
    }
    Ok(out)
}

fn maxgap_csv(series: &NetworkSeries, smoothing: usize) -> Result<String, CliError> {
    let mut out = String::from("date,max,gap\n");
    match max_degree_gap_series(series, smoothing) {
        Ok((max, gap)) => {
            for i in 0..max.dates.len() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    max.dates[i].as_str(),
                    g6(max.values[i]),
                    g6(gap.values[i])
                ));
            }
            Ok(out)
        }
        // Shorter runs than the smoothing window emit an empty table.
        Err(EvolutionError::SmoothingTooLong { .. }) => Ok(out),
        Err(e) => Err(CliError::input(e.to_string())),
    }
}

/// Write every result file; on failure remove whatever was created.
pub fn write_outputs(out_dir: &Path, outputs: &EvolveOutputs) -> Result<(), CliError> {
    let mut writer = OutputWriter::new(out_dir)?;
    match write_outputs_inner(&mut writer, outputs) {
        Ok(()) => Ok(()),
        Err(e) => {
            writer.remove_partial_outputs();
            Err(e)
        }
    }
}

fn write_outputs_inner(
    writer: &mut OutputWriter,
    outputs: &EvolveOutputs,
) -> Result<(), CliError> {
    let series = &outputs.series;
    let smoothing = outputs.manifest.smoothing;

    writer.write("rankings.csv", &rankings_csv(&outputs.rankings))?;

    let mut codes: Vec<String> = outputs.manifest.currencies.clone();
    codes.sort();
    writer.write(
        "degree_series.csv",
        &degree_series_csv(series, &codes, smoothing)?,
    )?;
    writer.write("maxgap.csv", &maxgap_csv(series, smoothing)?)?;

    let dist = intracontinental_distribution(series, &outputs.continents, 512)
        .map_err(|e| CliError::input(e.to_string()))?;
    let mut intrafrac = String::from("date,fraction\n");
    for (date, frac) in dist.dates.iter().zip(&dist.fractions) {
        intrafrac.push_str(&format!("{},{}\n", date.as_str(), g6(*frac)));
    }
    writer.write("intrafrac.csv", &intrafrac)?;
    let mut kde_csv = String::from("x,density\n");
    for (x, d) in dist.kde.xs.iter().zip(&dist.kde.densities) {
        kde_csv.push_str(&format!("{},{}\n", g6(*x), g6(*d)));
    }
    writer.write("intrafrac_kde.csv", &kde_csv)?;

    let mut edges = String::from("date,node_i,node_j,weight\n");
    for entry in &series.entries {
        edges.push_str(&io::tree_edge_lines(&entry.end_date, &entry.tree));
        writer.write(
            &format!("trees/{}.json", entry.end_date.as_str()),
            &io::tree_json(entry),
        )?;
    }
    writer.write("trees.csv", &edges)?;

    // Last: its presence marks a complete run.
    writer.write("manifest.json", &io::manifest_json(&outputs.manifest))?;
    Ok(())
}
