//! The four subcommands, written against `Write` sinks so tests can capture
//! output byte-for-byte.

use crate::config::RunConfig;
use crate::format::g6;
use crate::io::{read_manifest, read_network_series};
use crate::pipeline::{degree_series_csv, run_evolve, write_outputs};
use crate::CliError;
use fxnet_core::dependence::{rdc, RdcParams, Sample};
use fxnet_core::evolution::{
    average_degree_ranking, degree_series_correlation, EvolutionError, PeriodFilter,
};
use std::io::Write;
use std::path::Path;

/// Estimate the dependence coefficient between two named columns of a
/// delimited file and print the value plus the per-repetition draws.
pub fn cmd_rdc(
    input: &Path,
    x_col: &str,
    y_col: &str,
    params: &RdcParams,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", input.display())))?;
    let x = numeric_column(&text, x_col)?;
    let y = numeric_column(&text, y_col)?;
    let x = Sample::new(x)?;
    let y = Sample::new(y)?;
    let estimate = rdc(&x, &y, params)?;
    if estimate.degenerate {
        eprintln!("warning: at least one column is constant; reporting 0");
    }
    writeln!(out, "rdc {}", g6(estimate.value)).map_err(write_err)?;
    for (i, rep) in estimate.repetitions.iter().enumerate() {
        writeln!(out, "rep {} {}", i + 1, g6(*rep)).map_err(write_err)?;
    }
    Ok(())
}

/// Extract one column of a delimited file as numbers.
fn numeric_column(text: &str, name: &str) -> Result<Vec<f64>, CliError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| CliError::input("empty input"))?;
    let delim = if header.contains('\t') { '\t' } else { ',' };
    let headers: Vec<&str> = header.split(delim).map(str::trim).collect();
    let col = headers.iter().position(|h| *h == name).ok_or_else(|| {
        CliError::input(format!(
            "no column `{name}` (available: {})",
            headers.join(", ")
        ))
    })?;
    let mut values = Vec::new();
    for (idx, line) in lines.enumerate() {
        let cell = line
            .split(delim)
            .nth(col)
            .map(str::trim)
            .unwrap_or("");
        let v: f64 = cell.parse().map_err(|_| {
            CliError::input(format!(
                "column `{name}`, data row {}: `{cell}` is not a number",
                idx + 1
            ))
        })?;
        values.push(v);
    }
    Ok(values)
}

/// Run the rolling pipeline and write all result files.
pub fn cmd_evolve(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let outputs = run_evolve(config)?;
    write_outputs(&config.out, &outputs)?;
    writeln!(
        out,
        "wrote {}: {} networks over {} currencies",
        config.out.display(),
        outputs.manifest.networks,
        outputs.manifest.currencies.len()
    )
    .map_err(write_err)?;
    Ok(())
}

/// Recompute a degree ranking from a finished run directory.
pub fn cmd_rank(dir: &Path, year: Option<i32>, out: &mut dyn Write) -> Result<(), CliError> {
    let manifest = read_manifest(dir)?;
    let series = read_network_series(dir, &manifest)?;
    let filter = match year {
        Some(y) => PeriodFilter::Year(y),
        None => PeriodFilter::Whole,
    };
    let ranking = average_degree_ranking(&series, filter).map_err(|e| match e {
        EvolutionError::EmptyPeriod(p) => CliError::input(format!("no networks in period {p}")),
        other => CliError::input(other.to_string()),
    })?;
    write!(out, "{}", crate::pipeline::rankings_csv(&[ranking])).map_err(write_err)?;
    Ok(())
}

/// Emit plot-ready degree series (and, for a pair, their correlation) from a
/// finished run directory.
pub fn cmd_plotdata(
    dir: &Path,
    currencies: &[String],
    smoothing: Option<usize>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if currencies.is_empty() {
        return Err(CliError::input("need at least one currency"));
    }
    let manifest = read_manifest(dir)?;
    let series = read_network_series(dir, &manifest)?;
    let smoothing = smoothing.unwrap_or(manifest.smoothing);
    let table = degree_series_csv(&series, currencies, smoothing)?;
    write!(out, "{table}").map_err(write_err)?;
    if let [a, b] = currencies {
        let line = match degree_series_correlation(&series, a, b, smoothing) {
            Ok(r) => format!("# correlation {a} {b} {}\n", g6(r)),
            Err(EvolutionError::ConstantSeries) => {
                format!("# correlation {a} {b} NA\n")
            }
            Err(EvolutionError::SmoothingTooLong { .. }) => {
                format!("# correlation {a} {b} NA\n")
            }
            Err(e) => return Err(CliError::input(e.to_string())),
        };
        write!(out, "{line}").map_err(write_err)?;
    }
    Ok(())
}

fn write_err(e: std::io::Error) -> CliError {
    CliError::internal(format!("cannot write output: {e}"))
}
