//! `fxnet` — rolling-window nonlinear currency network analysis.

use clap::{Args, Parser, Subcommand};
use fxnet_cli::config::{
    resolve, ConfigFile, RunConfig, DEFAULT_FILE_BASE, DEFAULT_K, DEFAULT_REPETITIONS,
    DEFAULT_RIDGE, DEFAULT_SEED, DEFAULT_SMOOTHING, DEFAULT_WINDOW,
};
use fxnet_cli::{commands, CliError};
use fxnet_core::dependence::{RdcParams, SMode};
use fxnet_core::network::Measure;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fxnet",
    version,
    about = "Nonlinear dependence networks over currency return series",
    long_about = "Measures pairwise dependence between currency return series with the \
randomized dependence coefficient (or a Pearson baseline), filters each rolling window's \
dependence matrix into a minimum spanning tree, and derives degree rankings, smoothed degree \
series, concentration measures and intracontinental link fractions from the resulting \
network sequence."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dependence coefficient between two columns of a delimited file
    Rdc(RdcArgs),
    /// Run the rolling-window pipeline and write all result files
    Evolve(EvolveArgs),
    /// Degree ranking recomputed from a finished run directory
    Rank(RankArgs),
    /// Plot-ready degree series from a finished run directory
    Plotdata(PlotdataArgs),
}

#[derive(Args)]
struct CommonParams {
    /// Random features per sample
    #[arg(long)]
    k: Option<usize>,
    /// Independent repetitions; the median is reported
    #[arg(long)]
    reps: Option<usize>,
    /// Ridge added to the within-set covariances in the CCA step
    #[arg(long)]
    ridge: Option<f64>,
    /// Root random seed (never wall clock)
    #[arg(long)]
    seed: Option<u64>,
    /// key = value config file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct RdcArgs {
    /// Delimited input file with a header row
    #[arg(long)]
    input: PathBuf,
    /// Column name for the first sample
    #[arg(long)]
    x: String,
    /// Column name for the second sample
    #[arg(long)]
    y: String,
    #[command(flatten)]
    common: CommonParams,
}

#[derive(Args)]
struct EvolveArgs {
    /// Rate table: `date` column plus one column per currency
    #[arg(long)]
    input: Option<PathBuf>,
    /// Denomination of the input file's quotes
    #[arg(long)]
    file_base: Option<String>,
    /// Denomination to run the analysis in (a column of the file, or the
    /// file base itself)
    #[arg(long)]
    base: Option<String>,
    /// Dependence measure: rdc or pearson
    #[arg(long)]
    measure: Option<String>,
    /// Window length in return rows
    #[arg(long)]
    window: Option<usize>,
    /// Networks averaged per smoothed series point
    #[arg(long)]
    smoothing: Option<usize>,
    /// Continent map file (`CCY,Continent` lines); defaults to the built-in
    /// panel mapping
    #[arg(long)]
    continents: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Restrict rankings to one calendar year (informational; rankings.csv
    /// always carries every period)
    #[arg(long)]
    year: Option<i32>,
    /// Worker threads (default: all available)
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    common: CommonParams,
}

#[derive(Args)]
struct RankArgs {
    /// Finished run directory (from `fxnet evolve --out`)
    #[arg(long)]
    out: PathBuf,
    /// Calendar year; omit for the whole period
    #[arg(long)]
    year: Option<i32>,
}

#[derive(Args)]
struct PlotdataArgs {
    /// Finished run directory (from `fxnet evolve --out`)
    #[arg(long)]
    out: PathBuf,
    /// Comma-separated currency codes; a pair also reports its correlation
    #[arg(long, value_delimiter = ',')]
    currencies: Vec<String>,
    /// Smoothing window (default: the run's configured smoothing)
    #[arg(long)]
    smoothing: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Rdc(args) => run_rdc(args),
        Command::Evolve(args) => run_evolve(args),
        Command::Rank(args) => {
            commands::cmd_rank(&args.out, args.year, &mut std::io::stdout().lock())
        }
        Command::Plotdata(args) => commands::cmd_plotdata(
            &args.out,
            &args.currencies,
            args.smoothing,
            &mut std::io::stdout().lock(),
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load_config(common: &CommonParams) -> Result<ConfigFile, CliError> {
    match &common.config {
        Some(path) => ConfigFile::load(path),
        None => Ok(ConfigFile::default()),
    }
}

fn rdc_params(common: &CommonParams, file: &ConfigFile) -> Result<RdcParams, CliError> {
    Ok(RdcParams {
        k: resolve(common.k, file.typed("k")?, DEFAULT_K),
        s_mode: SMode::MedianHeuristic,
        repetitions: resolve(common.reps, file.typed("reps")?, DEFAULT_REPETITIONS),
        ridge: resolve(common.ridge, file.typed("ridge")?, DEFAULT_RIDGE),
        seed: resolve(common.seed, file.typed("seed")?, DEFAULT_SEED),
    })
}

fn run_rdc(args: RdcArgs) -> Result<(), CliError> {
    let file = load_config(&args.common)?;
    let params = rdc_params(&args.common, &file)?;
    params
        .validate()
        .map_err(|e| CliError::input(e.to_string()))?;
    commands::cmd_rdc(
        &args.input,
        &args.x,
        &args.y,
        &params,
        &mut std::io::stdout().lock(),
    )
}

fn run_evolve(args: EvolveArgs) -> Result<(), CliError> {
    let file = load_config(&args.common)?;
    let params = rdc_params(&args.common, &file)?;

    let input = args
        .input
        .or_else(|| file.get("input").map(PathBuf::from))
        .ok_or_else(|| CliError::input("evolve needs --input (or `input` in the config file)"))?;
    let out = args
        .out
        .or_else(|| file.get("out").map(PathBuf::from))
        .ok_or_else(|| CliError::input("evolve needs --out (or `out` in the config file)"))?;
    let file_base = resolve(
        args.file_base,
        file.get("file_base").map(String::from),
        DEFAULT_FILE_BASE.to_string(),
    );
    let base = resolve(args.base, file.get("base").map(String::from), file_base.clone());
    let measure_text = resolve(
        args.measure,
        file.get("measure").map(String::from),
        "rdc".to_string(),
    );
    let measure: Measure = measure_text
        .parse()
        .map_err(|e: fxnet_core::network::NetworkError| CliError::input(e.to_string()))?;

    let config = RunConfig {
        input,
        file_base,
        base,
        measure,
        window: resolve(args.window, file.typed("window")?, DEFAULT_WINDOW),
        smoothing: resolve(args.smoothing, file.typed("smoothing")?, DEFAULT_SMOOTHING),
        k: params.k,
        repetitions: params.repetitions,
        ridge: params.ridge,
        seed: params.seed,
        continents: args
            .continents
            .or_else(|| file.get("continents").map(PathBuf::from)),
        out,
        year: args.year.or(file.typed("year")?),
        jobs: resolve(args.jobs, file.typed("jobs")?, 0),
    };
    commands::cmd_evolve(&config, &mut std::io::stdout().lock())
}
