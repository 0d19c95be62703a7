//! Run configuration: defaults, config file, flag overrides.

use crate::CliError;
use fxnet_core::dependence::{RdcParams, SMode};
use fxnet_core::network::Measure;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const DEFAULT_WINDOW: usize = 100;
pub const DEFAULT_SMOOTHING: usize = 30;
pub const DEFAULT_K: usize = 10;
pub const DEFAULT_REPETITIONS: usize = 5;
pub const DEFAULT_RIDGE: f64 = 0.03;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_FILE_BASE: &str = "XAG";

/// Everything a pipeline run needs, fully resolved.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    /// Denomination of the input file's quotes.
    pub file_base: String,
    /// Denomination the analysis runs in (equal to `file_base` or one of the
    /// input columns).
    pub base: String,
    pub measure: Measure,
    pub window: usize,
    pub smoothing: usize,
    pub k: usize,
    pub repetitions: usize,
    pub ridge: f64,
    pub seed: u64,
    pub continents: Option<PathBuf>,
    pub out: PathBuf,
    pub year: Option<i32>,
    /// Worker threads; 0 means "all available".
    pub jobs: usize,
}

impl RunConfig {
    pub fn rdc_params(&self) -> RdcParams {
        RdcParams {
            k: self.k,
            s_mode: SMode::MedianHeuristic,
            repetitions: self.repetitions,
            seed: self.seed,
            ridge: self.ridge,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.window < 2 {
            return Err(CliError::input(format!(
                "window must be at least 2, got {}",
                self.window
            )));
        }
        if self.smoothing < 1 {
            return Err(CliError::input("smoothing must be at least 1"));
        }
        self.rdc_params()
            .validate()
            .map_err(|e| CliError::input(e.to_string()))
    }
}

/// A parsed `key = value` config file. Keys use the flag names with either
/// dashes or underscores; `#` starts a comment.
#[derive(Clone, Debug, Default)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

const KNOWN_KEYS: &[&str] = &[
    "input",
    "file_base",
    "base",
    "measure",
    "window",
    "smoothing",
    "k",
    "reps",
    "ridge",
    "seed",
    "continents",
    "out",
    "year",
    "jobs",
    "x",
    "y",
];

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", idx + 1))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key `{key}`", idx + 1));
            }
            if values.insert(key.clone(), value).is_some() {
                return Err(format!("line {}: duplicate key `{key}`", idx + 1));
            }
        }
        Ok(ConfigFile { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Parse an optional typed value out of the file.
    pub fn typed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|e| {
                CliError::input(format!("config key `{key}`: cannot parse `{raw}`: {e}"))
            }),
        }
    }
}

/// Resolve one setting from flag, config file, then default.
pub fn resolve<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}
