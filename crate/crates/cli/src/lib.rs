//! Library half of the `fxnet` command-line tool: configuration handling,
//! the parallel rolling-window driver and the on-disk result formats. The
//! binary in `main.rs` is a thin argument-parsing wrapper over this crate so
//! integration tests can drive the exact code paths the executable runs.

pub mod commands;
pub mod config;
pub mod format;
pub mod io;
pub mod pipeline;

use std::fmt;

/// Errors split by exit code: bad input or usage exits 2, internal faults
/// exit 1.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        CliError::Internal(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<fxnet_core::returns::IngestError> for CliError {
    fn from(e: fxnet_core::returns::IngestError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<fxnet_core::network::NetworkError> for CliError {
    fn from(e: fxnet_core::network::NetworkError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<fxnet_core::evolution::EvolutionError> for CliError {
    fn from(e: fxnet_core::evolution::EvolutionError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<fxnet_core::dependence::DependenceError> for CliError {
    fn from(e: fxnet_core::dependence::DependenceError) -> Self {
        CliError::Input(e.to_string())
    }
}
