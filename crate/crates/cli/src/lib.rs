//! Experiment harness behind the `ssq` binary.
//!
//! Four commands drive the library: `demo-laplace` solves the interior
//! Dirichlet problem on the starfish and maps the error field on a grid,
//! `converge` sweeps node counts against near-boundary targets for every
//! kernel, `decay` dumps the Fourier decay of the plain and regularized
//! integrands, and `eval` evaluates a single layer potential and reports
//! the dispatch diagnostics as JSON.
//!
//! Everything is a pure function from a [`config::RunConfig`] (plus
//! per-command extras) to row vectors, so the commands are equally usable
//! from tests; file writing and flag parsing live at the edges.

pub mod commands;
pub mod config;
pub mod io;
pub mod refs;

pub use config::{ForceMode, GeometryChoice, KernelChoice, OutputFormat, RunConfig, SideChoice};

/// Errors at the command level, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration (exit code 2).
    Config(String),
    /// Numerical failure such as a singular system or an on-curve target
    /// (exit code 3).
    Numeric(String),
    /// File I/O failure with path context (exit code 1).
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "invalid configuration: {msg}"),
            CliError::Numeric(msg) => write!(f, "numerical failure: {msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ssq_core::Error> for CliError {
    fn from(err: ssq_core::Error) -> Self {
        CliError::Numeric(err.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
