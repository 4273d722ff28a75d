//! Crate-wide error type and exit-code mapping for the CLI.

use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical parameter or option violates its constraints.
    #[error("invalid value for `{name}`: {message}")]
    InvalidParam { name: &'static str, message: String },

    /// Matrix or operator dimensions are inconsistent.
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    /// The receiving-qubit population has no interior maximum in the
    /// simulated window; distinct from a numerical failure.
    #[error("no transfer peak found within {window_end} ns")]
    NoPeak { window_end: f64 },

    /// The adaptive integrator could not continue.
    #[error("integration failed at t = {t} ns: {reason}")]
    Integration { t: f64, reason: String },

    /// A density-matrix population dropped below the physicality floor.
    #[error("state invariant breached at t = {t} ns: population {value} < -1e-6")]
    NegativeState { t: f64, value: f64 },

    /// Trace drift accumulated past the accepted bound.
    #[error("trace drift {drift} exceeded 1e-8 at t = {t} ns")]
    TraceDrift { t: f64, drift: f64 },

    /// Quality factor or effective coupling evaluated at a vanishing denominator.
    #[error("zero denominator in {context}")]
    ZeroDenominator { context: &'static str },

    /// Linear solve hit a numerically singular pivot.
    #[error("singular matrix in {context}")]
    SingularMatrix { context: &'static str },

    /// Config file syntax error.
    #[error("config parse error at line {line}: {message}")]
    Config { line: usize, message: String },

    /// Config value failed validation; names the offending key.
    #[error("config validation error for key `{key}`: {message}")]
    ConfigValidation { key: String, message: String },

    /// A figure preset name that is not recognised.
    #[error("unknown preset `{name}`; run `list-presets` for the available names")]
    UnknownPreset { name: String },

    /// Sweep grid exceeds the cell budget.
    #[error("sweep grid of {cells} cells exceeds the limit of {max}")]
    GridTooLarge { cells: usize, max: usize },

    /// A line plot was asked to draw more series than it supports.
    #[error("line plot supports at most {max} series, got {count}")]
    SeriesOverflow { count: usize, max: usize },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// CLI exit code: 1 for validation/user errors, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoPeak { .. }
            | Error::Integration { .. }
            | Error::NegativeState { .. }
            | Error::TraceDrift { .. }
            | Error::ZeroDenominator { .. }
            | Error::SingularMatrix { .. } => 2,
            _ => 1,
        }
    }
}
