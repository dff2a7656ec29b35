use thiserror::Error;

use crate::simulate::Trajectory;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    Dimension {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid argument `{name}`: {reason}")]
    Argument { name: &'static str, reason: String },

    /// Argument outside the mathematical domain (e.g. Y_n at x <= 0).
    #[error("{function} is undefined at x = {x}")]
    Domain { function: &'static str, x: f64 },

    /// Argument outside the supported evaluation window.
    #[error("{function}: |x| = {x} outside the supported range (limit {limit})")]
    Range {
        function: &'static str,
        x: f64,
        limit: f64,
    },

    #[error("initial attitude is zero; use the degenerate (theta = 0) solution instead")]
    DegenerateAttitude,

    #[error("trajectory diverged at t = {t}: guarded norm {norm:e} exceeded {limit:e}")]
    Divergence {
        t: f64,
        norm: f64,
        limit: f64,
        partial: Box<Trajectory>,
    },

    #[error("adaptive step size fell below {h_min:e} at t = {t}")]
    StepFloor {
        t: f64,
        h_min: f64,
        partial: Box<Trajectory>,
    },

    #[error("switching condition not reached before t_end = {t_end}")]
    SwitchTimeout {
        t_end: f64,
        partial: Box<Trajectory>,
    },

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn argument(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Argument {
            name,
            reason: reason.into(),
        }
    }

    /// The partial trajectory carried by integration failures, if any.
    pub fn partial_trajectory(&self) -> Option<&Trajectory> {
        match self {
            Error::Divergence { partial, .. }
            | Error::StepFloor { partial, .. }
            | Error::SwitchTimeout { partial, .. } => Some(partial),
            _ => None,
        }
    }
}
