use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::backend::{self, DenseBlock};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorNorm {
    #[default]
    MeanAbsolute,
    Supremum,
}

impl ErrorNorm {
    pub fn measure(self, diffs: &[f64]) -> f64 {
        match self {
            ErrorNorm::MeanAbsolute if diffs.is_empty() => 0.0,
            ErrorNorm::MeanAbsolute => backend::l1(diffs) / diffs.len() as f64,
            ErrorNorm::Supremum => backend::sup(diffs),
        }
    }
}

impl FromStr for ErrorNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mabs" | "mean_absolute" => Ok(ErrorNorm::MeanAbsolute),
            "sup" | "supremum" => Ok(ErrorNorm::Supremum),
            other => Err(Error::InvalidParameter(format!("unknown error norm `{other}`"))),
        }
    }
}

impl fmt::Display for ErrorNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorNorm::MeanAbsolute => "mean_absolute",
            ErrorNorm::Supremum => "supremum",
        })
    }
}

/// Stopping rule shared by the iterative filters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceManager {
    tol: f64,
    max_iters: usize,
    error_norm: ErrorNorm,
}

impl Default for ConvergenceManager {
    fn default() -> Self {
        ConvergenceManager {
            tol: 1e-9,
            max_iters: 1000,
            error_norm: ErrorNorm::MeanAbsolute,
        }
    }
}

/// Outcome of one filter invocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationReport {
    pub iterations: usize,
    pub last_error: f64,
}

impl ConvergenceManager {
    pub fn new(tol: f64, max_iters: usize, error_norm: ErrorNorm) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("tol must be positive, got {tol}")));
        }
        if max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be positive".into()));
        }
        Ok(ConvergenceManager {
            tol,
            max_iters,
            error_norm,
        })
    }

    pub fn with_tol(self, tol: f64) -> Result<Self> {
        ConvergenceManager::new(tol, self.max_iters, self.error_norm)
    }

    pub fn with_max_iters(self, max_iters: usize) -> Result<Self> {
        ConvergenceManager::new(self.tol, max_iters, self.error_norm)
    }

    pub fn with_error_norm(self, error_norm: ErrorNorm) -> Self {
        ConvergenceManager { error_norm, ..self }
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_iters(&self) -> usize {
        self.max_iters
    }

    pub fn error_norm(&self) -> ErrorNorm {
        self.error_norm
    }

    /// Fresh per-call iteration state.
    pub fn start(&self) -> ConvergenceRun {
        ConvergenceRun {
            manager: *self,
            iterations: 0,
            last_error: f64::INFINITY,
        }
    }
}

#[derive(Debug)]
pub struct ConvergenceRun {
    manager: ConvergenceManager,
    iterations: usize,
    last_error: f64,
}

impl ConvergenceRun {
    /// Records one iteration with the given error. Returns `Ok(true)` once
    /// the error drops below tolerance, and fails when the iteration budget
    /// is spent first.
    pub fn step(&mut self, error: f64) -> Result<bool> {
        self.iterations += 1;
        self.last_error = error;
        if !error.is_finite() {
            return Err(Error::NonFinite);
        }
        if error < self.manager.tol {
            return Ok(true);
        }
        if self.iterations >= self.manager.max_iters {
            return Err(Error::NonConvergence {
                iterations: self.iterations,
                last_error: error,
            });
        }
        Ok(false)
    }

    /// Worst per-column error between two consecutive iterates.
    pub fn block_error(&self, previous: &DenseBlock, next: &DenseBlock) -> f64 {
        next.column_abs_diffs(previous)
            .iter()
            .map(|d| self.manager.error_norm.measure(d))
            .fold(0.0, f64::max)
    }

    pub fn report(&self) -> IterationReport {
        IterationReport {
            iterations: self.iterations,
            last_error: self.last_error,
        }
    }
}
