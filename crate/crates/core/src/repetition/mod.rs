//! Degenerate-repetition detection on per-token maximum logits.
//!
//! A window variance signal is computed over the trace, then the variance of that signal
//! from each position to the end. A trace is flagged once the suffix variance falls below a
//! threshold and stays there.

mod detector;
mod synthetic;
mod variance;

pub use detector::{detect_offline, detect_online, DetectorConfig, OnlineDetector, RepetitionVerdict};
pub use synthetic::{gen_synthetic_trace, TraceKind};
pub use variance::{var_end, var_win};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Longest trace a decoder may emit.
pub const MAX_TRACE_LEN: usize = 4096;

#[derive(Debug, Error, PartialEq)]
pub enum RepetitionError {
    #[error("trace is empty")]
    EmptyTrace,
    #[error("trace length {0} exceeds {MAX_TRACE_LEN}")]
    TooLong(usize),
    #[error("non-finite logit at index {0}")]
    NonFinite(usize),
    #[error("window size must be at least 2, got {0}")]
    WindowTooSmall(usize),
    #[error("trace of length {len} is too short for window {window}")]
    TraceTooShort { len: usize, window: usize },
    #[error("invalid detector configuration: {0}")]
    InvalidConfig(String),
}

/// Maximum logit of each generated token.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct LogitTrace {
    values: Vec<f64>,
}

impl LogitTrace {
    pub fn new(values: Vec<f64>) -> Result<Self, RepetitionError> {
        if values.is_empty() {
            return Err(RepetitionError::EmptyTrace);
        }
        if values.len() > MAX_TRACE_LEN {
            return Err(RepetitionError::TooLong(values.len()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(RepetitionError::NonFinite(i));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl TryFrom<Vec<f64>> for LogitTrace {
    type Error = RepetitionError;

    fn try_from(values: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(values)
    }
}

impl From<LogitTrace> for Vec<f64> {
    fn from(trace: LogitTrace) -> Self {
        trace.values
    }
}
