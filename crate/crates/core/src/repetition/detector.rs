use super::{var_end, var_win, LogitTrace, RepetitionError};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorConfig {
    /// Sliding window size B.
    pub window: usize,
    pub threshold: f64,
    /// Number of trailing tokens inspected during generation.
    pub online_window: usize,
    pub online_threshold: f64,
    /// Minimum number of trailing suffix-variance positions that must sit below the
    /// threshold. The last position is always zero, so some minimum is needed.
    pub min_run: usize,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            window: 15,
            threshold: 6.75,
            online_window: 200,
            online_threshold: 3.375,
            min_run: 80,
        }
    }
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<(), RepetitionError> {
        if self.window < 2 {
            return Err(RepetitionError::WindowTooSmall(self.window));
        }
        if self.online_window <= self.window {
            return Err(RepetitionError::InvalidConfig(format!(
                "online_window {} must exceed window {}",
                self.online_window, self.window
            )));
        }
        for (name, t) in [
            ("threshold", self.threshold),
            ("online_threshold", self.online_threshold),
        ] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(RepetitionError::InvalidConfig(format!(
                    "{name} must be positive, got {t}"
                )));
            }
        }
        if self.min_run == 0 {
            return Err(RepetitionError::InvalidConfig("min_run must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepetitionVerdict {
    pub repeating: bool,
    pub onset: Option<usize>,
}

impl RepetitionVerdict {
    fn from_onset(onset: Option<usize>) -> Self {
        Self {
            repeating: onset.is_some(),
            onset,
        }
    }
}

/// Start of the trailing run of suffix variances below `threshold`, if that run spans at
/// least `min_run` positions.
fn trailing_onset(
    values: &[f64],
    window: usize,
    threshold: f64,
    min_run: usize,
) -> Result<Option<usize>, RepetitionError> {
    let ve = var_end(&var_win(values, window)?);
    let onset = ve.iter().rposition(|&v| v >= threshold).map_or(0, |i| i + 1);
    Ok((ve.len() - onset >= min_run).then_some(onset))
}

/// Full-trace check. Short traces only need their whole suffix signal below threshold.
pub fn detect_offline(trace: &LogitTrace, config: &DetectorConfig) -> Result<RepetitionVerdict, RepetitionError> {
    config.validate()?;
    if trace.len() < config.window + 1 {
        return Err(RepetitionError::TraceTooShort {
            len: trace.len(),
            window: config.window,
        });
    }
    let signal_len = trace.len() - config.window + 1;
    let onset = trailing_onset(
        trace.values(),
        config.window,
        config.threshold,
        config.min_run.min(signal_len),
    )?;
    Ok(RepetitionVerdict::from_onset(onset))
}

/// Stop signal for the trailing `online_window` values of a trace under generation.
pub fn detect_online(recent: &[f64], config: &DetectorConfig) -> bool {
    let start = recent.len().saturating_sub(config.online_window);
    online_check(&recent[start..], config)
}

fn online_check(window: &[f64], config: &DetectorConfig) -> bool {
    if window.len() < config.window + 1 || window.len() + 1 < config.window + config.min_run {
        return false;
    }
    matches!(
        trailing_onset(window, config.window, config.online_threshold, config.min_run),
        Ok(Some(_))
    )
}

/// Streaming detector fed one logit per generated token.
#[derive(Debug, Clone)]
pub struct OnlineDetector {
    config: DetectorConfig,
    recent: VecDeque<f64>,
    seen: usize,
}

impl OnlineDetector {
    pub fn new(config: DetectorConfig) -> Result<Self, RepetitionError> {
        config.validate()?;
        Ok(Self {
            recent: VecDeque::with_capacity(config.online_window),
            config,
            seen: 0,
        })
    }

    /// Records the next logit and reports whether generation should stop.
    pub fn push(&mut self, value: f64) -> bool {
        if self.recent.len() == self.config.online_window {
            self.recent.pop_front();
        }
        self.recent.push_back(value);
        self.seen += 1;
        online_check(self.recent.make_contiguous(), &self.config)
    }

    pub fn tokens_seen(&self) -> usize {
        self.seen
    }
}
