use crate::UsageError;
use anyhow::{Context, Result};
use docpair_core::align::AlignConfig;
use docpair_core::augment::AugmentConfig;
use docpair_core::repetition::DetectorConfig;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Settings for every subcommand, read from a TOML file.
///
/// ```toml
/// seed = 7
///
/// [align]
/// accept_threshold = 0.9
///
/// [augment]
/// noise_prob = 0.2
///
/// [detector]
/// threshold = 6.75
/// ```
///
/// `augment.seed` is replaced per image by the derived item seed.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub seed: u64,
    pub align: AlignConfig,
    pub augment: AugmentConfig,
    pub detector: DetectorConfig,
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        let config: Self =
            toml::from_str(&text).map_err(|e| UsageError(format!("invalid config {}: {e}", path.display())))?;
        config
            .validate()
            .with_context(|| format!("in config {}", path.display()))?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let usage = |e: &dyn std::fmt::Display| UsageError(e.to_string());
        self.align.validate().map_err(|e| usage(&e))?;
        self.augment.validate().map_err(|e| usage(&e))?;
        self.detector.validate().map_err(|e| usage(&e))?;
        Ok(())
    }
}
