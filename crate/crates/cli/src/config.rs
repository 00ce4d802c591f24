use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, Result};
use crate::pipeline::Pipeline;

pub const SCHEMA_VERSION: u32 = 1;

fn current_schema() -> u32 {
    SCHEMA_VERSION
}

/// Contents of a `--config` file.
///
/// ```json
/// {"schema_version": 1, "preset": "lorentz-pq", "seed": 7, "params": {"p": 1, "q": 2}}
/// {"schema_version": 1, "pipeline": {"kind": "norms", "function": {...}, "specs": [...]}}
/// ```
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "current_schema")]
    pub schema_version: u32,
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub params: Map<String, Value>,
    #[serde(default)]
    pub pipeline: Option<Pipeline>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::ConfigInvalid(e.to_string()))?;
        if !value.is_object() {
            return Err(CliError::ConfigInvalid("config must be a JSON object".into()));
        }
        let cfg: Self = serde_json::from_value(value).map_err(|e| CliError::ConfigInvalid(e.to_string()))?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(CliError::ConfigInvalid(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                cfg.schema_version
            )));
        }
        if cfg.preset.is_some() && cfg.pipeline.is_some() {
            return Err(CliError::ConfigInvalid("give either `preset` or `pipeline`, not both".into()));
        }
        if cfg.pipeline.is_some() && !cfg.params.is_empty() {
            return Err(CliError::ConfigInvalid("`params` only applies to presets".into()));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::IoFailure {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }
}

/// Command-line values that override the config file.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub n: Option<usize>,
}
