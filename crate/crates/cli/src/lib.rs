//! Batch front-end for `rinorm-core`: named presets, config-driven runs and
//! JSON/CSV report emission.

pub mod config;
pub mod error;
pub mod pipeline;
pub mod presets;
pub mod report;

use std::time::Instant;

pub use config::{ExperimentConfig, Overrides};
pub use error::{CliError, Result};
pub use presets::{run_preset, PRESETS};
pub use report::{emit_report, RunReport, Verdict};

/// Runs `target` (a preset name or `run`) with an optional config.
pub fn run_target(target: &str, config: Option<ExperimentConfig>, overrides: Overrides) -> Result<RunReport> {
    let start = Instant::now();
    let cfg = config.unwrap_or_default();
    let ov = Overrides {
        seed: overrides.seed.or(cfg.seed),
        n: overrides.n,
    };
    let mut report = if target == "run" {
        match (&cfg.preset, &cfg.pipeline) {
            (Some(name), None) => run_preset(name, cfg.params.clone(), ov)?,
            (None, Some(p)) => pipeline::run_pipeline(p, ov)?,
            _ => return Err(CliError::ConfigInvalid("`run` needs a config with a preset or a pipeline".into())),
        }
    } else {
        if !PRESETS.contains(&target) {
            return Err(CliError::UnknownPreset(target.to_string()));
        }
        if cfg.pipeline.is_some() || cfg.preset.as_deref().is_some_and(|p| p != target) {
            return Err(CliError::ConfigInvalid(format!("config does not describe preset `{target}`")));
        }
        run_preset(target, cfg.params, ov)?
    };
    report.elapsed = start.elapsed();
    Ok(report)
}
