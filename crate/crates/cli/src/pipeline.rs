//! Config-driven custom runs.

use serde::{Deserialize, Serialize};
use serde_json::json;

use rinorm_core::gx::{concavity_suite, GFunctional};
use rinorm_core::lebesgue::{jumps, lebesgue_scan};
use rinorm_core::maximal::{level_set_measure, maximal_field, CandidateStrategy, Grid1D};
use rinorm_core::norms::rep_norm;
use rinorm_core::witness::{
    exp_probe, lorentz_h_witness, marcinkiewicz_extremal, verify_h_witness, HVerdict, HVerifyConfig, HWitness,
};
use rinorm_core::{sampling, ConcavePhi, NormSpec, StepFunction};

use crate::config::Overrides;
use crate::error::{CliError, Context, Result};
use crate::presets::geomspace;
use crate::report::{Curve, RunReport, Verdict};

/// Where the input function comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSource {
    Step { breakpoints: Vec<f64>, values: Vec<f64> },
    Indicator { a: f64, b: f64 },
    /// Needs a seed.
    Random { max_pieces: usize, max_value: f64 },
    LorentzWitness { p: f64, q: f64, c: f64, n: usize },
    MarcinkiewiczExtremal { phi: ConcavePhi, s_min: f64, s_max: f64, per_decade: usize },
    ExpProbe { s_min: f64, per_decade: usize },
}

impl FunctionSource {
    pub fn build(&self, seed: Option<u64>) -> Result<StepFunction> {
        match self {
            FunctionSource::Step { breakpoints, values } => {
                StepFunction::new(breakpoints.clone(), values.clone()).context("step function")
            }
            FunctionSource::Indicator { a, b } => StepFunction::indicator(*a, *b).context("indicator"),
            FunctionSource::Random { max_pieces, max_value } => {
                let seed = seed.ok_or_else(|| CliError::ConfigInvalid("a random function source needs a seed".into()))?;
                Ok(sampling::step_function(&mut sampling::rng(seed), *max_pieces, *max_value))
            }
            FunctionSource::LorentzWitness { p, q, c, n } => {
                Ok(lorentz_h_witness(*p, *q, *c, *n).context("Lorentz witness")?.f)
            }
            FunctionSource::MarcinkiewiczExtremal {
                phi,
                s_min,
                s_max,
                per_decade,
            } => marcinkiewicz_extremal(phi, *s_min, *s_max, *per_decade).context("extremal"),
            FunctionSource::ExpProbe { s_min, per_decade } => exp_probe(*s_min, *per_decade).context("probe"),
        }
    }
}

/// Decreasing radii `r_max ≥ … ≥ r_min`, geometric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiusGrid {
    pub r_max: f64,
    pub r_min: f64,
    pub count: usize,
}

fn default_threshold() -> f64 {
    1e-9
}

fn default_fraction() -> f64 {
    1.0
}

fn default_tol() -> f64 {
    1e-9
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Pipeline {
    /// Evaluate several norms of one function.
    Norms { function: FunctionSource, specs: Vec<NormSpec> },
    /// Sample `M_X u` on a grid and measure level sets.
    MaximalField {
        function: FunctionSource,
        spec: NormSpec,
        grid: Grid1D,
        #[serde(default)]
        candidates: Option<CandidateStrategy>,
        #[serde(default)]
        thresholds: Vec<f64>,
    },
    /// Oscillation scan at the nodes of `points`.
    LebesgueScan {
        function: FunctionSource,
        spec: NormSpec,
        points: Grid1D,
        radii: RadiusGrid,
        #[serde(default = "default_threshold")]
        threshold: f64,
        #[serde(default = "default_fraction")]
        min_pass_fraction: f64,
    },
    Concavity {
        functional: GFunctional,
        trials: usize,
        #[serde(default = "default_tol")]
        tol: f64,
    },
    /// Verify a user-supplied (H) witness.
    HWitness {
        witness: HWitness,
        spec: NormSpec,
        #[serde(default)]
        verify: HVerifyConfig,
    },
}

pub fn run_pipeline(p: &Pipeline, ov: Overrides) -> Result<RunReport> {
    if ov.n.is_some() {
        return Err(CliError::ConfigInvalid("--n applies to presets only".into()));
    }
    let mut r = RunReport::new("run", ov.seed, p);
    match p {
        Pipeline::Norms { function, specs } => {
            let u = function.build(ov.seed)?;
            let values = specs
                .iter()
                .map(|s| rep_norm(&u, s))
                .collect::<rinorm_core::Result<Vec<f64>>>()
                .context("norm evaluation")?;
            let finite = values.iter().all(|v| v.is_finite());
            r.check(
                "norms",
                finite,
                "every norm is finite",
                json!({ "labels": specs.iter().map(NormSpec::label).collect::<Vec<_>>(), "values": values }),
            );
            Ok(r.finish(Verdict::Pass))
        }
        Pipeline::MaximalField {
            function,
            spec,
            grid,
            candidates,
            thresholds,
        } => {
            let u = function.build(ov.seed)?;
            let cands = candidates.clone().unwrap_or(CandidateStrategy::AllPairs);
            let field = maximal_field(&u, spec, grid, &cands).context("maximal field")?;
            let measures: Vec<f64> = thresholds.iter().map(|&t| level_set_measure(&field, t)).collect();
            r.check(
                "field",
                !field.clipped && field.values.iter().all(|v| v.is_finite()),
                "field is finite and the support lies inside the grid",
                json!({ "clipped": field.clipped, "thresholds": thresholds, "level_set_measures": measures }),
            );
            r.curve(Curve::numeric(
                "field",
                &["x", "value"],
                field.rows().into_iter().map(|(x, v)| vec![x, v]),
            ));
            Ok(r.finish(Verdict::Pass))
        }
        Pipeline::LebesgueScan {
            function,
            spec,
            points,
            radii,
            threshold,
            min_pass_fraction,
        } => {
            let u = function.build(ov.seed)?;
            let mut rs = geomspace(radii.r_min, radii.r_max, radii.count);
            rs.reverse();
            let scan = lebesgue_scan(&u, spec, &points.nodes(), &rs, *threshold, &jumps(&u)).context("scan")?;
            r.check(
                "lebesgue_scan",
                scan.pass_fraction >= *min_pass_fraction,
                format!("pass fraction >= {min_pass_fraction}"),
                json!({ "pass_fraction": scan.pass_fraction, "excluded_measure": scan.excluded_measure }),
            );
            r.curve(Curve {
                name: "scan".into(),
                header: vec!["x".into(), "terminal_oscillation".into(), "pass".into()],
                rows: scan
                    .rows()
                    .into_iter()
                    .map(|(x, v, p)| vec![x.to_string(), v.to_string(), p.to_string()])
                    .collect(),
            });
            if let Some(c) = scan.curves.get(scan.curves.len() / 2) {
                r.curve(Curve::numeric(
                    "curve_mid",
                    &["r", "value"],
                    c.radii.iter().zip(&c.values).map(|(&a, &b)| vec![a, b]),
                ));
            }
            Ok(r.finish(Verdict::Pass))
        }
        Pipeline::Concavity { functional, trials, tol } => {
            let seed = ov
                .seed
                .ok_or_else(|| CliError::ConfigInvalid("the concavity pipeline needs a seed".into()))?;
            let suite = concavity_suite(functional, *trials, seed).context("concavity suite")?;
            r.check(
                "concavity",
                suite.min_ratio >= 1.0 - tol,
                format!("G ratio >= 1 - {tol}"),
                json!({ "min_ratio": suite.min_ratio, "max_ratio": suite.max_ratio, "worst_combo": suite.worst }),
            );
            Ok(r.finish(Verdict::Pass))
        }
        Pipeline::HWitness { witness, spec, verify } => {
            let report = verify_h_witness(witness, spec, verify).context("witness verification")?;
            let verdict = match report.verdict {
                HVerdict::ViolatesH => Verdict::CounterexampleConfirmed,
                HVerdict::NoViolation => Verdict::Pass,
            };
            r.check("h_witness", true, "verification ran", json!(report));
            Ok(r.finish(verdict))
        }
    }
}
