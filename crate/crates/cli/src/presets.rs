//! Named experiments. Each preset runs the property direction when its
//! parameters satisfy the hypothesis, and the designated counterexample
//! otherwise.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use rinorm_core::gx::{concavity_suite, GFunctional};
use rinorm_core::lebesgue::{jumps, lebesgue_scan};
use rinorm_core::maximal::{
    level_set_measure, maximal_field, riesz_wiener_profile, superlevel_union_measure, CandidateStrategy,
    EstimateReport, Grid1D, Layout,
};
use rinorm_core::norms::rep_norm;
use rinorm_core::witness::{
    exp_probe, harmonic, lac_probe, lorentz_h_witness, marcinkiewicz_extremal, orlicz_h_chain,
    random_orlicz_attempt, transplant, verify_h_witness, witness_from_non_lac, HVerdict, HVerifyConfig, HWitness,
};
use rinorm_core::{sampling, ConcavePhi, NormSpec, StepFunction, YoungFunction};

use crate::config::Overrides;
use crate::error::{CliError, Context, Result};
use crate::report::{Curve, RunReport, Verdict};

pub const PRESETS: [&str; 6] = [
    "lorentz-pq",
    "orlicz-delta2",
    "lambda-phi",
    "marcinkiewicz",
    "riesz-wiener",
    "levelset",
];

pub fn run_preset(name: &str, params: Map<String, Value>, overrides: Overrides) -> Result<RunReport> {
    match name {
        "lorentz-pq" => lorentz_pq(parse(name, params)?, overrides),
        "orlicz-delta2" => orlicz_delta2(parse(name, params)?, overrides),
        "lambda-phi" => lambda_phi(parse(name, params)?, overrides),
        "marcinkiewicz" => marcinkiewicz(parse(name, params)?, overrides),
        "riesz-wiener" => riesz_wiener(parse(name, params)?, overrides),
        "levelset" => levelset(parse(name, params)?, overrides),
        other => Err(CliError::UnknownPreset(other.to_string())),
    }
}

fn parse<P: DeserializeOwned>(preset: &str, params: Map<String, Value>) -> Result<P> {
    serde_json::from_value(Value::Object(params)).map_err(|e| CliError::ConfigInvalid(format!("{preset} params: {e}")))
}

fn require_seed(seed: Option<u64>, preset: &str) -> Result<u64> {
    seed.ok_or_else(|| CliError::ConfigInvalid(format!("{preset} runs a randomized suite and needs a seed")))
}

/// `count` points spaced geometrically over `[lo, hi]`, increasing.
pub fn geomspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![lo];
    }
    let ratio = (hi / lo).ln();
    let mut v: Vec<f64> = (0..count)
        .map(|i| lo * (ratio * i as f64 / (count - 1) as f64).exp())
        .collect();
    v[count - 1] = hi;
    v
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

fn estimate_curve(name: String, est: &EstimateReport, header: [&str; 2]) -> Curve {
    Curve::numeric(name, &header, est.xs.iter().zip(&est.values).map(|(&x, &v)| vec![x, v]))
}

/// Riesz-Wiener sup-ratio of `u` on `grid` with the all-pairs candidates.
fn rw_estimate<L: Layout + ?Sized>(u: &L, spec: &NormSpec, grid: Grid1D, ss: &[f64]) -> Result<EstimateReport> {
    let field = maximal_field(u, spec, &grid, &CandidateStrategy::AllPairs).context("maximal field")?;
    riesz_wiener_profile(u, spec, &field, ss).context("Riesz-Wiener profile")
}

/// Level-set lower bound at `t` for the transplanted witness.
fn union_measure(w: &HWitness, spec: &NormSpec, t: f64) -> Result<f64> {
    let layout = transplant(w, 0.0).context("transplant")?;
    superlevel_union_measure(&layout, spec, &layout.balls, t).context("level set")
}

fn prefix(w: &HWitness, m: usize) -> Result<HWitness> {
    HWitness::new(w.f.clone(), w.intervals[..m].to_vec(), w.weights[..m].to_vec()).context("witness prefix")
}

/// `[n/4, n/2, n]` without repeats or zeros.
fn truncations(n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = [n / 4, n / 2, n].into_iter().filter(|&m| m > 0).collect();
    v.dedup();
    v
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LorentzPqParams {
    pub p: f64,
    pub q: f64,
    /// Witness height constant, must exceed `(q/p)^{1/q}`.
    pub c: f64,
    /// Witness truncation `N`.
    pub n: usize,
    pub trials: usize,
    pub concavity_tol: f64,
    pub witness_tol: f64,
    pub rw_grid_n: usize,
    pub rw_tolerance: f64,
}

impl Default for LorentzPqParams {
    fn default() -> Self {
        Self {
            p: 2.0,
            q: 1.0,
            c: 1.5,
            n: 16,
            trials: 200,
            concavity_tol: 1e-9,
            witness_tol: 1e-9,
            rw_grid_n: 256,
            rw_tolerance: 0.2,
        }
    }
}

fn lorentz_pq(mut prm: LorentzPqParams, ov: Overrides) -> Result<RunReport> {
    if let Some(n) = ov.n {
        prm.n = n;
    }
    let spec = NormSpec::lorentz(prm.p, prm.q).context("lorentz-pq spec")?;
    let normed = 1.0 <= prm.q && prm.q <= prm.p && prm.p.is_finite();
    let quasi = 1.0 <= prm.p && prm.p < prm.q && prm.q.is_finite();
    if normed {
        let seed = require_seed(ov.seed, "lorentz-pq")?;
        let mut r = RunReport::new("lorentz-pq", Some(seed), &prm);
        concavity_check(&mut r, &GFunctional::Representation { spec }, prm.trials, seed, prm.concavity_tol)?;
        rw_stability_check(&mut r, &spec, prm.rw_grid_n, prm.rw_tolerance)?;
        Ok(r.finish(Verdict::Pass))
    } else if quasi {
        let mut r = RunReport::new("lorentz-pq", ov.seed, &prm);
        let w = lorentz_h_witness(prm.p, prm.q, prm.c, prm.n).context("Lorentz witness")?;
        let expected = prm.c * (prm.p / prm.q).powf(1.0 / prm.q);
        let norms = (0..w.len())
            .map(|k| w.piece_norm(k, &spec))
            .collect::<rinorm_core::Result<Vec<f64>>>()
            .context("piece norms")?;
        let dev = norms.iter().map(|v| (v - expected).abs()).fold(0.0, f64::max);
        r.check(
            "witness_piece_norms",
            dev <= prm.witness_tol && expected > 1.0,
            format!("every averaged piece norm equals c(p/q)^(1/q) > 1 within {}", prm.witness_tol),
            json!({ "expected": expected, "max_deviation": dev, "piece_norms": norms, "witness": w }),
        );
        let sum: f64 = w.weights.iter().sum();
        let h = harmonic(prm.n);
        r.check(
            "weights_sum_harmonic",
            (sum - h).abs() <= 1e-12,
            "sum of a_k equals H_N within 1e-12",
            json!({ "sum": sum, "harmonic": h }),
        );
        levelset_growth_check(&mut r, &spec, &truncations(prm.n), |m| {
            lorentz_h_witness(prm.p, prm.q, prm.c, m).context("Lorentz witness")
        })?;
        Ok(r.finish(Verdict::CounterexampleConfirmed))
    } else {
        Err(CliError::ConfigInvalid(format!(
            "lorentz-pq needs 1 <= q <= p < inf or 1 <= p < q < inf, got p={}, q={}",
            prm.p, prm.q
        )))
    }
}

fn concavity_check(r: &mut RunReport, g: &GFunctional, trials: usize, seed: u64, tol: f64) -> Result<()> {
    let suite = concavity_suite(g, trials, seed).context("concavity suite")?;
    r.check(
        "concavity",
        suite.min_ratio >= 1.0 - tol,
        format!("G ratio >= 1 - {tol} on {trials} random combos"),
        json!({
            "functional": g.label(),
            "min_ratio": suite.min_ratio,
            "max_ratio": suite.max_ratio,
            "worst_combo": suite.worst,
        }),
    );
    Ok(())
}

const RW_DOMAIN: (f64, f64) = (-2.0, 3.0);

fn rw_stability_check(r: &mut RunReport, spec: &NormSpec, grid_n: usize, tol: f64) -> Result<()> {
    let u = StepFunction::indicator(0.0, 1.0).context("indicator")?;
    let ss = geomspace(0.05, 4.5, 40);
    let coarse = rw_estimate(&u, spec, Grid1D::new(RW_DOMAIN.0, RW_DOMAIN.1, grid_n).context("grid")?, &ss)?;
    let fine = rw_estimate(&u, spec, Grid1D::new(RW_DOMAIN.0, RW_DOMAIN.1, 2 * grid_n).context("grid")?, &ss)?;
    let gap = rel_gap(coarse.sup, fine.sup);
    let tag = spec.label().replace(['^', '{', '}', ','], "");
    r.check(
        &format!("riesz_wiener_stable_{tag}"),
        gap <= tol,
        format!("sup-ratio for u = indicator of (0,1) moves by at most {tol} between grids n and 2n"),
        json!({ "spec": spec, "grid_n": grid_n, "sup_coarse": coarse.sup, "sup_fine": fine.sup, "relative_gap": gap }),
    );
    r.curve(estimate_curve(format!("rw_{tag}_{grid_n}"), &coarse, ["s", "ratio"]));
    r.curve(estimate_curve(format!("rw_{tag}_{}", 2 * grid_n), &fine, ["s", "ratio"]));
    Ok(())
}

fn levelset_growth_check(
    r: &mut RunReport,
    spec: &NormSpec,
    ns: &[usize],
    witness: impl Fn(usize) -> Result<HWitness>,
) -> Result<()> {
    let mut rows = Vec::new();
    let mut measures = Vec::new();
    let mut dominated = true;
    for &m in ns {
        let w = witness(m)?;
        let sum: f64 = w.weights.iter().sum();
        let measure = union_measure(&w, spec, 1.0)?;
        dominated &= measure >= sum;
        measures.push(measure);
        rows.push(vec![m as f64, measure, sum]);
    }
    r.check(
        "levelset_growth",
        dominated && strictly_increasing(&measures),
        "union of balls with averaged norm > 1 has measure >= sum of a_k, strictly increasing in N",
        json!({ "truncations": ns, "union_measures": measures }),
    );
    r.curve(Curve::numeric("levelset", &["n", "union_measure", "weight_sum"], rows));
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrliczParams {
    pub young: YoungFunction,
    pub attempts: usize,
    pub max_intervals: usize,
    /// Refinements of the probe used for the divergence check.
    pub refinements: Vec<f64>,
    pub lambda: f64,
    pub probe_s_min: f64,
    pub probe_per_decade: usize,
    pub probe_t_min: f64,
    pub floor: f64,
}

impl Default for OrliczParams {
    fn default() -> Self {
        Self {
            young: YoungFunction::Power { p: 2.0 },
            attempts: 200,
            max_intervals: 6,
            refinements: vec![1e-10, 1e-20, 1e-30],
            lambda: 0.9,
            probe_s_min: 1e-30,
            probe_per_decade: 64,
            probe_t_min: 1e-20,
            floor: 0.9,
        }
    }
}

fn orlicz_delta2(mut prm: OrliczParams, ov: Overrides) -> Result<RunReport> {
    if let Some(n) = ov.n {
        prm.attempts = n;
    }
    let spec = NormSpec::orlicz(prm.young).context("orlicz-delta2 spec")?;
    match prm.young {
        YoungFunction::Power { .. } | YoungFunction::PowerLog { .. } => {
            let seed = require_seed(ov.seed, "orlicz-delta2")?;
            let mut r = RunReport::new("orlicz-delta2", Some(seed), &prm);
            let mut rng = sampling::rng(seed);
            let mut tried = 0usize;
            let mut failures = 0usize;
            let mut worst: Option<(f64, HWitness)> = None;
            for _ in 0..prm.attempts {
                let w = random_orlicz_attempt(&mut rng, &prm.young, prm.max_intervals).context("attempt")?;
                if w.is_empty() {
                    continue;
                }
                tried += 1;
                let chain = orlicz_h_chain(&w, &prm.young).context("chain")?;
                if !chain.holds {
                    failures += 1;
                }
                let margin = chain.total_modular - chain.sum_weights;
                if worst.as_ref().is_none_or(|(m, _)| margin < *m) {
                    worst = Some((margin, w));
                }
            }
            let (margin, witness) = worst.map_or((None, None), |(m, w)| (Some(m), Some(w)));
            r.check(
                "h_chain",
                failures == 0 && tried > 0,
                "sum of a_k < integral of A(f) < inf for every attempted witness",
                json!({
                    "attempts": prm.attempts,
                    "nonempty": tried,
                    "failures": failures,
                    "smallest_margin": margin,
                    "smallest_margin_witness": witness,
                }),
            );
            Ok(r.finish(Verdict::Pass))
        }
        YoungFunction::ExpMinusOne => {
            let mut r = RunReport::new("orlicz-delta2", ov.seed, &prm);
            let modulars = prm
                .refinements
                .iter()
                .map(|&s| {
                    let g = exp_probe(s, prm.probe_per_decade).context("probe")?;
                    Ok(g.pieces().map(|p| p.length() * prm.young.eval(p.value / prm.lambda)).sum())
                })
                .collect::<Result<Vec<f64>>>()?;
            r.check(
                "modular_divergence",
                prm.lambda < 1.0 && strictly_increasing(&modulars),
                format!("integral of A(g/{}) grows under refinement", prm.lambda),
                json!({ "refinements": prm.refinements, "modulars": modulars }),
            );
            let g = exp_probe(prm.probe_s_min, prm.probe_per_decade).context("probe")?;
            let decades = (-prm.probe_t_min.log10()).round().max(1.0) as usize;
            let mut ts = geomspace(prm.probe_t_min, 1.0, decades + 1);
            ts.reverse();
            let lac = lac_probe(&g, &spec, &ts).context("lac probe")?;
            let min = lac.values.iter().copied().fold(f64::INFINITY, f64::min);
            r.check(
                "lac_floor",
                min >= prm.floor,
                format!("norm of g restricted to (0,t) stays >= {} as t decreases", prm.floor),
                json!({ "min": min, "values": lac.values }),
            );
            r.curve(Curve::numeric("lac", &["t", "norm"], ts.iter().zip(&lac.values).map(|(&t, &v)| vec![t, v])));
            Ok(r.finish(Verdict::CounterexampleConfirmed))
        }
        YoungFunction::EssSupIndicator => Err(CliError::ConfigInvalid(
            "orlicz-delta2 takes power, power_log or exp_minus_one".into(),
        )),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LambdaParams {
    pub phi: ConcavePhi,
    pub trials: usize,
    pub concavity_tol: f64,
    /// Witness length when `phi(0+) > 0`.
    pub n: usize,
}

impl Default for LambdaParams {
    fn default() -> Self {
        Self {
            phi: ConcavePhi::Power { alpha: 0.5 },
            trials: 200,
            concavity_tol: 1e-9,
            n: 8,
        }
    }
}

/// A fixed simple function with four jumps inside `(0, 1)`.
fn sample_simple() -> StepFunction {
    StepFunction::new(vec![0.3, 0.5, 0.9, 1.0], vec![2.0, 0.0, 1.0, 3.0]).expect("valid literal")
}

fn scan_check(r: &mut RunReport, spec: &NormSpec) -> Result<()> {
    let u = sample_simple();
    let pts: Vec<f64> = (1..200).map(|i| i as f64 * 0.005).collect();
    let mut radii = geomspace(1e-3, 0.2, 40);
    radii.reverse();
    let scan = lebesgue_scan(&u, spec, &pts, &radii, 1e-9, &jumps(&u)).context("Lebesgue scan")?;
    r.check(
        "lebesgue_scan",
        scan.pass_fraction == 1.0,
        "oscillation vanishes at every sampled point away from the jumps of a simple function",
        json!({ "pass_fraction": scan.pass_fraction, "excluded_measure": scan.excluded_measure, "function": u }),
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
    Ok(())
}

fn lambda_phi(mut prm: LambdaParams, ov: Overrides) -> Result<RunReport> {
    if let Some(n) = ov.n {
        prm.n = n;
    }
    let spec = NormSpec::lambda(prm.phi).context("lambda-phi spec")?;
    let b = prm.phi.zero_plus();
    if b == 0.0 {
        let seed = require_seed(ov.seed, "lambda-phi")?;
        let mut r = RunReport::new("lambda-phi", Some(seed), &prm);
        concavity_check(&mut r, &GFunctional::Representation { spec }, prm.trials, seed, prm.concavity_tol)?;
        scan_check(&mut r, &spec)?;
        Ok(r.finish(Verdict::Pass))
    } else {
        let mut r = RunReport::new("lambda-phi", ov.seed, &prm);
        non_lac_witness_checks(&mut r, &spec, 2.0 / b, prm.n)?;
        Ok(r.finish(Verdict::CounterexampleConfirmed))
    }
}

/// For `g = height·χ_{(0,1)}` whose restrictions never drop below norm 2:
/// builds the (H) witness, verifies it, and measures the level-set growth of
/// its transplant.
fn non_lac_witness_checks(r: &mut RunReport, spec: &NormSpec, height: f64, n: usize) -> Result<()> {
    let g = StepFunction::scaled_indicator(0.0, 1.0, height).context("probe function")?;
    let w = witness_from_non_lac(&g, spec, n).context("witness construction")?;
    let norm = rep_norm(&g, spec).context("norm")?;
    let cfg = HVerifyConfig {
        sum_bound: 2.0,
        norm_budget: Some(norm),
    };
    let report = verify_h_witness(&w, spec, &cfg).context("witness verification")?;
    r.check(
        "h_violation",
        report.verdict == HVerdict::ViolatesH,
        "every piece has averaged norm > 1 while the weights sum past the bound",
        json!({ "report": report, "witness": w }),
    );
    levelset_growth_check(r, spec, &truncations(n), |m| prefix(&w, m))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MarcParams {
    pub phi: ConcavePhi,
    pub s_min: f64,
    pub s_max: f64,
    pub per_decade: usize,
    pub t_min: f64,
    pub probe_per_decade: usize,
    pub sandwich: (f64, f64),
    pub lac_floor: f64,
    pub contrast: NormSpec,
    pub contrast_decay: f64,
}

impl Default for MarcParams {
    fn default() -> Self {
        Self {
            phi: ConcavePhi::Power { alpha: 0.5 },
            s_min: 1e-4,
            s_max: 1e2,
            per_decade: 64,
            t_min: 1e-3,
            probe_per_decade: 10,
            sandwich: (0.95, 2.05),
            lac_floor: 0.95,
            contrast: NormSpec::Lorentz { p: 2.0, q: 2.0 },
            contrast_decay: 10.0,
        }
    }
}

fn probe_points(hi: f64, lo: f64, per_decade: usize) -> Vec<f64> {
    let count = ((hi / lo).log10() * per_decade as f64).round() as usize + 1;
    let mut ts = geomspace(lo, hi, count.max(2));
    ts.reverse();
    ts
}

fn marcinkiewicz(mut prm: MarcParams, ov: Overrides) -> Result<RunReport> {
    if let Some(n) = ov.n {
        prm.per_decade = n;
    }
    let spec = NormSpec::marcinkiewicz(prm.phi).context("marcinkiewicz spec")?;
    let mut r = RunReport::new("marcinkiewicz", ov.seed, &prm);
    let l1_like = match prm.phi {
        ConcavePhi::Power { alpha } => alpha == 1.0,
        ConcavePhi::Affine { b, .. } => b == 0.0,
    };
    if l1_like {
        let u = sample_simple();
        let ts = probe_points(1.0, prm.t_min, prm.probe_per_decade);
        let lac = lac_probe(&u, &spec, &ts).context("lac probe")?;
        let (first, last) = (lac.values[0], lac.values[lac.values.len() - 1]);
        r.check(
            "lac_decay",
            lac.monotone && last <= 0.01 * first,
            "norm of u* restricted to (0,t) falls by a factor >= 100 over the probed range",
            json!({ "first": first, "last": last, "function": u }),
        );
        r.curve(Curve::numeric("lac", &["t", "norm"], ts.iter().zip(&lac.values).map(|(&t, &v)| vec![t, v])));
        scan_check(&mut r, &spec)?;
        return Ok(r.finish(Verdict::Pass));
    }
    let u = marcinkiewicz_extremal(&prm.phi, prm.s_min, prm.s_max, prm.per_decade).context("extremal")?;
    let mut nodes: Vec<f64> = vec![prm.s_min];
    nodes.extend_from_slice(&u.breakpoints()[1..]);
    let products = nodes
        .iter()
        .map(|&s| Ok(u.maximal_average(s)? * prm.phi.eval(s)))
        .collect::<rinorm_core::Result<Vec<f64>>>()
        .context("u** phi")?;
    let (lo, hi) = products
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
    r.check(
        "sandwich",
        lo >= prm.sandwich.0 && hi <= prm.sandwich.1,
        format!("u**(s) phi(s) in [{}, {}] at every node", prm.sandwich.0, prm.sandwich.1),
        json!({ "min": lo, "max": hi, "nodes": nodes.len() }),
    );
    r.curve(Curve::numeric(
        "sandwich",
        &["s", "u_star_star_phi"],
        nodes.iter().zip(&products).map(|(&s, &v)| vec![s, v]),
    ));
    let ts = probe_points(prm.s_max, prm.t_min, prm.probe_per_decade);
    let lac = lac_probe(&u, &spec, &ts).context("lac probe")?;
    let lac_min = lac.values.iter().copied().fold(f64::INFINITY, f64::min);
    r.check(
        "lac_floor",
        lac_min >= prm.lac_floor,
        format!("M_phi norm of u* on (0,t) stays >= {} down to t = {}", prm.lac_floor, prm.t_min),
        json!({ "min": lac_min }),
    );
    let contrast = lac_probe(&u, &prm.contrast, &ts).context("contrast probe")?;
    let decay = contrast.values[0] / contrast.values[contrast.values.len() - 1];
    r.check(
        "contrast_decay",
        decay >= prm.contrast_decay,
        format!("the same probe under {} decays by a factor >= {}", prm.contrast.label(), prm.contrast_decay),
        json!({ "first": contrast.values[0], "last": contrast.values[contrast.values.len() - 1], "decay": decay }),
    );
    r.curve(Curve::numeric(
        "lac",
        &["t", "marcinkiewicz", "contrast"],
        ts.iter()
            .zip(lac.values.iter().zip(&contrast.values))
            .map(|(&t, (&a, &b))| vec![t, a, b]),
    ));
    Ok(r.finish(Verdict::CounterexampleConfirmed))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RieszWienerParams {
    pub specs: Vec<NormSpec>,
    pub grid_n: usize,
    pub tolerance: f64,
    pub witness_spec: NormSpec,
    pub c: f64,
    pub witness_ns: Vec<usize>,
    pub witness_grid: Grid1D,
}

impl Default for RieszWienerParams {
    fn default() -> Self {
        Self {
            specs: vec![
                NormSpec::Lebesgue { p: 1.0 },
                NormSpec::Lorentz { p: 2.0, q: 1.0 },
                NormSpec::Lorentz { p: 2.0, q: 2.0 },
            ],
            grid_n: 256,
            tolerance: 0.2,
            witness_spec: NormSpec::Lorentz { p: 1.0, q: 2.0 },
            c: 1.5,
            witness_ns: vec![8, 16, 32],
            witness_grid: Grid1D::new(-1.0, 5.0, 512).expect("valid literal"),
        }
    }
}

fn riesz_wiener(mut prm: RieszWienerParams, ov: Overrides) -> Result<RunReport> {
    if let Some(n) = ov.n {
        prm.grid_n = n;
    }
    let mut r = RunReport::new("riesz-wiener", ov.seed, &prm);
    for spec in &prm.specs {
        rw_stability_check(&mut r, spec, prm.grid_n, prm.tolerance)?;
    }
    let (p, q) = match prm.witness_spec {
        NormSpec::Lorentz { p, q } => (p, q),
        _ => return Err(CliError::ConfigInvalid("witness_spec must be a Lorentz spec with p < q".into())),
    };
    let ss = geomspace(1e-3, 5.0, 60);
    let mut sups = Vec::new();
    for &m in &prm.witness_ns {
        let w = lorentz_h_witness(p, q, prm.c, m).context("Lorentz witness")?;
        let layout = transplant(&w, 0.0).context("transplant")?;
        let est = rw_estimate(&layout, &prm.witness_spec, prm.witness_grid, &ss)?;
        sups.push(est.sup);
        r.curve(estimate_curve(format!("rw_witness_{m}"), &est, ["s", "ratio"]));
    }
    r.check(
        "witness_divergence",
        strictly_increasing(&sups),
        "sup-ratio of the transplanted witness strictly increases with N",
        json!({ "spec": prm.witness_spec, "truncations": prm.witness_ns, "sups": sups }),
    );
    Ok(r.finish(Verdict::Pass))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LevelsetParams {
    pub p: f64,
    pub q: f64,
    pub c: f64,
    pub ns: Vec<usize>,
    pub t: f64,
    /// Grid size for the mesh level-set measurement, reported alongside.
    pub mesh_n: usize,
}

impl Default for LevelsetParams {
    fn default() -> Self {
        Self {
            p: 1.0,
            q: 2.0,
            c: 1.5,
            ns: vec![8, 16, 32, 64],
            t: 1.0,
            mesh_n: 256,
        }
    }
}

fn levelset(mut prm: LevelsetParams, ov: Overrides) -> Result<RunReport> {
    if let Some(n) = ov.n {
        prm.ns = vec![n / 8, n / 4, n / 2, n].into_iter().filter(|&m| m > 0).collect();
        prm.ns.dedup();
    }
    let spec = NormSpec::lorentz(prm.p, prm.q).context("levelset spec")?;
    let mut r = RunReport::new("levelset", ov.seed, &prm);
    let mut rows = Vec::new();
    let mut exact = Vec::new();
    let mut dominated = true;
    for &m in &prm.ns {
        let w = lorentz_h_witness(prm.p, prm.q, prm.c, m).context("Lorentz witness")?;
        let layout = transplant(&w, 0.0).context("transplant")?;
        let measure = superlevel_union_measure(&layout, &spec, &layout.balls, prm.t).context("level set")?;
        let h = harmonic(m);
        dominated &= measure >= h;
        let end = layout.balls[layout.balls.len() - 1].right();
        let grid = Grid1D::new(0.0, end, prm.mesh_n).context("mesh grid")?;
        let field = maximal_field(
            &layout,
            &spec,
            &grid,
            &CandidateStrategy::ExplicitList(layout.balls.clone()),
        )
        .context("maximal field")?;
        let mesh = level_set_measure(&field, prm.t);
        exact.push(measure);
        rows.push(vec![m as f64, measure, h, mesh]);
    }
    r.check(
        "union_dominates_harmonic",
        dominated,
        format!("measure of the union of balls with averaged norm > {} is >= H_N", prm.t),
        json!({ "truncations": prm.ns, "measures": exact }),
    );
    r.check(
        "strictly_increasing",
        strictly_increasing(&exact),
        "level-set measure strictly increases with N",
        json!({ "measures": exact }),
    );
    r.curve(Curve::numeric("levelset", &["n", "union_measure", "harmonic", "mesh_measure"], rows));
    Ok(r.finish(Verdict::CounterexampleConfirmed))
}
