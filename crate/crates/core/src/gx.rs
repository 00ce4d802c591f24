//! The functional `𝒢_X(f) = ‖f⁻¹‖_{X̄(0,∞)}` on non-increasing functions,
//! its closed forms, and the concavity and partition diagnostics built on it.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{amemiya_norm, averaged_norm, rep_norm, ConcavePhi, NormSpec, YoungFunction};
use crate::sampling;
use crate::stepfn::{Interval, StepFunction};
use crate::STRUCTURAL_TOL;

/// Partition of `(0, 1)` by cut points `0 = τ₀ < … < τ_m = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct Partition {
    cuts: Vec<f64>,
}

#[derive(Deserialize)]
struct RawPartition {
    cuts: Vec<f64>,
}

impl TryFrom<RawPartition> for Partition {
    type Error = Error;
    fn try_from(raw: RawPartition) -> Result<Self> {
        Partition::new(raw.cuts)
    }
}

impl Partition {
    pub fn new(cuts: Vec<f64>) -> Result<Self> {
        if cuts.len() < 2 || cuts[0] != 0.0 || *cuts.last().unwrap() != 1.0 {
            return Err(Error::InvalidPartition("cuts must start at 0 and end at 1".into()));
        }
        if let Some(i) = cuts.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidPartition(format!("cuts {i} and {} are not increasing", i + 1)));
        }
        Ok(Self { cuts })
    }

    pub fn trivial() -> Self {
        Self { cuts: vec![0.0, 1.0] }
    }

    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPartition("need at least one interval".into()));
        }
        let mut cuts: Vec<f64> = (0..m).map(|i| i as f64 / m as f64).collect();
        cuts.push(1.0);
        Self::new(cuts)
    }

    /// Smallest partition containing every endpoint of the given disjoint
    /// intervals in `(0, 1)`; gaps become extra intervals.
    pub fn covering(intervals: &[Interval]) -> Result<Self> {
        let mut cuts = vec![0.0, 1.0];
        for i in intervals {
            if i.left() < 0.0 || i.right() > 1.0 {
                return Err(Error::InvalidPartition(format!(
                    "interval ({}, {}) leaves (0, 1)",
                    i.left(),
                    i.right()
                )));
            }
            cuts.push(i.left());
            cuts.push(i.right());
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        Self::new(cuts)
    }

    pub fn cuts(&self) -> &[f64] {
        &self.cuts
    }

    pub fn intervals(&self) -> Vec<Interval> {
        self.cuts
            .windows(2)
            .map(|w| Interval::new(w[0], w[1]).expect("cuts are increasing"))
            .collect()
    }
}

/// Convex combination `Σ λᵢ fᵢ` of members of the class `𝒞` (non-increasing,
/// values in `[0, 1]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexCombo {
    functions: Vec<StepFunction>,
    weights: Vec<f64>,
}

impl ConvexCombo {
    pub fn new(functions: Vec<StepFunction>, weights: Vec<f64>) -> Result<Self> {
        if functions.is_empty() || functions.len() != weights.len() {
            return Err(Error::InvalidCombo(format!(
                "{} functions and {} weights",
                functions.len(),
                weights.len()
            )));
        }
        for (i, f) in functions.iter().enumerate() {
            if !f.is_nonincreasing() || f.sup() > 1.0 {
                return Err(Error::InvalidCombo(format!("function {i} is not in the class C")));
            }
        }
        // a single function carries weight 1
        let single = weights.len() == 1;
        if weights.iter().any(|&w| !(w > 0.0 && (w < 1.0 || (single && w == 1.0)))) {
            return Err(Error::InvalidCombo("weights must lie in (0, 1)".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > STRUCTURAL_TOL {
            return Err(Error::InvalidCombo(format!("weights sum to {total}")));
        }
        Ok(Self { functions, weights })
    }

    pub fn functions(&self) -> &[StepFunction] {
        &self.functions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn combined(&self) -> StepFunction {
        self.functions
            .iter()
            .zip(&self.weights)
            .fold(StepFunction::zero(), |acc, (f, &w)| {
                acc.superpose(&f.scale(w).expect("weights are finite and positive"))
            })
    }

    pub fn random(rng: &mut impl Rng, max_terms: usize) -> Self {
        let k = rng.gen_range(2..=max_terms.max(2));
        let functions = (0..k).map(|_| sampling::class_c(rng)).collect();
        let weights = sampling::simplex_weights(rng, k);
        Self::new(functions, weights).expect("sampled combos are valid")
    }
}

/// A functional on non-increasing functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "functional", rename_all = "snake_case")]
pub enum GFunctional {
    /// `f ↦ ‖f⁻¹‖_{X̄}` for a representation norm.
    Representation { spec: NormSpec },
    /// `f ↦ ‖f⁻¹‖` in the Amemiya norm of `young`.
    Amemiya { young: YoungFunction },
}

impl GFunctional {
    pub fn eval(&self, f: &StepFunction) -> Result<f64> {
        match self {
            GFunctional::Representation { spec } => gx_value(f, spec),
            GFunctional::Amemiya { young } => amemiya_norm(&f.right_inverse(true)?, young),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GFunctional::Representation { spec } => spec.label(),
            GFunctional::Amemiya { young } => format!("Amemiya[{}]", young.name()),
        }
    }
}

/// `𝒢_X(f) = ‖f⁻¹‖_{X̄}`.
pub fn gx_value(f: &StepFunction, spec: &NormSpec) -> Result<f64> {
    rep_norm(&f.right_inverse(true)?, spec)
}

/// `(p ∫ s^{q-1} f(s)^{q/p} ds)^{1/q}`, with `sup_s s f(s)^{1/p}` for `q = ∞`
/// and `ℒ¹({f > 0})` for `p = q = ∞`.
pub fn gx_closed_lorentz(f: &StepFunction, p: f64, q: f64) -> Result<f64> {
    NormSpec::lorentz(p, q)?;
    f.check_nonincreasing()?;
    if p.is_infinite() {
        return Ok(f.support_measure());
    }
    if q.is_infinite() {
        return Ok(f
            .pieces()
            .map(|pc| pc.right * pc.value.powf(1.0 / p))
            .fold(0.0, f64::max));
    }
    let sum: f64 = f
        .pieces()
        .map(|pc| pc.value.powf(q / p) * (pc.right.powf(q) - pc.left.powf(q)) / q)
        .sum();
    Ok((p * sum).powf(1.0 / q))
}

/// `∫₀^{ℒ¹({f>0})} φ(f(t)) dt`.
pub fn gx_closed_lambda(f: &StepFunction, phi: &ConcavePhi) -> Result<f64> {
    f.check_nonincreasing()?;
    Ok(f.pieces()
        .filter(|pc| pc.value > 0.0)
        .map(|pc| pc.length() * phi.eval(pc.value))
        .sum())
}

/// `𝒢(Σ λᵢ fᵢ) / Σ λᵢ 𝒢(fᵢ)`.
pub fn concavity_ratio(combo: &ConvexCombo, g: &GFunctional) -> Result<f64> {
    let mut denom = 0.0;
    for (f, w) in combo.functions.iter().zip(&combo.weights) {
        denom += w * g.eval(f)?;
    }
    if denom <= 0.0 {
        return Err(Error::DegenerateCombo);
    }
    Ok(g.eval(&combo.combined())? / denom)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionRatios {
    pub sum_ratio: f64,
    pub min_ratio: f64,
}

/// Sum and min criteria of `f ∈ X̄₁` over a partition of `(0, 1)`:
/// `Σ ℒ(I_k) ‖f‖⊘_{X̄(I_k)} / ‖f‖` and `min_k ‖f‖⊘_{X̄(I_k)} / ‖f‖`.
pub fn partition_ratios(f: &StepFunction, partition: &Partition, spec: &NormSpec) -> Result<PartitionRatios> {
    if f.support_end() > 1.0 + STRUCTURAL_TOL {
        return Err(Error::UnsupportedSupport(f.support_end()));
    }
    let norm = rep_norm(f, spec)?;
    if norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let mut sum = 0.0;
    let mut min = f64::INFINITY;
    for i in partition.intervals() {
        let a = averaged_norm(f, &i, spec)?;
        sum += i.length() * a;
        min = min.min(a);
    }
    Ok(PartitionRatios {
        sum_ratio: sum / norm,
        min_ratio: min / norm,
    })
}

/// `F(r) = r ‖f*‖⊘_{X̄(0,r)}` sampled on increasing radii.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FProfile {
    pub rs: Vec<f64>,
    pub values: Vec<f64>,
    /// Indices `i` where `F(r_{i+1}) < F(r_i)` beyond tolerance.
    pub increase_violations: Vec<usize>,
    /// Indices `i` where `F(r_{i+1})/r_{i+1} > F(r_i)/r_i` beyond tolerance.
    pub ratio_violations: Vec<usize>,
}

pub const PROFILE_TOL: f64 = 1e-9;

pub fn f_profile(f: &StepFunction, spec: &NormSpec, rs: &[f64]) -> Result<FProfile> {
    if rs.windows(2).any(|w| !(w[0] < w[1])) || rs.first().is_some_and(|&r| !(r > 0.0)) {
        return Err(Error::InvalidParameters("radii must be positive and increasing".into()));
    }
    let fs = f.rearrangement();
    let values = rs
        .iter()
        .map(|&r| Ok(r * averaged_norm(&fs, &Interval::new(0.0, r)?, spec)?))
        .collect::<Result<Vec<f64>>>()?;
    let scale = values.iter().copied().fold(1.0, f64::max);
    let mut increase_violations = Vec::new();
    let mut ratio_violations = Vec::new();
    for i in 0..values.len().saturating_sub(1) {
        if values[i + 1] < values[i] - PROFILE_TOL * scale {
            increase_violations.push(i);
        }
        let (a, b) = (values[i] / rs[i], values[i + 1] / rs[i + 1]);
        if b > a + PROFILE_TOL * a.max(1.0) {
            ratio_violations.push(i);
        }
    }
    Ok(FProfile {
        rs: rs.to_vec(),
        values,
        increase_violations,
        ratio_violations,
    })
}

/// Outcome of a seeded concavity sweep, with the combo that gave the smallest
/// ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcavitySuite {
    pub functional: GFunctional,
    pub seed: u64,
    pub trials: usize,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub worst: ConvexCombo,
}

/// Evaluates `concavity_ratio` on `trials` random combos. Combos are drawn
/// sequentially from the seed, then evaluated in parallel.
pub fn concavity_suite(g: &GFunctional, trials: usize, seed: u64) -> Result<ConcavitySuite> {
    if trials == 0 {
        return Err(Error::InvalidParameters("need at least one trial".into()));
    }
    let mut rng = sampling::rng(seed);
    let combos: Vec<ConvexCombo> = (0..trials).map(|_| ConvexCombo::random(&mut rng, 4)).collect();
    let ratios = combos
        .par_iter()
        .map(|c| concavity_ratio(c, g))
        .collect::<Result<Vec<f64>>>()?;
    let (worst_idx, min_ratio) = ratios
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, r)| if r < best.1 { (i, r) } else { best });
    let max_ratio = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(ConcavitySuite {
        functional: *g,
        seed,
        trials,
        min_ratio,
        max_ratio,
        worst: combos[worst_idx].clone(),
    })
}
