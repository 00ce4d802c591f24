//! Explicit counterexamples: condition-(H) witnesses, their transplants into
//! functions on the line, the Marcinkiewicz extremal, the non-Δ₂ Orlicz probe
//! and the Orlicz (H)-bound chain.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gx::PartitionRatios;
use crate::maximal::Layout;
use crate::norms::{averaged_norm_of_pieces, rep_norm, ConcavePhi, NormSpec, YoungFunction};
use crate::sampling;
use crate::stepfn::{Interval, StepFunction};
use crate::STRUCTURAL_TOL;

/// `1 + 1/2 + … + 1/n`, summed left to right.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).fold(0.0, |acc, k| acc + 1.0 / k as f64)
}

/// A triple `(f, {I_k}, {a_k})` as in condition (H).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HWitness {
    pub f: StepFunction,
    pub intervals: Vec<Interval>,
    pub weights: Vec<f64>,
}

impl HWitness {
    pub fn new(f: StepFunction, intervals: Vec<Interval>, weights: Vec<f64>) -> Result<Self> {
        if intervals.len() != weights.len() {
            return Err(Error::InvalidParameters(format!(
                "{} intervals but {} weights",
                intervals.len(),
                weights.len()
            )));
        }
        if f.support_end() > 1.0 + STRUCTURAL_TOL {
            return Err(Error::UnsupportedSupport(f.support_end()));
        }
        for (i, (iv, &a)) in intervals.iter().zip(&weights).enumerate() {
            if iv.left() < 0.0 || iv.right() > 1.0 {
                return Err(Error::InvalidParameters(format!("interval {i} leaves (0, 1)")));
            }
            if !(a >= iv.length()) {
                return Err(Error::InvalidParameters(format!("weight {i} = {a} is below the interval length")));
            }
        }
        let mut sorted = intervals.clone();
        sorted.sort_by(|a, b| a.left().total_cmp(&b.left()));
        if sorted.windows(2).any(|w| w[0].right() > w[1].left()) {
            return Err(Error::InvalidParameters("intervals overlap".into()));
        }
        Ok(Self { f, intervals, weights })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// `‖(fχ_{I_k})*‖⊘_{X̄(0,a_k)}`.
    pub fn piece_norm(&self, k: usize, spec: &NormSpec) -> Result<f64> {
        averaged_norm_of_pieces(self.f.pieces_over(&self.intervals[k]), self.weights[k], spec)
    }
}

/// Lower end `1/(2·3^k)` of the k-th interval of the Lorentz witness.
fn lorentz_cut(k: usize) -> f64 {
    0.5 * 3f64.powi(-(k as i32))
}

/// `f = c Σ_{k≤N} (3^k/k)^{1/p} χ_{I_k}` with `I_k = (1/(2·3^k), 1/(2·3^{k-1}))`
/// and `a_k = 1/k`.
pub fn lorentz_h_witness(p: f64, q: f64, c: f64, n: usize) -> Result<HWitness> {
    if !(p >= 1.0 && p < q && q.is_finite()) {
        return Err(Error::InvalidParameters(format!("need 1 <= p < q < inf, got ({p}, {q})")));
    }
    let c_min = (q / p).powf(1.0 / q);
    if !(c > c_min) {
        return Err(Error::InvalidParameters(format!("c = {c} must exceed (q/p)^(1/q) = {c_min}")));
    }
    if n > 0 {
        let tiny = lorentz_cut(n);
        let top = c * (3f64.powi(n as i32) / n as f64).powf(1.0 / p);
        if !(tiny.is_normal() && top.is_finite()) {
            return Err(Error::InvalidParameters(format!("N = {n} is beyond double precision")));
        }
    }
    let mut breakpoints = Vec::with_capacity(n + 1);
    let mut values = Vec::with_capacity(n + 1);
    if n > 0 {
        breakpoints.push(lorentz_cut(n));
        values.push(0.0);
    }
    for k in (1..=n).rev() {
        breakpoints.push(lorentz_cut(k - 1));
        values.push(c * (3f64.powi(k as i32) / k as f64).powf(1.0 / p));
    }
    let f = StepFunction::new(breakpoints, values)?;
    let intervals = (1..=n)
        .map(|k| Interval::new(lorentz_cut(k), lorentz_cut(k - 1)))
        .collect::<Result<Vec<_>>>()?;
    let weights = (1..=n).map(|k| 1.0 / k as f64).collect();
    HWitness::new(f, intervals, weights)
}

/// Partition ratios of the truncated Lorentz witness over
/// `{I_1, …, I_N}` plus the two zero tail pieces, evaluated as series in
/// scaled variables so that `N` may exceed the range of double precision.
pub fn lorentz_witness_partition_ratios(p: f64, q: f64, c: f64, n: usize) -> Result<PartitionRatios> {
    NormSpec::lorentz(p, q)?;
    if !(p < q && q.is_finite() && c > 0.0 && n > 0) {
        return Err(Error::InvalidParameters("need p < q < inf, c > 0, N >= 1".into()));
    }
    let ln3 = 3f64.ln();
    let head = c * (p / q).powf(1.0 / q);
    // ℒ(I_k) ‖f‖⊘_{I_k} = 3^{-k} v_k (p/q)^{1/q}
    let numerator: f64 = (1..=n)
        .map(|k| {
            let kf = k as f64;
            head * (ln3 * kf * (1.0 / p - 1.0) - kf.ln() / p).exp()
        })
        .sum();
    // f* is f shifted left by 1/(2·3^N); with e = 3^{k-N}, piece k spans
    // [(1-e)/2, (3-e)/2]·3^{-k}
    let norm_q: f64 = (1..=n)
        .map(|k| {
            let kf = k as f64;
            let e = (ln3 * (kf - n as f64)).exp();
            let r = q / p;
            (p / q) * kf.powf(-r) * (((3.0 - e) / 2.0).powf(r) - ((1.0 - e) / 2.0).powf(r))
        })
        .sum();
    let norm = c * norm_q.powf(1.0 / q);
    Ok(PartitionRatios {
        sum_ratio: numerator / norm,
        min_ratio: 0.0,
    })
}

/// Options for [`verify_h_witness`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HVerifyConfig {
    /// The verdict needs `Σ a_k` above this.
    pub sum_bound: f64,
    /// When set, witnesses with `‖f‖ > norm_budget` are not counted. A
    /// truncation whose norm grows with `N` says nothing about a fixed `f`.
    pub norm_budget: Option<f64>,
}

impl Default for HVerifyConfig {
    fn default() -> Self {
        Self {
            sum_bound: 2.0,
            norm_budget: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HVerdict {
    ViolatesH,
    NoViolation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HReport {
    pub spec: NormSpec,
    pub norm: f64,
    pub piece_norms: Vec<f64>,
    pub checks: Vec<bool>,
    pub weights_admissible: bool,
    pub partial_sums: Vec<f64>,
    pub verdict: HVerdict,
    pub reason: String,
}

pub fn verify_h_witness(w: &HWitness, spec: &NormSpec, cfg: &HVerifyConfig) -> Result<HReport> {
    let norm = rep_norm(&w.f, spec)?;
    let piece_norms = (0..w.len()).map(|k| w.piece_norm(k, spec)).collect::<Result<Vec<f64>>>()?;
    let checks: Vec<bool> = piece_norms.iter().map(|&v| v > 1.0).collect();
    let weights_admissible = w
        .intervals
        .iter()
        .zip(&w.weights)
        .all(|(i, &a)| a >= i.length());
    let partial_sums: Vec<f64> = w
        .weights
        .iter()
        .scan(0.0, |acc, a| {
            *acc += a;
            Some(*acc)
        })
        .collect();
    let total = partial_sums.last().copied().unwrap_or(0.0);
    let (verdict, reason) = if w.is_empty() {
        (HVerdict::NoViolation, "empty witness".to_string())
    } else if cfg.norm_budget.is_some_and(|b| norm > b) {
        (
            HVerdict::NoViolation,
            format!("norm {norm} exceeds budget {}", cfg.norm_budget.unwrap_or_default()),
        )
    } else if !weights_admissible {
        (HVerdict::NoViolation, "some a_k below the interval length".to_string())
    } else if let Some(k) = checks.iter().position(|&c| !c) {
        (
            HVerdict::NoViolation,
            format!("piece {} has averaged norm {} <= 1", k + 1, piece_norms[k]),
        )
    } else if total <= cfg.sum_bound {
        (HVerdict::NoViolation, format!("sum of a_k = {total} within bound {}", cfg.sum_bound))
    } else {
        (HVerdict::ViolatesH, format!("all {} checks pass, sum of a_k = {total}", w.len()))
    };
    Ok(HReport {
        spec: *spec,
        norm,
        piece_norms,
        checks,
        weights_admissible,
        partial_sums,
        verdict,
        reason,
    })
}

/// Cap on `l` while doubling in [`witness_from_non_lac`].
const MAX_SPLIT_DOUBLINGS: u32 = 64;
const SPLIT_BISECTION_STEPS: usize = 60;

/// Runs the induction `b₁ = 1`, `b_{k+1} = b_k / l_k` with `l_k` the least
/// `l ≥ 2` (doubling, then bisection) such that `‖g χ_{(b_k/l, b_k)}‖ > 1`.
/// Requires `‖g χ_{(0,b_k)}‖ ≥ 2` at every stage.
pub fn witness_from_non_lac(g: &StepFunction, spec: &NormSpec, n: usize) -> Result<HWitness> {
    g.check_nonincreasing()?;
    let unit = Interval::new(0.0, 1.0)?;
    let f = g.restrict(&unit);
    let piece = |lo: f64, hi: f64| -> Result<f64> { rep_norm(&f.restrict(&Interval::new(lo, hi)?), spec) };
    let mut b = 1.0;
    let mut intervals = Vec::with_capacity(n);
    for _ in 0..n {
        let probe = rep_norm(&f.restrict(&Interval::new(0.0, b)?), spec)?;
        if probe < 2.0 - 1e-9 {
            return Err(Error::NormVanishes { t: b, value: probe });
        }
        let mut l = 2.0;
        let mut doublings = 0;
        while piece(b / l, b)? <= 1.0 {
            l *= 2.0;
            doublings += 1;
            if doublings > MAX_SPLIT_DOUBLINGS || !(b / l).is_normal() {
                return Err(Error::NormVanishes { t: b, value: probe });
            }
        }
        if l > 2.0 {
            let (mut lo, mut hi) = (l / 2.0, l);
            for _ in 0..SPLIT_BISECTION_STEPS {
                let mid = 0.5 * (lo + hi);
                if piece(b / mid, b)? > 1.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            l = hi;
        }
        let next = b / l;
        intervals.push(Interval::new(next, b)?);
        b = next;
    }
    let weights = vec![1.0; intervals.len()];
    HWitness::new(f, intervals, weights)
}

/// A witness laid out on the line: adjacent balls `B_k` of length `a_k`, each
/// carrying `(fχ_{I_k})*` at its left end.
///
/// Pieces are stored per ball in local coordinates, so the layout stays exact
/// when `ℒ(I_k)` is far below the spacing of doubles near `B_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transplant {
    pub balls: Vec<Interval>,
    pub locals: Vec<StepFunction>,
    pub witness: HWitness,
}

pub fn transplant(w: &HWitness, layout_origin: f64) -> Result<Transplant> {
    if !(layout_origin >= 0.0 && layout_origin.is_finite()) {
        return Err(Error::InvalidParameters(format!(
            "layout origin {layout_origin} must be a nonnegative number"
        )));
    }
    let mut left = layout_origin;
    let mut balls = Vec::with_capacity(w.len());
    let mut locals = Vec::with_capacity(w.len());
    for (iv, &a) in w.intervals.iter().zip(&w.weights) {
        let right = left + a;
        balls.push(Interval::new(left, right)?);
        locals.push(StepFunction::rearranged_from_pieces(w.f.pieces_over(iv)));
        left = right;
    }
    Ok(Transplant {
        balls,
        locals,
        witness: w.clone(),
    })
}

impl Transplant {
    /// Absolute-coordinate rendering. Pieces shorter than the local spacing of
    /// doubles are lost; use the [`Layout`] methods for exact work.
    pub fn to_step_function(&self) -> Result<StepFunction> {
        let mut u = StepFunction::zero();
        for (ball, local) in self.balls.iter().zip(&self.locals) {
            u = u.superpose(&local.translate(ball.left())?);
        }
        Ok(u)
    }

    fn ball_index(&self, x: f64) -> Option<usize> {
        let idx = self.balls.partition_point(|b| b.right() <= x);
        self.balls.get(idx).filter(|b| b.left() <= x).map(|_| idx)
    }

    pub fn support_measure(&self) -> f64 {
        self.locals.iter().map(StepFunction::support_measure).sum()
    }
}

impl Layout for Transplant {
    fn pieces_over(&self, g: &Interval) -> Vec<(f64, f64)> {
        let first = self.balls.partition_point(|b| b.right() <= g.left());
        let mut out = Vec::new();
        for (ball, local) in self.balls[first..].iter().zip(&self.locals[first..]) {
            if ball.left() >= g.right() {
                break;
            }
            let lo = (g.left() - ball.left()).max(0.0);
            let hi = g.right().min(ball.right()) - ball.left();
            if let Ok(window) = Interval::new(lo, hi) {
                out.extend(
                    local
                        .pieces_over(&window)
                        .into_iter()
                        .filter(|&(len, v)| len > 0.0 && v > 0.0),
                );
            }
        }
        out
    }

    fn eval(&self, x: f64) -> f64 {
        self.ball_index(x)
            .map(|k| self.locals[k].eval(x - self.balls[k].left()))
            .unwrap_or(0.0)
    }

    fn support_hull(&self) -> Option<(f64, f64)> {
        let first = self.locals.iter().position(|l| !l.is_zero())?;
        let last = self.locals.iter().rposition(|l| !l.is_zero())?;
        Some((
            self.balls[first].left(),
            self.balls[last].left() + self.locals[last].support_end(),
        ))
    }

    fn rearrangement(&self) -> StepFunction {
        StepFunction::rearranged_from_pieces(
            self.locals
                .iter()
                .flat_map(|l| l.pieces().map(|p| (p.length(), p.value)).collect::<Vec<_>>()),
        )
    }
}

/// Step version of `ψ'` with `ψ(s) = s^{1-α}` for `φ(s) = s^α`: piece averages
/// of `ψ'` on a geometric grid over `[s_min, s_max]`, capped by `ψ(s_min)/s_min`
/// on `(0, s_min)`. At every node `u**(s) φ(s) = 1`.
pub fn marcinkiewicz_extremal(
    phi: &ConcavePhi,
    s_min: f64,
    s_max: f64,
    pieces_per_decade: usize,
) -> Result<StepFunction> {
    let alpha = match *phi {
        ConcavePhi::Power { alpha } if alpha > 0.0 && alpha < 1.0 => alpha,
        _ => {
            return Err(Error::InvalidParameters(
                "the extremal needs phi = s^alpha with 0 < alpha < 1".into(),
            ))
        }
    };
    if !(s_min > 0.0 && s_min < s_max && s_max.is_finite() && pieces_per_decade > 0) {
        return Err(Error::InvalidParameters(format!(
            "need 0 < s_min < s_max and a positive piece count, got [{s_min}, {s_max}], {pieces_per_decade}"
        )));
    }
    let psi = |s: f64| s.powf(1.0 - alpha);
    let nodes = geometric_nodes(s_min, s_max, pieces_per_decade);
    let mut breakpoints = vec![s_min];
    let mut values = vec![psi(s_min) / s_min];
    for w in nodes.windows(2) {
        breakpoints.push(w[1]);
        values.push((psi(w[1]) - psi(w[0])) / (w[1] - w[0]));
    }
    StepFunction::new(breakpoints, values)
}

/// `s_min = x_0 < … < x_M = s_max`, geometric, `M = ⌈decades · per_decade⌉`.
pub fn geometric_nodes(s_min: f64, s_max: f64, per_decade: usize) -> Vec<f64> {
    let decades = (s_max / s_min).log10();
    let m = ((decades * per_decade as f64).ceil() as usize).max(1);
    let mut nodes: Vec<f64> = (0..=m)
        .map(|i| s_min * (s_max / s_min).powf(i as f64 / m as f64))
        .collect();
    nodes[0] = s_min;
    nodes[m] = s_max;
    nodes
}

/// `t ↦ ‖u* χ_{(0,t)}‖_{X̄}` along decreasing `ts`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LacCurve {
    pub ts: Vec<f64>,
    pub values: Vec<f64>,
    /// Values never increase as `t` decreases.
    pub monotone: bool,
}

pub fn lac_probe(u: &StepFunction, spec: &NormSpec, ts: &[f64]) -> Result<LacCurve> {
    if ts.windows(2).any(|w| !(w[0] > w[1])) || ts.last().is_some_and(|&t| !(t > 0.0)) {
        return Err(Error::InvalidParameters("probe points must be positive and decreasing".into()));
    }
    let us = u.rearrangement();
    let values = ts
        .iter()
        .map(|&t| rep_norm(&us.restrict(&Interval::new(0.0, t)?), spec))
        .collect::<Result<Vec<f64>>>()?;
    let monotone = values.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12));
    Ok(LacCurve {
        ts: ts.to_vec(),
        values,
        monotone,
    })
}

/// `g(s) = A⁻¹(1/(s ln²(e/s)))` for `A(t) = e^t - 1`, on `(0, 1]`. Here
/// `∫₀¹ A(g) = 1` while `∫₀^t A(g/λ) = ∞` for every `λ < 1`, `t > 0`.
pub fn exp_probe_value(s: f64) -> f64 {
    let l = 1.0 - s.ln();
    (1.0 / (s * l * l)).ln_1p()
}

/// `∫₀^t A(g) = 1/ln(e/t)` for the probe above.
pub fn exp_probe_modular(t: f64) -> f64 {
    1.0 / (1.0 - t.ln())
}

/// Lower step approximation of [`exp_probe_value`]: on each geometric piece of
/// `[s_min, 1]` the value at its right end, and `g(s_min)` on `(0, s_min)`.
pub fn exp_probe(s_min: f64, pieces_per_decade: usize) -> Result<StepFunction> {
    if !(s_min > 0.0 && s_min < 1.0 && pieces_per_decade > 0) {
        return Err(Error::InvalidParameters(format!("probe needs 0 < s_min < 1, got {s_min}")));
    }
    let nodes = geometric_nodes(s_min, 1.0, pieces_per_decade);
    let mut breakpoints = vec![s_min];
    let mut values = vec![exp_probe_value(s_min)];
    for w in nodes.windows(2) {
        breakpoints.push(w[1]);
        values.push(exp_probe_value(w[1]));
    }
    StepFunction::new(breakpoints, values)
}

/// Per-interval evidence for the bound `Σ a_k < ∫₀¹ A(f)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub young: YoungFunction,
    pub weights: Vec<f64>,
    pub piece_modulars: Vec<f64>,
    pub sum_weights: f64,
    pub total_modular: f64,
    /// `a_k < ∫_{I_k} A(f)` for every k, and the sums obey the same order.
    pub holds: bool,
}

pub fn orlicz_h_chain(w: &HWitness, young: &YoungFunction) -> Result<ChainReport> {
    young.validate()?;
    let modular = |g: &Interval| -> f64 {
        w.f.pieces_over(g).iter().map(|&(len, v)| len * young.eval(v)).sum()
    };
    let piece_modulars: Vec<f64> = w.intervals.iter().map(modular).collect();
    let total_modular = modular(&Interval::new(0.0, 1.0)?);
    let sum_weights: f64 = w.weights.iter().sum();
    let per_k = w.weights.iter().zip(&piece_modulars).all(|(a, m)| a < m);
    let holds = per_k && sum_weights < total_modular && total_modular.is_finite();
    Ok(ChainReport {
        young: *young,
        weights: w.weights.clone(),
        piece_modulars,
        sum_weights,
        total_modular,
        holds,
    })
}

/// Largest `a ≥ ℒ(I)` with `‖(fχ_I)*‖⊘_{X̄(0,a)} > 1`, backed off by a relative
/// `1e-9` from the bisected boundary so the strict check does not hinge on the
/// norm's own tolerance. `None` if `a = ℒ(I)` already fails.
pub fn largest_admissible_weight(f: &StepFunction, i: &Interval, spec: &NormSpec) -> Result<Option<f64>> {
    let pieces = f.pieces_over(i);
    let check = |a: f64| -> Result<bool> { Ok(averaged_norm_of_pieces(pieces.iter().copied(), a, spec)? > 1.0) };
    let mut lo = i.length();
    if !check(lo)? {
        return Ok(None);
    }
    let mut hi = 2.0 * lo;
    let mut doublings = 0;
    while check(hi)? {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::InvalidParameters("averaged norm does not decay".into()));
        }
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if check(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some((lo * (1.0 - 1e-9)).max(i.length())))
}

/// A random attempt at an (H) witness for an Orlicz norm: random `f` on
/// `(0, 1)`, random disjoint intervals, and each `a_k` as large as the check
/// allows. Intervals whose check fails at `a = ℒ(I)` are dropped.
pub fn random_orlicz_attempt(rng: &mut impl Rng, young: &YoungFunction, max_intervals: usize) -> Result<HWitness> {
    let spec = NormSpec::orlicz(*young)?;
    let f = sampling::supported_in_unit(rng, 8, 6.0);
    let m = rng.gen_range(1..=max_intervals.max(1));
    let mut cuts: Vec<f64> = (0..2 * m).map(|_| rng.gen::<f64>()).collect();
    cuts.sort_by(f64::total_cmp);
    let mut intervals = Vec::new();
    let mut weights = Vec::new();
    for pair in cuts.chunks(2) {
        let Ok(iv) = Interval::new(pair[0], pair[1]) else { continue };
        if let Some(a) = largest_admissible_weight(&f, &iv, &spec)? {
            intervals.push(iv);
            weights.push(a);
        }
    }
    HWitness::new(f, intervals, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lorentz_witness_piece_norms_are_constant() {
        let w = lorentz_h_witness(1.0, 2.0, 1.5, 40).unwrap();
        let spec = NormSpec::Lorentz { p: 1.0, q: 2.0 };
        for k in 0..w.len() {
            assert!((w.piece_norm(k, &spec).unwrap() - 1.5 / 2f64.sqrt()).abs() < 1e-9);
        }
        assert!((w.weights.iter().sum::<f64>() - harmonic(40)).abs() < 1e-12);
        assert!((harmonic(40) - 4.278543).abs() < 1e-6);
    }

    #[test]
    fn lorentz_witness_norm_partial_sums() {
        // ‖f‖^2 = c^2 Σ 1/k^2 up to the shift of the smallest piece
        let spec = NormSpec::Lorentz { p: 1.0, q: 2.0 };
        let mut prev = 0.0;
        for n in [5, 10, 20, 40] {
            let norm = rep_norm(&lorentz_h_witness(1.0, 2.0, 1.5, n).unwrap().f, &spec).unwrap();
            assert!(norm > prev);
            assert!(norm < 1.5 * std::f64::consts::PI / 6f64.sqrt());
            prev = norm;
        }
        let limit = 1.5 * std::f64::consts::PI / 6f64.sqrt();
        assert!((limit - prev) / limit < 0.02);
    }

    #[test]
    fn lorentz_witness_rejects_bad_parameters() {
        assert!(lorentz_h_witness(2.0, 2.0, 3.0, 5).is_err());
        assert!(lorentz_h_witness(1.0, 2.0, 2f64.sqrt(), 5).is_err());
        assert!(lorentz_h_witness(1.0, 2.0, 1.5, 1000).is_err());
    }

    #[test]
    fn series_ratio_matches_generic_partition() {
        let spec = NormSpec::Lorentz { p: 1.0, q: 2.0 };
        for n in [3, 10, 25] {
            let w = lorentz_h_witness(1.0, 2.0, 1.5, n).unwrap();
            let part = crate::gx::Partition::covering(&w.intervals).unwrap();
            let generic = crate::gx::partition_ratios(&w.f, &part, &spec).unwrap();
            let series = lorentz_witness_partition_ratios(1.0, 2.0, 1.5, n).unwrap();
            assert!((generic.sum_ratio - series.sum_ratio).abs() < 1e-12 * series.sum_ratio);
            assert_eq!(generic.min_ratio, 0.0);
        }
    }

    #[test]
    fn verification_verdicts() {
        let w = lorentz_h_witness(1.0, 2.0, 1.5, 40).unwrap();
        let cfg = HVerifyConfig {
            sum_bound: 4.0,
            norm_budget: Some(10.0),
        };
        let rep = verify_h_witness(&w, &NormSpec::Lorentz { p: 1.0, q: 2.0 }, &cfg).unwrap();
        assert_eq!(rep.verdict, HVerdict::ViolatesH);
        // under L^2 the piece values grow like 3^{k/2}/√k, but so does ‖f‖
        let rep = verify_h_witness(&w, &NormSpec::Lorentz { p: 2.0, q: 2.0 }, &cfg).unwrap();
        assert_eq!(rep.verdict, HVerdict::NoViolation);
        for (k, v) in rep.piece_norms.iter().enumerate() {
            let k = (k + 1) as f64;
            assert!((v - 1.5 * 3f64.powf(k / 2.0) / k.sqrt()).abs() < 1e-9 * v);
        }
        let empty = HWitness::new(StepFunction::zero(), vec![], vec![]).unwrap();
        let rep = verify_h_witness(&empty, &NormSpec::Lebesgue { p: 2.0 }, &cfg).unwrap();
        assert_eq!(rep.verdict, HVerdict::NoViolation);
    }

    #[test]
    fn transplant_preserves_rearrangement() {
        let w = lorentz_h_witness(1.0, 2.0, 1.5, 12).unwrap();
        let t = transplant(&w, 0.0).unwrap();
        let expected = StepFunction::rearranged_from_pieces(
            w.intervals.iter().flat_map(|i| w.f.pieces_over(i)),
        );
        assert!(t.rearrangement().approx_eq(&expected, 1e-12));
        assert!(Layout::rearrangement(&t.to_step_function().unwrap()).approx_eq(&expected, 1e-12));
        let spec = NormSpec::Lorentz { p: 1.0, q: 2.0 };
        for (k, b) in t.balls.iter().enumerate() {
            let v = crate::maximal::averaged_norm_on(&t, b, &spec).unwrap();
            assert!((v - w.piece_norm(k, &spec).unwrap()).abs() < 1e-12);
        }
        assert!(t.support_measure() <= 1.0);
        assert!(transplant(&w, -1.0).is_err());
    }

    #[test]
    fn marcinkiewicz_extremal_nodes_hit_one() {
        let phi = ConcavePhi::Power { alpha: 0.5 };
        let u = marcinkiewicz_extremal(&phi, 1e-4, 1e2, 64).unwrap();
        assert!(u.is_nonincreasing());
        for &s in u.breakpoints() {
            let v = u.partial_integral(s).unwrap() / s * phi.eval(s);
            assert!((v - 1.0).abs() < 1e-9, "{s}: {v}");
        }
        assert!(marcinkiewicz_extremal(&ConcavePhi::Power { alpha: 1.0 }, 1e-4, 1.0, 8).is_err());
    }

    #[test]
    fn non_lac_induction_on_extremal() {
        let phi = ConcavePhi::Power { alpha: 0.5 };
        let g = marcinkiewicz_extremal(&phi, 1e-12, 1.0, 64).unwrap().scale(2.0).unwrap();
        let spec = NormSpec::MarcPhi { phi };
        let w = witness_from_non_lac(&g, &spec, 8).unwrap();
        assert_eq!(w.len(), 8);
        for k in 0..8 {
            assert!(w.piece_norm(k, &spec).unwrap() > 1.0);
        }
        assert_eq!(w.weights.iter().sum::<f64>(), 8.0);
    }

    #[test]
    fn non_lac_induction_fails_for_lac_norms() {
        let g = StepFunction::new(vec![0.5, 1.0], vec![9.0, 4.0]).unwrap();
        assert!(matches!(
            witness_from_non_lac(&g, &NormSpec::Lorentz { p: 2.0, q: 2.0 }, 8),
            Err(Error::NormVanishes { .. })
        ));
        let linf = NormSpec::Lebesgue { p: f64::INFINITY };
        let chi = StepFunction::indicator(0.0, 1.0).unwrap();
        assert!(matches!(witness_from_non_lac(&chi, &linf, 3), Err(Error::NormVanishes { .. })));
        let w = witness_from_non_lac(&chi.scale(2.0).unwrap(), &linf, 3).unwrap();
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn exp_probe_modular_closed_form() {
        // midpoint rule in log s against 1/ln(e/t)
        for t in [1e-6f64, 1e-2, 0.5, 1.0] {
            let (a, b) = ((1e-300f64).ln(), t.ln());
            let m = 200_000;
            let h = (b - a) / m as f64;
            let integral: f64 = (0..m)
                .map(|i| {
                    let s = (a + (i as f64 + 0.5) * h).exp();
                    YoungFunction::ExpMinusOne.eval(exp_probe_value(s)) * s * h
                })
                .sum();
            let tail = 1.0 / (1.0 - (1e-300f64).ln());
            assert!((integral + tail - exp_probe_modular(t)).abs() < 1e-6, "t={t}");
        }
    }

    #[test]
    fn orlicz_chain_on_random_attempts() {
        let mut rng = sampling::rng(11);
        let a = YoungFunction::Power { p: 2.0 };
        for _ in 0..20 {
            let w = random_orlicz_attempt(&mut rng, &a, 5).unwrap();
            let chain = orlicz_h_chain(&w, &a).unwrap();
            assert!(chain.holds, "{chain:?}");
        }
    }
}
