//! Brute-force maximal operator `M_X u(x) = sup_{B ∋ x} ‖u‖⊘_{X(B)}` on a 1-D grid,
//! with weak-type, Riesz-Wiener and level-set measurements.
//!
//! Inputs are anything implementing [`Layout`]: a plain [`StepFunction`], or a
//! transplanted witness whose pieces are too short to place in absolute
//! coordinates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{averaged_norm_of_pieces, rep_norm, NormSpec};
use crate::stepfn::{Interval, StepFunction};

/// A nonnegative function on the line that can report its pieces over an interval.
pub trait Layout: Sync {
    /// Nonzero `(length, value)` pieces of the function over `g`.
    fn pieces_over(&self, g: &Interval) -> Vec<(f64, f64)>;
    /// Value at `x`, right-piece convention.
    fn eval(&self, x: f64) -> f64;
    /// Smallest closed interval containing the support, if nonzero.
    fn support_hull(&self) -> Option<(f64, f64)>;
    /// Decreasing rearrangement.
    fn rearrangement(&self) -> StepFunction;
}

impl Layout for StepFunction {
    fn pieces_over(&self, g: &Interval) -> Vec<(f64, f64)> {
        StepFunction::pieces_over(self, g)
            .into_iter()
            .filter(|&(len, v)| len > 0.0 && v > 0.0)
            .collect()
    }

    fn eval(&self, x: f64) -> f64 {
        StepFunction::eval(self, x)
    }

    fn support_hull(&self) -> Option<(f64, f64)> {
        let first = self.pieces().find(|p| p.value > 0.0)?;
        Some((first.left, self.support_end()))
    }

    fn rearrangement(&self) -> StepFunction {
        StepFunction::rearrangement(self)
    }
}

/// `‖u‖⊘_{X(G)}` for any layout.
pub fn averaged_norm_on<L: Layout + ?Sized>(u: &L, g: &Interval, spec: &NormSpec) -> Result<f64> {
    averaged_norm_of_pieces(u.pieces_over(g), g.length(), spec)
}

/// Uniform grid on `[a, b]` with `n` nodes `x_j = a + j (b - a)/n`, `j < n`;
/// node `j` owns the cell `[x_j, x_j + h)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGrid")]
pub struct Grid1D {
    a: f64,
    b: f64,
    n: usize,
}

#[derive(Deserialize)]
struct RawGrid {
    a: f64,
    b: f64,
    n: usize,
}

impl TryFrom<RawGrid> for Grid1D {
    type Error = Error;
    fn try_from(r: RawGrid) -> Result<Self> {
        Grid1D::new(r.a, r.b, r.n)
    }
}

impl Grid1D {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidGrid(format!("domain [{a}, {b}] is empty or infinite")));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 nodes, got {n}")));
        }
        Ok(Self { a, b, n })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spacing(&self) -> f64 {
        (self.b - self.a) / self.n as f64
    }

    /// `a + j h` for `j ∈ 0..=n`; `endpoint(n) = b`.
    pub fn endpoint(&self, j: usize) -> f64 {
        if j == self.n {
            self.b
        } else {
            self.a + j as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.endpoint(j)).collect()
    }
}

/// Candidate balls for the supremum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "strategy", content = "intervals", rename_all = "snake_case")]
pub enum CandidateStrategy {
    /// Every interval whose endpoints are grid endpoints.
    AllPairs,
    /// Caller-supplied intervals.
    ExplicitList(Vec<Interval>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledField {
    pub grid: Grid1D,
    pub values: Vec<f64>,
    /// Set when `u` has support outside the grid domain.
    pub clipped: bool,
}

impl SampledField {
    /// Decreasing rearrangement, each node owning one cell.
    pub fn rearrangement(&self) -> StepFunction {
        let h = self.grid.spacing();
        StepFunction::rearranged_from_pieces(self.values.iter().map(|&v| (h, v)))
    }

    /// `(x, value)` rows.
    pub fn rows(&self) -> Vec<(f64, f64)> {
        self.grid.nodes().into_iter().zip(self.values.iter().copied()).collect()
    }
}

/// `M_X u` at the grid nodes.
///
/// A node counts as inside a candidate when `l ≤ x ≤ r`. For the all-pairs
/// family this matches the open-ball supremum, because averaged norms are
/// continuous in the endpoints.
pub fn maximal_field<L: Layout + ?Sized>(
    u: &L,
    spec: &NormSpec,
    grid: &Grid1D,
    candidates: &CandidateStrategy,
) -> Result<SampledField> {
    spec.validate()?;
    let clipped = u
        .support_hull()
        .is_some_and(|(lo, hi)| lo < grid.a || hi > grid.b);
    let values = match candidates {
        CandidateStrategy::AllPairs => all_pairs(u, spec, grid)?,
        CandidateStrategy::ExplicitList(list) => explicit(u, spec, grid, list)?,
    };
    Ok(SampledField {
        grid: *grid,
        values,
        clipped,
    })
}

fn all_pairs<L: Layout + ?Sized>(u: &L, spec: &NormSpec, grid: &Grid1D) -> Result<Vec<f64>> {
    let n = grid.n;
    // row i: suffix maxima over right endpoints k > i of the norm on (e_i, e_k)
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let left = grid.endpoint(i);
            let mut row = vec![0.0; n + 1 - i];
            for k in (i + 1)..=n {
                let g = Interval::new(left, grid.endpoint(k))?;
                row[k - i] = averaged_norm_on(u, &g, spec)?;
            }
            for idx in (1..row.len() - 1).rev() {
                row[idx] = row[idx].max(row[idx + 1]);
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok((0..n)
        .into_par_iter()
        .map(|j| {
            (0..=j)
                .map(|i| rows[i][j.max(i + 1) - i])
                .fold(0.0, f64::max)
        })
        .collect())
}

fn explicit<L: Layout + ?Sized>(u: &L, spec: &NormSpec, grid: &Grid1D, list: &[Interval]) -> Result<Vec<f64>> {
    if list.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let norms = list
        .par_iter()
        .map(|g| averaged_norm_on(u, g, spec))
        .collect::<Result<Vec<f64>>>()?;
    let nodes = grid.nodes();
    Ok(nodes
        .par_iter()
        .map(|&x| {
            list.iter()
                .zip(&norms)
                .filter(|(g, _)| g.left() <= x && x <= g.right())
                .map(|(_, &v)| v)
                .fold(0.0, f64::max)
        })
        .collect())
}

/// Mesh-cell measure of `{x_j : field(x_j) > t}`.
pub fn level_set_measure(field: &SampledField, t: f64) -> f64 {
    field.values.iter().filter(|&&v| v > t).count() as f64 * field.grid.spacing()
}

/// Exact measure of the union of those candidates whose averaged norm exceeds `t`.
/// Every point of such a candidate has `M_X u > t`, so this is a lower bound for
/// `ℒ({M_X u > t})`.
pub fn superlevel_union_measure<L: Layout + ?Sized>(
    u: &L,
    spec: &NormSpec,
    candidates: &[Interval],
    t: f64,
) -> Result<f64> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut hits: Vec<(f64, f64)> = Vec::new();
    for g in candidates {
        if averaged_norm_on(u, g, spec)? > t {
            hits.push((g.left(), g.right()));
        }
    }
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut run: Option<(f64, f64)> = None;
    for (l, r) in hits {
        run = match run {
            Some((rl, rr)) if l <= rr => Some((rl, rr.max(r))),
            Some((rl, rr)) => {
                total += rr - rl;
                Some((l, r))
            }
            None => Some((l, r)),
        };
    }
    if let Some((rl, rr)) = run {
        total += rr - rl;
    }
    Ok(total)
}

/// Measured curve and its supremum, with the inputs that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub kind: String,
    pub spec: NormSpec,
    pub grid: Grid1D,
    pub domain: Option<Interval>,
    pub norm: f64,
    /// Abscissae: thresholds `t` or measures `s`.
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    /// Supremum over the sampled curve.
    pub sup: f64,
    /// Supremum over all thresholds, when computable from the field.
    pub exact_sup: Option<f64>,
    pub clipped: bool,
}

/// `sup_t t ℒ({x ∈ K : M_X u(x) > t}) / ‖u‖_X`, on the given thresholds and
/// exactly over all thresholds.
pub fn weak_type_profile(
    u: &StepFunction,
    k: &Interval,
    spec: &NormSpec,
    field: &SampledField,
    thresholds: &[f64],
) -> Result<EstimateReport> {
    let norm = rep_norm(u, spec)?;
    if norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let h = field.grid.spacing();
    let mut inside: Vec<f64> = field
        .rows()
        .into_iter()
        .filter(|&(x, _)| k.left() <= x && x < k.right())
        .map(|(_, v)| v)
        .collect();
    let values: Vec<f64> = thresholds
        .iter()
        .map(|&t| t * inside.iter().filter(|&&v| v > t).count() as f64 * h / norm)
        .collect();
    // sup over all t: just below the i-th largest value, i+1 cells exceed t
    inside.sort_by(|a, b| b.total_cmp(a));
    let exact = inside
        .iter()
        .enumerate()
        .map(|(i, &v)| v * (i + 1) as f64 * h / norm)
        .fold(0.0, f64::max);
    Ok(EstimateReport {
        kind: "weak_type".into(),
        spec: *spec,
        grid: field.grid,
        domain: Some(*k),
        norm,
        xs: thresholds.to_vec(),
        sup: values.iter().copied().fold(0.0, f64::max),
        values,
        exact_sup: Some(exact),
        clipped: field.clipped,
    })
}

/// `(M_X u)*(s) / ‖u*‖⊘_{X̄(0,s)}` over `ss`.
pub fn riesz_wiener_profile<L: Layout + ?Sized>(
    u: &L,
    spec: &NormSpec,
    field: &SampledField,
    ss: &[f64],
) -> Result<EstimateReport> {
    let us = u.rearrangement();
    if us.is_zero() {
        return Err(Error::ZeroNorm);
    }
    let ms = field.rearrangement();
    let values = ss
        .iter()
        .map(|&s| {
            let denom = averaged_norm_on(&us, &Interval::new(0.0, s)?, spec)?;
            Ok(ms.eval(s) / denom)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(EstimateReport {
        kind: "riesz_wiener".into(),
        spec: *spec,
        grid: field.grid,
        domain: None,
        norm: rep_norm(&us, spec)?,
        xs: ss.to_vec(),
        sup: values.iter().copied().fold(0.0, f64::max),
        values,
        exact_sup: None,
        clipped: field.clipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi() -> StepFunction {
        StepFunction::indicator(0.0, 1.0).unwrap()
    }

    /// Direct uncentered average maximal function on the same candidates.
    fn direct_average(u: &StepFunction, grid: &Grid1D) -> Vec<f64> {
        let ends: Vec<f64> = (0..=grid.n()).map(|j| grid.endpoint(j)).collect();
        grid.nodes()
            .iter()
            .map(|&x| {
                let mut best: f64 = 0.0;
                for i in 0..ends.len() {
                    for k in i + 1..ends.len() {
                        if ends[i] <= x && x <= ends[k] {
                            let g = Interval::new(ends[i], ends[k]).unwrap();
                            let mass: f64 = u.restrict(&g).integral();
                            best = best.max(mass / g.length());
                        }
                    }
                }
                best
            })
            .collect()
    }

    #[test]
    fn l1_field_matches_direct_averages() {
        let u = StepFunction::new(vec![0.5, 1.0, 1.7, 2.5], vec![0.0, 2.0, 0.5, 1.0]).unwrap();
        let grid = Grid1D::new(-1.0, 3.0, 24).unwrap();
        let field = maximal_field(&u, &NormSpec::Lebesgue { p: 1.0 }, &grid, &CandidateStrategy::AllPairs).unwrap();
        for (a, b) in field.values.iter().zip(direct_average(&u, &grid)) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        assert!(!field.clipped);
    }

    #[test]
    fn constant_input_gives_constant_field() {
        let u = StepFunction::new(vec![10.0], vec![2.0]).unwrap();
        let grid = Grid1D::new(1.0, 5.0, 16).unwrap();
        let spec = NormSpec::Lorentz { p: 3.0, q: 2.0 };
        let expected = 2.0 * rep_norm(&chi(), &spec).unwrap();
        let field = maximal_field(&u, &spec, &grid, &CandidateStrategy::AllPairs).unwrap();
        assert!(field.values.iter().all(|v| (v - expected).abs() < 1e-12));
        assert_eq!(level_set_measure(&field, expected * 0.9), 4.0);
        assert_eq!(level_set_measure(&field, expected * 1.1), 0.0);
    }

    #[test]
    fn explicit_list_lower_bound_and_empty() {
        let u = chi();
        let spec = NormSpec::Lebesgue { p: 2.0 };
        let grid = Grid1D::new(-1.0, 3.0, 40).unwrap();
        let b = Interval::new(0.0, 2.0).unwrap();
        let field = maximal_field(&u, &spec, &grid, &CandidateStrategy::ExplicitList(vec![b])).unwrap();
        let v = averaged_norm_on(&u, &b, &spec).unwrap();
        for (x, f) in field.rows() {
            if b.left() <= x && x <= b.right() {
                assert!(f >= v);
            }
        }
        assert_eq!(
            maximal_field(&u, &spec, &grid, &CandidateStrategy::ExplicitList(vec![])),
            Err(Error::EmptyCandidates)
        );
    }

    #[test]
    fn weak_type_of_unit_indicator() {
        // M u = 1 on [0,1] and 1/dist-to-far-end outside; sup_t t·|{Mu>t}∩K| = 5/3
        let k = Interval::new(-2.0, 3.0).unwrap();
        let grid = Grid1D::new(-2.0, 3.0, 500).unwrap();
        let spec = NormSpec::Lebesgue { p: 1.0 };
        let field = maximal_field(&chi(), &spec, &grid, &CandidateStrategy::AllPairs).unwrap();
        let rep = weak_type_profile(&chi(), &k, &spec, &field, &[0.25, 1.0 / 3.0, 0.5]).unwrap();
        assert!((rep.exact_sup.unwrap() - 5.0 / 3.0).abs() < 0.02);
        assert_eq!(
            weak_type_profile(&StepFunction::zero(), &k, &spec, &field, &[0.5]).map(|_| ()),
            Err(Error::ZeroNorm)
        );
    }

    #[test]
    fn riesz_wiener_curve_for_l1() {
        // (M u)*(s) = 2/(s+1) beyond s = 1, u**(s) = 1/s, ratio 2s/(s+1)
        let grid = Grid1D::new(-2.0, 3.0, 500).unwrap();
        let spec = NormSpec::Lebesgue { p: 1.0 };
        let field = maximal_field(&chi(), &spec, &grid, &CandidateStrategy::AllPairs).unwrap();
        let rep = riesz_wiener_profile(&chi(), &spec, &field, &[0.5, 2.0, 3.0]).unwrap();
        assert!((rep.values[0] - 1.0).abs() < 0.02);
        assert!((rep.values[1] - 4.0 / 3.0).abs() < 0.02);
        assert!((rep.values[2] - 1.5).abs() < 0.02);
    }

    #[test]
    fn grid_json() {
        let g: Grid1D = serde_json::from_str(r#"{"a":-1,"b":2,"n":30}"#).unwrap();
        assert_eq!(g.spacing(), 0.1);
        assert!(serde_json::from_str::<Grid1D>(r#"{"a":1,"b":0,"n":30}"#).is_err());
    }
}
