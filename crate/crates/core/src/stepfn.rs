//! Nonnegative step functions on the half-line.
//!
//! A [`StepFunction`] stores breakpoints `0 = t₀ < t₁ < … < t_m` (with `t₀`
//! implicit) and values `v₁, …, v_m`; piece `i` is the right-open interval
//! `[t_{i-1}, t_i)`. The function vanishes on `[t_m, ∞)` and, when viewed on the
//! whole line, on `(-∞, 0)`.
//!
//! Canonical form drops zero-length pieces, merges adjacent pieces with equal
//! values and trims trailing zero pieces, so two canonical functions are equal
//! a.e. iff they are structurally equal.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Open interval `(left, right)` on the real line. In one dimension the ball
/// `B_r(x)` is `(x - r, x + r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct Interval {
    left: f64,
    right: f64,
}

#[derive(Deserialize)]
struct RawInterval {
    left: f64,
    right: f64,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;
    fn try_from(raw: RawInterval) -> Result<Self> {
        Interval::new(raw.left, raw.right)
    }
}

impl Interval {
    pub fn new(left: f64, right: f64) -> Result<Self> {
        if !(left.is_finite() && right.is_finite() && left < right) {
            return Err(Error::InvalidInterval { left, right });
        }
        Ok(Self { left, right })
    }

    /// The ball `(center - radius, center + radius)`.
    pub fn ball(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::NonPositiveArgument(radius));
        }
        Self::new(center - radius, center + radius)
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn right(&self) -> f64 {
        self.right
    }

    pub fn length(&self) -> f64 {
        self.right - self.left
    }

    /// Open-interval membership.
    pub fn contains(&self, x: f64) -> bool {
        self.left < x && x < self.right
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.left < other.right && other.left < self.right
    }
}

/// Nonnegative, finitely-piecewise-constant function on `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStepFunction", into = "RawStepFunction")]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

/// Wire form: `{"breakpoints":[t1,…,tm],"values":[v1,…,vm]}` with `t0 = 0` implicit.
#[derive(Serialize, Deserialize)]
struct RawStepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<RawStepFunction> for StepFunction {
    type Error = Error;
    fn try_from(raw: RawStepFunction) -> Result<Self> {
        StepFunction::new(raw.breakpoints, raw.values)
    }
}

impl From<StepFunction> for RawStepFunction {
    fn from(f: StepFunction) -> Self {
        RawStepFunction {
            breakpoints: f.breakpoints,
            values: f.values,
        }
    }
}

/// One piece `[left, right)` carrying `value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub left: f64,
    pub right: f64,
    pub value: f64,
}

impl Piece {
    pub fn length(&self) -> f64 {
        self.right - self.left
    }
}

impl StepFunction {
    /// Builds a step function from right endpoints and values.
    ///
    /// Loose input is accepted: repeated breakpoints (zero-length pieces),
    /// equal adjacent values and trailing zeros are canonicalized away.
    /// Decreasing breakpoints, negative or non-finite entries are rejected.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() != values.len() {
            return Err(Error::InvalidStepFunction(format!(
                "{} breakpoints but {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        let mut prev = 0.0;
        for (i, (&t, &v)) in breakpoints.iter().zip(&values).enumerate() {
            if !t.is_finite() || t < prev {
                return Err(Error::InvalidStepFunction(format!(
                    "breakpoint {i} = {t} is not finite and non-decreasing"
                )));
            }
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidStepFunction(format!(
                    "value {i} = {v} is not finite and nonnegative"
                )));
            }
            prev = t;
        }
        Ok(Self::canonical(breakpoints.into_iter().zip(values)))
    }

    /// Signed input reduced through the absolute value.
    pub fn from_signed(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new(breakpoints, values.into_iter().map(f64::abs).collect())
    }

    /// Consecutive pieces given as `(length, value)` starting at 0.
    pub fn from_lengths(pieces: &[(f64, f64)]) -> Result<Self> {
        let mut t = 0.0;
        let mut bps = Vec::with_capacity(pieces.len());
        let mut vals = Vec::with_capacity(pieces.len());
        for &(len, v) in pieces {
            if !(len >= 0.0) {
                return Err(Error::InvalidStepFunction(format!("negative length {len}")));
            }
            t += len;
            bps.push(t);
            vals.push(v);
        }
        Self::new(bps, vals)
    }

    pub fn zero() -> Self {
        Self {
            breakpoints: Vec::new(),
            values: Vec::new(),
        }
    }

    /// `height · χ_{(a, b)}` for `0 ≤ a < b`.
    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        Self::scaled_indicator(a, b, 1.0)
    }

    pub fn scaled_indicator(a: f64, b: f64, height: f64) -> Result<Self> {
        if !(a >= 0.0 && a < b && b.is_finite()) {
            return Err(Error::InvalidInterval { left: a, right: b });
        }
        Self::new(vec![a, b], vec![0.0, height])
    }

    /// Assumes the pairs are already validated (finite, nonnegative, sorted).
    fn canonical(pairs: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut breakpoints: Vec<f64> = Vec::new();
        let mut values: Vec<f64> = Vec::new();
        let mut left = 0.0;
        for (right, v) in pairs {
            if right <= left {
                continue;
            }
            match values.last() {
                Some(&last) if last == v => *breakpoints.last_mut().unwrap() = right,
                _ => {
                    breakpoints.push(right);
                    values.push(v);
                }
            }
            left = right;
        }
        while values.last() == Some(&0.0) {
            values.pop();
            breakpoints.pop();
        }
        Self { breakpoints, values }
    }

    /// Non-increasing arrangement of `(length, value)` pieces laid out from 0.
    /// Zero values and zero lengths are dropped.
    pub fn rearranged_from_pieces(pieces: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut ps: Vec<(f64, f64)> = pieces
            .into_iter()
            .filter(|&(len, v)| len > 0.0 && v > 0.0)
            .collect();
        ps.sort_by(|a, b| b.1.total_cmp(&a.1));
        let mut t = 0.0;
        Self::canonical(ps.into_iter().map(|(len, v)| {
            t += len;
            (t, v)
        }))
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn num_pieces(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Right end of the last piece; 0 for the zero function.
    pub fn support_end(&self) -> f64 {
        self.breakpoints.last().copied().unwrap_or(0.0)
    }

    pub fn pieces(&self) -> impl Iterator<Item = Piece> + '_ {
        let lefts = std::iter::once(0.0).chain(self.breakpoints.iter().copied());
        lefts
            .zip(&self.breakpoints)
            .zip(&self.values)
            .map(|((left, &right), &value)| Piece { left, right, value })
    }

    /// Value at `x`, with the right-piece convention at breakpoints.
    pub fn eval(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let idx = self.breakpoints.partition_point(|&t| t <= x);
        self.values.get(idx).copied().unwrap_or(0.0)
    }

    pub fn integral(&self) -> f64 {
        self.pieces().map(|p| p.length() * p.value).sum()
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// `ℒ¹({u > 0})`.
    pub fn support_measure(&self) -> f64 {
        self.pieces().filter(|p| p.value > 0.0).map(|p| p.length()).sum()
    }

    /// Index of the first increasing pair of adjacent pieces, if any.
    fn first_increase(&self) -> Option<usize> {
        self.values.windows(2).position(|w| w[1] > w[0])
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.first_increase().is_none()
    }

    pub fn check_nonincreasing(&self) -> Result<()> {
        match self.first_increase() {
            Some(index) => Err(Error::NotMonotone { index }),
            None => Ok(()),
        }
    }

    /// Distribution function `t ↦ ℒ¹({u > t})`.
    pub fn distribution(&self) -> Self {
        let mut ps: Vec<(f64, f64)> = self
            .pieces()
            .filter(|p| p.value > 0.0)
            .map(|p| (p.length(), p.value))
            .collect();
        ps.sort_by(|a, b| a.1.total_cmp(&b.1));
        let mut remaining: f64 = ps.iter().map(|p| p.0).sum();
        let mut pairs = Vec::new();
        let mut i = 0;
        while i < ps.len() {
            let level = ps[i].1;
            // on [previous level, level) the level set {u > t} is everything left
            pairs.push((level, remaining));
            while i < ps.len() && ps[i].1 == level {
                remaining -= ps[i].0;
                i += 1;
            }
        }
        Self::canonical(pairs)
    }

    /// Decreasing rearrangement `u*`.
    pub fn rearrangement(&self) -> Self {
        if self.is_nonincreasing() {
            return self.clone();
        }
        Self::rearranged_from_pieces(self.pieces().map(|p| (p.length(), p.value)))
    }

    /// Right-continuous generalized inverse `y ↦ sup{s : f(s) > y}` (0 on the
    /// empty set). With `require_nonincreasing` the input is checked first.
    pub fn right_inverse(&self, require_nonincreasing: bool) -> Result<Self> {
        if require_nonincreasing {
            self.check_nonincreasing()?;
        }
        // (value, right endpoint) sorted by descending value; the running max of
        // right endpoints gives sup{s : f(s) ≥ value}.
        let mut ps: Vec<(f64, f64)> = self
            .pieces()
            .filter(|p| p.value > 0.0)
            .map(|p| (p.value, p.right))
            .collect();
        ps.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut levels: Vec<(f64, f64)> = Vec::new();
        let mut reach: f64 = 0.0;
        let mut i = 0;
        while i < ps.len() {
            let level = ps[i].0;
            while i < ps.len() && ps[i].0 == level {
                reach = reach.max(ps[i].1);
                i += 1;
            }
            levels.push((level, reach));
        }
        levels.reverse();
        Ok(Self::canonical(levels))
    }

    /// `∫₀ˢ u(t) dt`; for `u = u*` this is `s · u**(s)`.
    pub fn partial_integral(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(Error::NonPositiveArgument(s));
        }
        Ok(self
            .pieces()
            .take_while(|p| p.left < s)
            .map(|p| (p.right.min(s) - p.left) * p.value)
            .sum())
    }

    /// `u**(s) = (1/s) ∫₀ˢ u*`, computed on the rearrangement.
    pub fn maximal_average(&self, s: f64) -> Result<f64> {
        Ok(self.rearrangement().partial_integral(s)? / s)
    }

    /// Dilation `s ↦ f(s · delta)`.
    pub fn dilate(&self, delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::NonPositiveArgument(delta));
        }
        Ok(Self::canonical(
            self.breakpoints
                .iter()
                .map(|t| t / delta)
                .zip(self.values.iter().copied()),
        ))
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameters(format!("scale factor {c}")));
        }
        Ok(Self::canonical(
            self.breakpoints
                .iter()
                .copied()
                .zip(self.values.iter().map(|v| v * c)),
        ))
    }

    /// Pointwise combination on the merged breakpoint grid.
    fn zip_with(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Self {
        let mut pairs = Vec::with_capacity(self.num_pieces() + other.num_pieces());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.breakpoints, &other.breakpoints);
        while i < a.len() || j < b.len() {
            let ta = a.get(i).copied().unwrap_or(f64::INFINITY);
            let tb = b.get(j).copied().unwrap_or(f64::INFINITY);
            let t = ta.min(tb);
            let va = self.values.get(i).copied().unwrap_or(0.0);
            let vb = other.values.get(j).copied().unwrap_or(0.0);
            pairs.push((t, op(va, vb)));
            if ta == t {
                i += 1;
            }
            if tb == t {
                j += 1;
            }
        }
        Self::canonical(pairs)
    }

    /// Pointwise sum.
    pub fn superpose(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn pointwise_max(&self, other: &Self) -> Self {
        self.zip_with(other, f64::max)
    }

    pub fn pointwise_min(&self, other: &Self) -> Self {
        self.zip_with(other, f64::min)
    }

    /// `∫ u · v`.
    pub fn integral_product(&self, other: &Self) -> f64 {
        self.zip_with(other, |x, y| x * y).integral()
    }

    /// Pieces of `u` over `G`, as `(length, value)`, covering all of `G`
    /// (zero on the negative half-line and beyond the support).
    pub fn pieces_over(&self, g: &Interval) -> Vec<(f64, f64)> {
        let (lo, hi) = (g.left(), g.right());
        let mut out = Vec::new();
        let mut cursor = lo;
        if cursor < 0.0 {
            let end = hi.min(0.0);
            out.push((end - cursor, 0.0));
            cursor = end;
        }
        if cursor >= hi {
            return out;
        }
        let start = self.breakpoints.partition_point(|&t| t <= cursor);
        for idx in start..self.breakpoints.len() {
            let right = self.breakpoints[idx].min(hi);
            out.push((right - cursor, self.values[idx]));
            cursor = right;
            if cursor >= hi {
                return out;
            }
        }
        out.push((hi - cursor, 0.0));
        out
    }

    /// `u · χ_G` in place (positions kept).
    pub fn restrict(&self, g: &Interval) -> Self {
        let lo = g.left().max(0.0);
        let hi = g.right();
        if hi <= 0.0 {
            return Self::zero();
        }
        let mut pairs = vec![(lo, 0.0)];
        for p in self.pieces() {
            if p.right <= lo || p.left >= hi {
                continue;
            }
            pairs.push((p.right.min(hi), p.value));
        }
        Self::canonical(pairs)
    }

    /// Shift right by `offset ≥ 0`.
    pub fn translate(&self, offset: f64) -> Result<Self> {
        if !(offset >= 0.0 && offset.is_finite()) {
            return Err(Error::InvalidParameters(format!("translation offset {offset}")));
        }
        let mut pairs = vec![(offset, 0.0)];
        pairs.extend(
            self.breakpoints
                .iter()
                .map(|t| t + offset)
                .zip(self.values.iter().copied()),
        );
        Ok(Self::canonical(pairs))
    }

    /// Structural equality up to an absolute tolerance on breakpoints and values.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.num_pieces() == other.num_pieces()
            && self
                .breakpoints
                .iter()
                .zip(&other.breakpoints)
                .all(|(a, b)| (a - b).abs() <= tol)
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_pieces() -> StepFunction {
        StepFunction::new(vec![1.0, 2.0, 2.5], vec![3.0, 1.0, 5.0]).unwrap()
    }

    #[test]
    fn canonical_form_merges_and_trims() {
        let f = StepFunction::new(vec![1.0, 1.0, 2.0, 3.0, 4.0], vec![2.0, 7.0, 2.0, 0.0, 0.0])
            .unwrap();
        assert_eq!(f.breakpoints(), &[2.0]);
        assert_eq!(f.values(), &[2.0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(StepFunction::new(vec![2.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(StepFunction::new(vec![1.0], vec![-1.0]).is_err());
        assert!(StepFunction::new(vec![1.0], vec![f64::NAN]).is_err());
        assert!(StepFunction::new(vec![1.0], vec![]).is_err());
    }

    #[test]
    fn signed_values_go_through_abs() {
        let f = StepFunction::from_signed(vec![1.0, 2.0], vec![-2.0, 1.0]).unwrap();
        assert_eq!(f.values(), &[2.0, 1.0]);
    }

    #[test]
    fn distribution_of_indicator() {
        let u = StepFunction::indicator(2.0, 5.0).unwrap();
        let d = u.distribution();
        assert_eq!(d.breakpoints(), &[1.0]);
        assert_eq!(d.values(), &[3.0]);
    }

    #[test]
    fn distribution_counts_levels() {
        let d = three_pieces().distribution();
        assert!(d.approx_eq(
            &StepFunction::new(vec![1.0, 3.0, 5.0], vec![2.5, 1.5, 0.5]).unwrap(),
            1e-12
        ));
    }

    #[test]
    fn rearrangement_sorts_pieces() {
        let r = three_pieces().rearrangement();
        assert!(r.approx_eq(
            &StepFunction::new(vec![0.5, 1.5, 2.5], vec![5.0, 3.0, 1.0]).unwrap(),
            1e-12
        ));
        let chi = StepFunction::indicator(2.0, 5.0).unwrap().rearrangement();
        assert_eq!(chi, StepFunction::indicator(0.0, 3.0).unwrap());
        assert_eq!(r.rearrangement(), r);
    }

    #[test]
    fn right_inverse_examples() {
        let f = StepFunction::indicator(0.0, 3.0).unwrap();
        assert_eq!(
            f.right_inverse(true).unwrap(),
            StepFunction::new(vec![1.0], vec![3.0]).unwrap()
        );
        let g = StepFunction::new(vec![1.0, 4.0], vec![2.0, 1.0]).unwrap();
        assert_eq!(
            g.right_inverse(true).unwrap(),
            StepFunction::new(vec![1.0, 2.0], vec![4.0, 1.0]).unwrap()
        );
        assert!(matches!(
            three_pieces().right_inverse(true),
            Err(Error::NotMonotone { index: 1 })
        ));
    }

    #[test]
    fn right_inverse_without_check_uses_sup_definition() {
        // f = 1 on [0,1), 0 on [1,2), 2 on [2,3): sup{f > y} is 3 for y < 2
        let f = StepFunction::new(vec![1.0, 2.0, 3.0], vec![1.0, 0.0, 2.0]).unwrap();
        let inv = f.right_inverse(false).unwrap();
        assert_eq!(inv, StepFunction::new(vec![2.0], vec![3.0]).unwrap());
        assert_ne!(inv, f.distribution());
    }

    #[test]
    fn partial_integral_rectangles() {
        let u = StepFunction::new(vec![1.0, 2.0], vec![3.0, 1.0]).unwrap();
        let i = u.partial_integral(1.5).unwrap();
        assert!((i - 3.5).abs() < 1e-15);
        assert!((i / 1.5 - 7.0 / 3.0).abs() < 1e-15);
        assert!((u.partial_integral(10.0).unwrap() - 4.0).abs() < 1e-15);
        assert_eq!(u.partial_integral(0.0), Err(Error::NonPositiveArgument(0.0)));
    }

    #[test]
    fn dilate_examples() {
        let f = StepFunction::indicator(0.0, 4.0).unwrap();
        assert_eq!(f.dilate(2.0).unwrap(), StepFunction::indicator(0.0, 2.0).unwrap());
        assert_eq!(three_pieces().dilate(1.0).unwrap(), three_pieces());
        assert!(f.dilate(0.0).is_err());
        assert!(f.dilate(-1.0).is_err());
    }

    #[test]
    fn superpose_examples() {
        let chi = StepFunction::indicator(0.0, 1.0).unwrap();
        assert_eq!(chi.superpose(&StepFunction::zero()), chi);
        assert_eq!(
            chi.superpose(&chi),
            StepFunction::scaled_indicator(0.0, 1.0, 2.0).unwrap()
        );
    }

    #[test]
    fn pieces_over_covers_negative_side_and_tail() {
        let u = StepFunction::new(vec![1.0, 2.0], vec![3.0, 1.0]).unwrap();
        let g = Interval::new(-1.0, 3.0).unwrap();
        let ps = u.pieces_over(&g);
        assert_eq!(ps, vec![(1.0, 0.0), (1.0, 3.0), (1.0, 1.0), (1.0, 0.0)]);
        let total: f64 = ps.iter().map(|p| p.0).sum();
        assert!((total - g.length()).abs() < 1e-15);
        let inner = u.pieces_over(&Interval::new(0.25, 0.5).unwrap());
        assert_eq!(inner, vec![(0.25, 3.0)]);
    }

    #[test]
    fn restrict_and_translate() {
        let u = three_pieces();
        let r = u.restrict(&Interval::new(0.5, 2.2).unwrap());
        assert!(r.approx_eq(
            &StepFunction::new(vec![0.5, 1.0, 2.0, 2.2], vec![0.0, 3.0, 1.0, 5.0]).unwrap(),
            1e-12
        ));
        let t = StepFunction::indicator(0.0, 1.0).unwrap().translate(2.0).unwrap();
        assert_eq!(t, StepFunction::indicator(2.0, 3.0).unwrap());
    }

    #[test]
    fn eval_uses_right_piece() {
        let u = three_pieces();
        assert_eq!(u.eval(1.0), 1.0);
        assert_eq!(u.eval(0.999), 3.0);
        assert_eq!(u.eval(2.5), 0.0);
        assert_eq!(u.eval(-0.1), 0.0);
    }

    #[test]
    fn json_round_trip_and_loose_read() {
        let u = three_pieces();
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"{"breakpoints":[1.0,2.0,2.5],"values":[3.0,1.0,5.0]}"#);
        let loose: StepFunction =
            serde_json::from_str(r#"{"breakpoints":[1,1,2,3],"values":[4,4,4,0]}"#).unwrap();
        assert_eq!(loose, StepFunction::new(vec![2.0], vec![4.0]).unwrap());
        assert!(serde_json::from_str::<StepFunction>(r#"{"breakpoints":[1],"values":[-1]}"#)
            .is_err());
    }
}
