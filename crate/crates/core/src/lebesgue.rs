//! Averaged-norm oscillation `‖u - u(x)‖⊘_{X(B_r(x))}` around points, and scans
//! of its behaviour as `r → 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maximal::Layout;
use crate::norms::{averaged_norm_of_pieces, NormSpec};
use crate::stepfn::{Interval, StepFunction};

/// `‖u - u(x)‖⊘_{X((x-r, x+r))}`, with `u(x)` the right-piece value.
pub fn local_oscillation<L: Layout + ?Sized>(u: &L, x: f64, r: f64, spec: &NormSpec) -> Result<f64> {
    let ball = Interval::ball(x, r)?;
    let centre = u.eval(x);
    let nonzero = u.pieces_over(&ball);
    let covered: f64 = nonzero.iter().map(|p| p.0).sum();
    let mut pieces: Vec<(f64, f64)> = nonzero.into_iter().map(|(len, v)| (len, (v - centre).abs())).collect();
    // where u vanishes the deviation is u(x)
    let rest = ball.length() - covered;
    if centre > 0.0 && rest > 0.0 {
        pieces.push((rest, centre));
    }
    averaged_norm_of_pieces(pieces, ball.length(), spec)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillationCurve {
    pub x: f64,
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
}

pub fn oscillation_curve<L: Layout + ?Sized>(
    u: &L,
    x: f64,
    radii: &[f64],
    spec: &NormSpec,
) -> Result<OscillationCurve> {
    check_radii(radii)?;
    let values = radii
        .iter()
        .map(|&r| local_oscillation(u, x, r, spec))
        .collect::<Result<Vec<f64>>>()?;
    Ok(OscillationCurve {
        x,
        radii: radii.to_vec(),
        values,
    })
}

fn check_radii(radii: &[f64]) -> Result<()> {
    if radii.is_empty()
        || radii.windows(2).any(|w| !(w[0] > w[1]))
        || !(radii[radii.len() - 1] > 0.0)
    {
        return Err(Error::InvalidParameters("radii must be positive and strictly decreasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub x: f64,
    /// Oscillation at the smallest radius.
    pub terminal: f64,
    /// Maximum over the tail half of the radii, the limsup estimate.
    pub limsup: f64,
    pub pass: bool,
    pub excluded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub spec: NormSpec,
    pub threshold: f64,
    /// Largest radius of the tail half; points closer than this to a jump are excluded.
    pub exclusion_radius: f64,
    pub points: Vec<ScanPoint>,
    /// Fraction of non-excluded points whose limsup estimate is within the threshold.
    pub pass_fraction: f64,
    /// Measure of the breakpoint neighbourhoods removed from the scan, within the
    /// sampled span.
    pub excluded_measure: f64,
    pub curves: Vec<OscillationCurve>,
}

impl ScanReport {
    /// `(x, terminal_oscillation, pass)` rows, excluded points omitted.
    pub fn rows(&self) -> Vec<(f64, f64, bool)> {
        self.points
            .iter()
            .filter(|p| !p.excluded)
            .map(|p| (p.x, p.terminal, p.pass))
            .collect()
    }
}

/// Scans `sample_points` with decreasing `radii`. Points whose tail-half balls
/// still reach a jump of `u` (the exceptional null set of a step function) are
/// excluded.
pub fn lebesgue_scan<L: Layout + ?Sized>(
    u: &L,
    spec: &NormSpec,
    sample_points: &[f64],
    radii: &[f64],
    threshold: f64,
    jumps: &[f64],
) -> Result<ScanReport> {
    check_radii(radii)?;
    let tail_start = radii.len() / 2;
    let floor = radii[tail_start];
    let near_jump = |x: f64| jumps.iter().any(|&j| (x - j).abs() < floor);
    let results = sample_points
        .par_iter()
        .map(|&x| {
            let curve = oscillation_curve(u, x, radii, spec)?;
            let limsup = curve.values[tail_start..].iter().copied().fold(0.0, f64::max);
            let terminal = curve.values[curve.values.len() - 1];
            let point = ScanPoint {
                x,
                terminal,
                limsup,
                pass: limsup <= threshold,
                excluded: near_jump(x),
            };
            Ok((point, curve))
        })
        .collect::<Result<Vec<_>>>()?;
    let (points, curves): (Vec<ScanPoint>, Vec<OscillationCurve>) = results.into_iter().unzip();
    let kept: Vec<&ScanPoint> = points.iter().filter(|p| !p.excluded).collect();
    let pass_fraction = if kept.is_empty() {
        0.0
    } else {
        kept.iter().filter(|p| p.pass).count() as f64 / kept.len() as f64
    };
    let excluded_measure = match (
        sample_points.iter().copied().reduce(f64::min),
        sample_points.iter().copied().reduce(f64::max),
    ) {
        (Some(lo), Some(hi)) => union_measure(jumps.iter().map(|&j| ((j - floor).max(lo), (j + floor).min(hi)))),
        _ => 0.0,
    };
    Ok(ScanReport {
        spec: *spec,
        threshold,
        exclusion_radius: floor,
        points,
        pass_fraction,
        excluded_measure,
        curves,
    })
}

/// Jump locations of a step function: breakpoints where the value changes,
/// including 0 when `u(0) > 0`.
pub fn jumps(u: &StepFunction) -> Vec<f64> {
    let mut out = Vec::new();
    if u.values().first().is_some_and(|&v| v > 0.0) {
        out.push(0.0);
    }
    out.extend_from_slice(u.breakpoints());
    out
}

fn union_measure(intervals: impl Iterator<Item = (f64, f64)>) -> f64 {
    let mut iv: Vec<(f64, f64)> = intervals.filter(|(a, b)| a < b).collect();
    iv.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut cur: Option<(f64, f64)> = None;
    for (a, b) in iv {
        cur = match cur {
            Some((ca, cb)) if a <= cb => Some((ca, cb.max(b))),
            Some((ca, cb)) => {
                total += cb - ca;
                Some((a, b))
            }
            None => Some((a, b)),
        };
    }
    total + cur.map_or(0.0, |(a, b)| b - a)
}
