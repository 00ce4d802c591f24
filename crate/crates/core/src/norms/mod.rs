//! Representation norms `‖·‖_{X̄(0,∞)}` on step functions.
//!
//! Every evaluator works on the decreasing rearrangement, so
//! `rep_norm(u) = ‖u*‖_{X̄}` for all inputs. Lorentz, Lebesgue, endpoint and
//! Marcinkiewicz norms are closed-form sums over the pieces of `u*`; the
//! Luxemburg norm is a bisection on `λ`; the Amemiya norm is a one-dimensional
//! minimization over `k`.

mod phi;
mod spec;
mod young;

pub use phi::ConcavePhi;
pub use spec::NormSpec;
pub use young::YoungFunction;

use crate::error::{Error, Result};
use crate::stepfn::{Interval, StepFunction};

/// Doubling/halving budget when bracketing the Luxemburg `λ`.
pub const ORLICZ_BRACKET_STEPS: usize = 200;
/// Bisection iteration cap for the Luxemburg `λ`.
pub const ORLICZ_BISECTION_STEPS: usize = 200;
/// Absolute tolerance on `λ` (tightened to relative below 1).
pub const ORLICZ_LAMBDA_TOL: f64 = 1e-12;

/// `‖f‖_{X̄(0,∞)}`, evaluated on `f*`.
pub fn rep_norm(f: &StepFunction, spec: &NormSpec) -> Result<f64> {
    spec.validate()?;
    let fs = f.rearrangement();
    decreasing_norm(&fs, spec)
}

/// Norm of an already non-increasing function. Skips the rearrangement.
pub(crate) fn decreasing_norm(fs: &StepFunction, spec: &NormSpec) -> Result<f64> {
    debug_assert!(fs.is_nonincreasing());
    if fs.is_zero() {
        return Ok(0.0);
    }
    Ok(match *spec {
        NormSpec::Lebesgue { p } => lebesgue(fs, p),
        NormSpec::Lorentz { p, q } => lorentz(fs, p, q),
        NormSpec::Orlicz { young } => luxemburg(fs, &young)?,
        NormSpec::LambdaPhi { phi } => lambda_phi(fs, &phi),
        NormSpec::MarcPhi { phi } => marcinkiewicz(fs, &phi),
    })
}

fn lebesgue(fs: &StepFunction, p: f64) -> f64 {
    if p.is_infinite() {
        return fs.sup();
    }
    let vmax = fs.sup();
    let sum: f64 = fs.pieces().map(|pc| pc.length() * (pc.value / vmax).powf(p)).sum();
    vmax * sum.powf(1.0 / p)
}

/// `‖s^{1/p - 1/q} f*(s)‖_{L^q}` on a non-increasing step function.
fn lorentz(fs: &StepFunction, p: f64, q: f64) -> f64 {
    if p.is_infinite() {
        return fs.sup();
    }
    if q.is_infinite() {
        // sup of s^{1/p} f*(s) is approached at the right end of each piece
        return fs
            .pieces()
            .map(|pc| pc.value * pc.right.powf(1.0 / p))
            .fold(0.0, f64::max);
    }
    if p == 1.0 && q == 1.0 {
        return fs.integral();
    }
    // piece [a,b) contributes v^q (p/q)(b^{q/p} - a^{q/p}) = (v b^{1/p})^q (p/q)(1 - (a/b)^{q/p})
    let terms: Vec<f64> = fs
        .pieces()
        .map(|pc| {
            let w = pc.value * pc.right.powf(1.0 / p);
            let k = (p / q) * (1.0 - (pc.left / pc.right).powf(q / p));
            q * w.ln() + k.ln()
        })
        .collect();
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| (t - m).exp()).sum();
    ((m + sum.ln()) / q).exp()
}

fn orlicz_modular(fs: &StepFunction, young: &YoungFunction, lambda: f64) -> f64 {
    fs.pieces()
        .map(|pc| pc.length() * young.eval(pc.value / lambda))
        .sum()
}

/// Luxemburg norm `inf{λ > 0 : ∫ A(f/λ) ≤ 1}`.
fn luxemburg(fs: &StepFunction, young: &YoungFunction) -> Result<f64> {
    if let YoungFunction::EssSupIndicator = young {
        return Ok(fs.sup());
    }
    let phi = |lambda: f64| orlicz_modular(fs, young, lambda);
    let start = fs.sup();
    let (mut lo, mut hi);
    if phi(start) > 1.0 {
        lo = start;
        hi = start;
        let mut steps = 0;
        while phi(hi) > 1.0 {
            lo = hi;
            hi *= 2.0;
            steps += 1;
            if steps > ORLICZ_BRACKET_STEPS {
                return Err(Error::BisectionFailure(ORLICZ_BRACKET_STEPS));
            }
        }
    } else {
        hi = start;
        lo = start;
        let mut steps = 0;
        while phi(lo) <= 1.0 {
            hi = lo;
            lo *= 0.5;
            steps += 1;
            if steps > ORLICZ_BRACKET_STEPS {
                return Err(Error::BisectionFailure(ORLICZ_BRACKET_STEPS));
            }
        }
    }
    for _ in 0..ORLICZ_BISECTION_STEPS {
        if hi - lo <= ORLICZ_LAMBDA_TOL * hi.min(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if phi(mid) <= 1.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `f*(0)φ(0⁺) + Σ vᵢ (φ(tᵢ) - φ(tᵢ₋₁))`, with `φ(t₀)` read as `φ(0⁺)`.
fn lambda_phi(fs: &StepFunction, phi: &ConcavePhi) -> f64 {
    let head = fs.sup() * phi.zero_plus();
    head + fs
        .pieces()
        .map(|pc| {
            let lower = if pc.left == 0.0 { phi.zero_plus() } else { phi.eval(pc.left) };
            pc.value * (phi.eval(pc.right) - lower)
        })
        .sum::<f64>()
}

/// `sup_s f**(s) φ(s)`. On each piece the product is quasi-convex in `s`
/// (single sign change of the derivative for `s^α`, convex for affine `φ`),
/// so the sup is attained at breakpoints, at `0⁺`, or in the tail limit.
fn marcinkiewicz(fs: &StepFunction, phi: &ConcavePhi) -> f64 {
    let mut best = fs.sup() * phi.zero_plus();
    let mut running = 0.0;
    for pc in fs.pieces() {
        running += pc.length() * pc.value;
        best = best.max(running / pc.right * phi.eval(pc.right));
    }
    let tail = match *phi {
        ConcavePhi::Power { alpha } if alpha == 1.0 => running,
        ConcavePhi::Power { .. } => 0.0,
        ConcavePhi::Affine { m, .. } => m * running,
    };
    best.max(tail)
}

/// Averaged norm `‖u‖⊘_{X(G)} = ‖(uχ_G)*(ℒ(G)·)‖_{X̄}`.
pub fn averaged_norm(u: &StepFunction, g: &Interval, spec: &NormSpec) -> Result<f64> {
    averaged_norm_of_pieces(u.pieces_over(g), g.length(), spec)
}

/// Averaged norm of a function given by its `(length, value)` pieces over a set of
/// measure `total`.
pub fn averaged_norm_of_pieces(
    pieces: impl IntoIterator<Item = (f64, f64)>,
    total: f64,
    spec: &NormSpec,
) -> Result<f64> {
    if !(total > 0.0) {
        return Err(Error::NonPositiveArgument(total));
    }
    spec.validate()?;
    let scaled =
        StepFunction::rearranged_from_pieces(pieces.into_iter().map(|(len, v)| (len / total, v)));
    decreasing_norm(&scaled, spec)
}

/// `‖χ_{(0,s)}‖_{X̄}`.
pub fn fundamental_function(spec: &NormSpec, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::NonPositiveArgument(s));
    }
    spec.validate()?;
    Ok(match *spec {
        NormSpec::Lebesgue { p } => s.powf(1.0 / p),
        NormSpec::Lorentz { p, q } => {
            if p.is_infinite() {
                1.0
            } else if q.is_infinite() {
                s.powf(1.0 / p)
            } else {
                (p / q).powf(1.0 / q) * s.powf(1.0 / p)
            }
        }
        NormSpec::Orlicz { young } => 1.0 / young.inverse(1.0 / s),
        NormSpec::LambdaPhi { phi } | NormSpec::MarcPhi { phi } => phi.eval(s),
    })
}

/// Relative tolerance on `k` for the Amemiya minimization.
pub const AMEMIYA_TOL: f64 = 1e-10;

/// Amemiya norm `inf_{k>0} (1/k)(1 + ∫ A(k|f|))`.
///
/// Power Young functions use the closed-form minimizer; other families use
/// golden-section search on `log k` after expanding a bracket. When the
/// infimum is only approached as `k → ∞` (as for `A(t) = t`) the value at the
/// bracket edge is returned.
pub fn amemiya_norm(f: &StepFunction, young: &YoungFunction) -> Result<f64> {
    young.validate()?;
    if !young.is_finite_valued() {
        return Err(Error::UnsupportedYoungFamily(young.name()));
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    if let YoungFunction::Power { p } = *young {
        let s: f64 = f.pieces().map(|pc| pc.length() * pc.value.powf(p)).sum();
        if p == 1.0 {
            return Ok(s);
        }
        let k = ((p - 1.0) * s).powf(-1.0 / p);
        return Ok(amemiya_objective(f, young, k));
    }
    let h = |x: f64| amemiya_objective(f, young, x.exp());
    Ok(golden_min_expanding(h, -(f.sup().ln())))
}

/// `(1/k)(1 + ∫ A(k f))`.
pub fn amemiya_objective(f: &StepFunction, young: &YoungFunction, k: f64) -> f64 {
    let integral: f64 = f.pieces().map(|pc| pc.length() * young.eval(k * pc.value)).sum();
    (1.0 + integral) / k
}

/// Minimum of a quasi-convex function of `x`, starting from `x0`.
fn golden_min_expanding(h: impl Fn(f64) -> f64, x0: f64) -> f64 {
    const MAX_EXPANSIONS: usize = 200;
    let step0 = 1.0;
    let (mut a, mut b) = (x0 - step0, x0 + step0);
    let (mut ha, mut hm, mut hb) = (h(a), h(x0), h(b));
    let mut m = x0;
    let mut expansions = 0;
    // grow until the middle point is below both ends
    while !(hm <= ha && hm <= hb) && expansions < MAX_EXPANSIONS {
        let width = b - a;
        if ha < hm {
            b = m;
            hb = hm;
            m = a;
            hm = ha;
            a -= width;
            ha = h(a);
        } else {
            a = m;
            ha = hm;
            m = b;
            hm = hb;
            b += width;
            hb = h(b);
        }
        expansions += 1;
    }
    if !(hm <= ha && hm <= hb) {
        return ha.min(hm).min(hb);
    }
    let _ = (ha, hb);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut hc, mut hd) = (h(c), h(d));
    for _ in 0..400 {
        if (b - a).abs() <= AMEMIYA_TOL * (1.0 + a.abs().max(b.abs())) * 1e-2 {
            break;
        }
        if hc <= hd {
            b = d;
            d = c;
            hd = hc;
            c = b - inv_phi * (b - a);
            hc = h(c);
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + inv_phi * (b - a);
            hd = h(d);
        }
    }
    hc.min(hd).min(hm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(a: f64) -> StepFunction {
        StepFunction::indicator(0.0, a).unwrap()
    }

    fn families() -> Vec<NormSpec> {
        vec![
            NormSpec::Lebesgue { p: 1.0 },
            NormSpec::Lebesgue { p: 3.0 },
            NormSpec::Lebesgue { p: f64::INFINITY },
            NormSpec::Lorentz { p: 2.0, q: 1.0 },
            NormSpec::Lorentz { p: 3.0, q: 2.0 },
            NormSpec::Lorentz { p: 2.0, q: 4.0 },
            NormSpec::Lorentz { p: 2.0, q: f64::INFINITY },
            NormSpec::Orlicz { young: YoungFunction::Power { p: 2.0 } },
            NormSpec::Orlicz { young: YoungFunction::PowerLog { p: 2.0, a: 1.0 } },
            NormSpec::Orlicz { young: YoungFunction::ExpMinusOne },
            NormSpec::Orlicz { young: YoungFunction::EssSupIndicator },
            NormSpec::LambdaPhi { phi: ConcavePhi::Power { alpha: 0.5 } },
            NormSpec::LambdaPhi { phi: ConcavePhi::Affine { b: 1.0, m: 0.5 } },
            NormSpec::MarcPhi { phi: ConcavePhi::Power { alpha: 0.5 } },
            NormSpec::MarcPhi { phi: ConcavePhi::Power { alpha: 1.0 } },
            NormSpec::MarcPhi { phi: ConcavePhi::Affine { b: 1.0, m: 0.5 } },
        ]
    }

    #[test]
    fn lorentz_indicator_closed_form() {
        for &(p, q, a) in &[(2.0, 1.0, 1.0), (3.0, 2.0, 4.0)] {
            let expected = (p / q as f64).powf(1.0 / q) * f64::powf(a, 1.0 / p);
            let got = rep_norm(&chi(a), &NormSpec::Lorentz { p, q }).unwrap();
            assert!((got - expected).abs() < 1e-12, "({p},{q},{a}): {got} vs {expected}");
        }
    }

    #[test]
    fn orlicz_square_of_two() {
        let f = StepFunction::scaled_indicator(0.0, 1.0, 2.0).unwrap();
        let n = rep_norm(&f, &NormSpec::Orlicz { young: YoungFunction::Power { p: 2.0 } }).unwrap();
        assert!((n - 2.0).abs() < 1e-11);
    }

    #[test]
    fn marcinkiewicz_indicator_is_one() {
        for alpha in [0.1, 0.5, 0.9, 1.0] {
            let n = rep_norm(&chi(1.0), &NormSpec::MarcPhi { phi: ConcavePhi::Power { alpha } }).unwrap();
            assert!((n - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn endpoint_norms_of_indicators_equal_phi() {
        for phi in [ConcavePhi::Power { alpha: 0.3 }, ConcavePhi::Affine { b: 2.0, m: 0.5 }] {
            for a in [0.01, 0.7, 3.0, 40.0] {
                let l = rep_norm(&chi(a), &NormSpec::LambdaPhi { phi }).unwrap();
                let m = rep_norm(&chi(a), &NormSpec::MarcPhi { phi }).unwrap();
                assert!((l - phi.eval(a)).abs() < 1e-12);
                assert!((m - phi.eval(a)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fundamental_function_matches_rep_norm() {
        for spec in families() {
            for s in [0.05, 0.5, 1.0, 7.0] {
                let ff = fundamental_function(&spec, s).unwrap();
                let rn = rep_norm(&chi(s), &spec).unwrap();
                assert!((ff - rn).abs() <= 1e-10 * rn.max(1.0), "{spec:?} at {s}: {ff} vs {rn}");
            }
        }
        let sq = NormSpec::Orlicz { young: YoungFunction::Power { p: 2.0 } };
        assert!((fundamental_function(&sq, 9.0).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(
            fundamental_function(&sq, 0.0),
            Err(Error::NonPositiveArgument(0.0))
        );
    }

    #[test]
    fn averaged_norm_of_one_is_independent_of_g() {
        let one = StepFunction::new(vec![100.0], vec![1.0]).unwrap();
        let g1 = Interval::new(0.0, 1.0).unwrap();
        let g2 = Interval::new(3.0, 17.0).unwrap();
        for spec in families() {
            let a = averaged_norm(&one, &g1, &spec).unwrap();
            let b = averaged_norm(&one, &g2, &spec).unwrap();
            assert!((a - b).abs() < 1e-12, "{spec:?}");
            assert!((a - rep_norm(&chi(1.0), &spec).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn averaged_norm_half_indicator() {
        let g = Interval::new(0.0, 2.0).unwrap();
        for p in [1.0, 2.0, 5.0] {
            let v = averaged_norm(&chi(1.0), &g, &NormSpec::Lebesgue { p }).unwrap();
            assert!((v - 0.5f64.powf(1.0 / p)).abs() < 1e-14);
        }
        let zero = averaged_norm(&StepFunction::zero(), &g, &NormSpec::Lebesgue { p: 2.0 }).unwrap();
        assert_eq!(zero, 0.0);
    }

    #[test]
    fn amemiya_examples() {
        let f = StepFunction::new(vec![0.5, 2.0], vec![3.0, 1.0]).unwrap();
        let l1 = amemiya_norm(&f, &YoungFunction::Power { p: 1.0 }).unwrap();
        assert!((l1 - f.integral()).abs() < 1e-14);
        let l1_log = amemiya_norm(&f, &YoungFunction::PowerLog { p: 1.0, a: 0.0 }).unwrap();
        assert!((l1_log - f.integral()).abs() < 1e-6 * f.integral());
        let sq = amemiya_norm(&chi(1.0), &YoungFunction::Power { p: 2.0 }).unwrap();
        assert!((sq - 2.0).abs() < 1e-14);
        assert!(matches!(
            amemiya_norm(&chi(1.0), &YoungFunction::EssSupIndicator),
            Err(Error::UnsupportedYoungFamily(_))
        ));
    }

    #[test]
    fn amemiya_golden_section_matches_power_closed_form() {
        // PowerLog with a = 0 is t^p but goes through the numeric branch
        let f = StepFunction::new(vec![0.3, 1.0, 2.5], vec![4.0, 2.0, 0.5]).unwrap();
        for p in [1.5, 2.0, 3.0] {
            let closed = amemiya_norm(&f, &YoungFunction::Power { p }).unwrap();
            let numeric = amemiya_norm(&f, &YoungFunction::PowerLog { p, a: 0.0 }).unwrap();
            assert!((closed - numeric).abs() < 1e-12 * closed, "p={p}: {closed} vs {numeric}");
        }
    }

    #[test]
    fn quasi_norm_lorentz_q_gt_p_is_evaluated_as_displayed() {
        // (∫ s^{q/p-1} f*^q)^{1/q} for f* = 2χ(0,1) + χ(1,3), p=2, q=4
        let f = StepFunction::new(vec![1.0, 3.0], vec![2.0, 1.0]).unwrap();
        let direct = (16.0 * 0.5 * 1.0 + 1.0 * 0.5 * (9.0 - 1.0)) as f64;
        let got = rep_norm(&f, &NormSpec::Lorentz { p: 2.0, q: 4.0 }).unwrap();
        assert!((got - direct.powf(0.25)).abs() < 1e-13);
    }

    #[test]
    fn invalid_spec_is_rejected() {
        let bad = NormSpec::Lorentz { p: 1.0, q: f64::INFINITY };
        assert!(matches!(rep_norm(&chi(1.0), &bad), Err(Error::InvalidSpec(_))));
    }
}
