//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rinorm_cli::{emit_report, run_target, Overrides, PRESETS};
use rinorm_core::gx::{
    concavity_suite, f_profile, gx_closed_lambda, gx_closed_lorentz, gx_value, partition_ratios, GFunctional,
    Partition,
};
use rinorm_core::maximal::{
    maximal_field, riesz_wiener_profile, superlevel_union_measure, CandidateStrategy, Grid1D, Layout,
};
use rinorm_core::witness::{
    exp_probe, lac_probe, lorentz_h_witness, lorentz_witness_partition_ratios, marcinkiewicz_extremal,
    orlicz_h_chain, random_orlicz_attempt, transplant,
};
use rinorm_core::{sampling, ConcavePhi, NormSpec, StepFunction, YoungFunction};

type Outcome = Result<String, String>;

/// Harmonic numbers summed from the small end, independent of the library.
fn harmonic_oracle(n: usize) -> f64 {
    (1..=n).rev().map(|k| 1.0 / k as f64).sum()
}

fn geomspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| lo * (hi / lo).powf(i as f64 / (count - 1) as f64))
        .collect()
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    if elapsed.as_secs_f64() < limit_s {
        Ok(())
    } else {
        Err(format!("runtime {:.2}s exceeds {limit_s}s", elapsed.as_secs_f64()))
    }
}

fn increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

fn c1() -> Outcome {
    let start = Instant::now();
    let w = lorentz_h_witness(1.0, 2.0, 1.5, 40).map_err(|e| e.to_string())?;
    let spec = NormSpec::Lorentz { p: 1.0, q: 2.0 };
    let target = 1.5 / 2f64.sqrt();
    let mut dev: f64 = 0.0;
    for k in 0..w.len() {
        dev = dev.max((w.piece_norm(k, &spec).map_err(|e| e.to_string())? - target).abs());
    }
    let sum: f64 = w.weights.iter().sum();
    let h = harmonic_oracle(40);
    within(start.elapsed(), 1.0)?;
    let detail = format!("max |piece - 1.5/sqrt2| = {dev:.2e}, |sum a_k - H_40| = {:.2e}", (sum - h).abs());
    if dev <= 1e-9 && (sum - h).abs() <= 1e-12 && w.len() == 40 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c2() -> Outcome {
    let start = Instant::now();
    let spec = NormSpec::Lorentz { p: 1.0, q: 2.0 };
    let mut measures = Vec::new();
    let mut short = Vec::new();
    for n in [8, 16, 32, 64] {
        let w = lorentz_h_witness(1.0, 2.0, 1.5, n).map_err(|e| e.to_string())?;
        let layout = transplant(&w, 0.0).map_err(|e| e.to_string())?;
        let m = superlevel_union_measure(&layout, &spec, &layout.balls, 1.0).map_err(|e| e.to_string())?;
        // the union is a forward float sum, the oracle a backward one
        if m < harmonic_oracle(n) * (1.0 - 4.0 * f64::EPSILON) {
            short.push(n);
        }
        measures.push(m);
    }
    within(start.elapsed(), 5.0)?;
    let detail = format!("measures {measures:.6?}");
    if short.is_empty() && increasing(&measures) {
        Ok(detail)
    } else {
        Err(format!("{detail}; below H_N at {short:?}"))
    }
}

fn c3() -> Outcome {
    let start = Instant::now();
    let functionals = [
        GFunctional::Representation { spec: NormSpec::Lorentz { p: 1.0, q: 1.0 } },
        GFunctional::Representation { spec: NormSpec::Lorentz { p: 2.0, q: 1.0 } },
        GFunctional::Representation { spec: NormSpec::Lorentz { p: 2.0, q: 2.0 } },
        GFunctional::Representation { spec: NormSpec::Lorentz { p: 3.0, q: 2.0 } },
        GFunctional::Representation { spec: NormSpec::LambdaPhi { phi: ConcavePhi::Power { alpha: 0.5 } } },
        GFunctional::Representation { spec: NormSpec::LambdaPhi { phi: ConcavePhi::Affine { b: 0.5, m: 1.0 } } },
        GFunctional::Amemiya { young: YoungFunction::Power { p: 2.0 } },
        GFunctional::Amemiya { young: YoungFunction::PowerLog { p: 2.0, a: 1.0 } },
    ];
    let mut worst = f64::INFINITY;
    let mut bad = Vec::new();
    for (i, g) in functionals.iter().enumerate() {
        let suite = concavity_suite(g, 1000, 3000 + i as u64).map_err(|e| e.to_string())?;
        worst = worst.min(suite.min_ratio);
        if suite.min_ratio < 1.0 - 1e-9 {
            bad.push(format!("{} {:.12}", g.label(), suite.min_ratio));
        }
    }
    within(start.elapsed(), 30.0)?;
    if bad.is_empty() {
        Ok(format!("8 functionals x 1000 combos, min ratio {worst:.12}"))
    } else {
        Err(bad.join("; "))
    }
}

/// Frozen after direct evaluation of the truncated witness with the generic
/// partition code (N = 10, 100) and the scaled series (all N).
const C4_FIXTURES: [(usize, f64); 3] = [(10, 1.668340103375), (100, 2.868706921746), (1000, 4.128211712874)];

fn c4() -> Outcome {
    let start = Instant::now();
    let spec = NormSpec::Lorentz { p: 1.0, q: 2.0 };
    let mut values = Vec::new();
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, fixture) in C4_FIXTURES {
        let series = lorentz_witness_partition_ratios(1.0, 2.0, 1.5, n)
            .map_err(|e| e.to_string())?
            .sum_ratio;
        if n <= 100 {
            let w = lorentz_h_witness(1.0, 2.0, 1.5, n).map_err(|e| e.to_string())?;
            let partition = Partition::covering(&w.intervals).map_err(|e| e.to_string())?;
            let direct = partition_ratios(&w.f, &partition, &spec).map_err(|e| e.to_string())?.sum_ratio;
            if (direct - series).abs() > 1e-9 * series {
                ok = false;
                notes.push(format!("N={n}: direct {direct} vs series {series}"));
            }
        }
        if (series - fixture).abs() > 1e-9 * fixture {
            ok = false;
            notes.push(format!("N={n}: fixture drift {series} vs {fixture}"));
        }
        let formula = 3f64.sqrt() / std::f64::consts::PI * harmonic_oracle(n);
        let gap = (series - formula).abs() / formula;
        if gap > 0.02 {
            ok = false;
        }
        notes.push(format!("N={n}: {series:.6} vs (sqrt3/pi)H_N {formula:.6} ({:.2}%)", 100.0 * gap));
        values.push(series);
    }
    if !increasing(&values) {
        ok = false;
        notes.push("not increasing".into());
    }
    within(start.elapsed(), 10.0)?;
    if ok {
        Ok(notes.join("; "))
    } else {
        Err(notes.join("; "))
    }
}

fn c5() -> Outcome {
    let mut rng = sampling::rng(5005);
    let lorentz = [(1.0, 1.0), (2.0, 1.0), (2.0, 2.0), (3.0, 2.0), (1.5, 3.0)];
    let phis = [ConcavePhi::Power { alpha: 0.5 }, ConcavePhi::Affine { b: 0.5, m: 1.0 }];
    let mut worst: f64 = 0.0;
    for _ in 0..300 {
        let f = sampling::nonincreasing(&mut rng, 8, 1.0);
        if f.is_zero() {
            continue;
        }
        for (p, q) in lorentz {
            let a = gx_value(&f, &NormSpec::Lorentz { p, q }).map_err(|e| e.to_string())?;
            let b = gx_closed_lorentz(&f, p, q).map_err(|e| e.to_string())?;
            worst = worst.max((a - b).abs() / b.abs().max(f64::MIN_POSITIVE));
        }
        for phi in phis {
            let a = gx_value(&f, &NormSpec::LambdaPhi { phi }).map_err(|e| e.to_string())?;
            let b = gx_closed_lambda(&f, &phi).map_err(|e| e.to_string())?;
            worst = worst.max((a - b).abs() / b.abs().max(f64::MIN_POSITIVE));
        }
    }
    let detail = format!("max relative error {worst:.2e}");
    if worst <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c6() -> Outcome {
    let specs = [
        NormSpec::Lebesgue { p: 2.0 },
        NormSpec::Lorentz { p: 3.0, q: 2.0 },
        NormSpec::Orlicz { young: YoungFunction::PowerLog { p: 2.0, a: 1.0 } },
        NormSpec::LambdaPhi { phi: ConcavePhi::Power { alpha: 0.5 } },
        NormSpec::MarcPhi { phi: ConcavePhi::Power { alpha: 0.5 } },
    ];
    let rs = geomspace(0.01, 10.0, 50);
    let mut rng = sampling::rng(6006);
    let mut violations = 0;
    for _ in 0..200 {
        let f = sampling::step_function(&mut rng, 8, 4.0);
        for spec in &specs {
            let prof = f_profile(&f, spec, &rs).map_err(|e| e.to_string())?;
            violations += prof.increase_violations.len() + prof.ratio_violations.len();
        }
    }
    let detail = format!("{violations} violations over 200 x 5 x 50");
    if violations == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rw_sup<L: Layout + ?Sized>(u: &L, spec: &NormSpec, grid: Grid1D, ss: &[f64]) -> Result<f64, String> {
    let field = maximal_field(u, spec, &grid, &CandidateStrategy::AllPairs).map_err(|e| e.to_string())?;
    Ok(riesz_wiener_profile(u, spec, &field, ss).map_err(|e| e.to_string())?.sup)
}

fn c7() -> Outcome {
    let start = Instant::now();
    let u = StepFunction::indicator(0.0, 1.0).map_err(|e| e.to_string())?;
    let ss = geomspace(0.05, 4.5, 40);
    let mut notes = Vec::new();
    let mut ok = true;
    for spec in [
        NormSpec::Lebesgue { p: 1.0 },
        NormSpec::Lorentz { p: 2.0, q: 1.0 },
        NormSpec::Lorentz { p: 2.0, q: 2.0 },
    ] {
        let a = rw_sup(&u, &spec, Grid1D::new(-2.0, 3.0, 256).unwrap(), &ss)?;
        let b = rw_sup(&u, &spec, Grid1D::new(-2.0, 3.0, 512).unwrap(), &ss)?;
        let gap = (a - b).abs() / a.max(b);
        ok &= gap <= 0.2;
        notes.push(format!("{} {a:.4}/{b:.4}", spec.label()));
    }
    let spec = NormSpec::Lorentz { p: 1.0, q: 2.0 };
    let ss = geomspace(1e-3, 5.0, 60);
    let mut sups = Vec::new();
    for n in [8, 16, 32] {
        let w = lorentz_h_witness(1.0, 2.0, 1.5, n).map_err(|e| e.to_string())?;
        let layout = transplant(&w, 0.0).map_err(|e| e.to_string())?;
        sups.push(rw_sup(&layout, &spec, Grid1D::new(-1.0, 5.0, 512).unwrap(), &ss)?);
    }
    ok &= increasing(&sups);
    notes.push(format!("L^{{1,2}} witness sups {sups:.4?}"));
    within(start.elapsed(), 60.0)?;
    if ok {
        Ok(notes.join("; "))
    } else {
        Err(notes.join("; "))
    }
}

fn c8() -> Outcome {
    let phi = ConcavePhi::Power { alpha: 0.5 };
    let u = marcinkiewicz_extremal(&phi, 1e-4, 1e2, 64).map_err(|e| e.to_string())?;
    let mut nodes = vec![1e-4];
    nodes.extend_from_slice(&u.breakpoints()[1..]);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for &s in &nodes {
        let v = u.maximal_average(s).map_err(|e| e.to_string())? * phi.eval(s);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let mut ts = geomspace(1e-3, 1e2, 51);
    ts.reverse();
    let marc = lac_probe(&u, &NormSpec::MarcPhi { phi }, &ts).map_err(|e| e.to_string())?;
    let marc_min = marc.values.iter().copied().fold(f64::INFINITY, f64::min);
    let l22 = lac_probe(&u, &NormSpec::Lorentz { p: 2.0, q: 2.0 }, &ts).map_err(|e| e.to_string())?;
    let decay = l22.values[0] / l22.values[l22.values.len() - 1];
    let detail = format!(
        "u**phi in [{lo:.4}, {hi:.4}]; M_phi probe min {marc_min:.4}; L^{{2,2}} probe {:.4} -> {:.4}, decay {decay:.3} (need >= 10)",
        l22.values[0],
        l22.values[l22.values.len() - 1]
    );
    if lo >= 0.95 && hi <= 2.05 && marc_min >= 0.95 && decay >= 10.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Frozen after checking that the modular at level 0.9 grows without bound
/// under refinement of the probe.
const C9_FLOOR: f64 = 0.9;

fn c9() -> Outcome {
    let youngs = [
        YoungFunction::Power { p: 1.5 },
        YoungFunction::Power { p: 2.0 },
        YoungFunction::PowerLog { p: 1.0, a: 1.0 },
        YoungFunction::PowerLog { p: 2.0, a: 1.0 },
    ];
    let mut rng = sampling::rng(9009);
    let (mut tried, mut failed) = (0, 0);
    for young in youngs {
        for _ in 0..200 {
            let w = random_orlicz_attempt(&mut rng, &young, 6).map_err(|e| e.to_string())?;
            if w.is_empty() {
                continue;
            }
            tried += 1;
            if !orlicz_h_chain(&w, &young).map_err(|e| e.to_string())?.holds {
                failed += 1;
            }
        }
    }
    let young = YoungFunction::ExpMinusOne;
    let mut modulars = Vec::new();
    for s_min in [1e-10, 1e-20, 1e-30] {
        let g = exp_probe(s_min, 64).map_err(|e| e.to_string())?;
        modulars.push(g.pieces().map(|p| p.length() * young.eval(p.value / 0.9)).sum::<f64>());
    }
    let g = exp_probe(1e-30, 64).map_err(|e| e.to_string())?;
    let ts: Vec<f64> = (0..=20).map(|i| 10f64.powi(-i)).collect();
    let lac = lac_probe(&g, &NormSpec::Orlicz { young }, &ts).map_err(|e| e.to_string())?;
    let floor = lac.values.iter().copied().fold(f64::INFINITY, f64::min);
    let detail = format!(
        "(a) {tried} witnesses, {failed} chain failures; (b) modular at 0.9 {modulars:.3?}, lac min {floor:.4} (floor {C9_FLOOR})"
    );
    if failed == 0 && tried > 0 && increasing(&modulars) && floor >= C9_FLOOR {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c10() -> Outcome {
    let tmp = std::env::temp_dir().join(format!("rinorm-acceptance-{}", std::process::id()));
    let mut checked = Vec::new();
    for preset in PRESETS {
        let mut bytes = Vec::new();
        for run in 0..2 {
            let report = run_target(preset, None, Overrides { seed: Some(10), n: None }).map_err(|e| e.to_string())?;
            let dir = tmp.join(format!("{preset}-{run}"));
            emit_report(&report, &dir).map_err(|e| e.to_string())?;
            bytes.push(std::fs::read(dir.join("report.json")).map_err(|e| e.to_string())?);
        }
        if bytes[0] != bytes[1] {
            return Err(format!("{preset} reports differ"));
        }
        checked.push(preset);
    }
    let _ = std::fs::remove_dir_all(&tmp);
    Ok(format!("byte-identical reports for {}", checked.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Lorentz witness exactness", c1),
        ("level-set blow-up", c2),
        ("concavity suites", c3),
        ("partition divergence", c4),
        ("oracle equivalence", c5),
        ("F-profile monotonicity", c6),
        ("Riesz-Wiener stability and divergence", c7),
        ("Marcinkiewicz extremal sandwich", c8),
        ("Orlicz dichotomy", c9),
        ("determinism", c10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
