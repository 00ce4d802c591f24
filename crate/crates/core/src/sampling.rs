//! Seeded random step functions for the property suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::stepfn::StepFunction;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Arbitrary step function with up to `max_pieces` pieces of random length
/// (some zero-valued) and values in `[0, max_value)`.
pub fn step_function(rng: &mut impl Rng, max_pieces: usize, max_value: f64) -> StepFunction {
    let m = rng.gen_range(1..=max_pieces.max(1));
    let pieces: Vec<(f64, f64)> = (0..m)
        .map(|_| {
            let len = rng.gen_range(0.05..2.0);
            let v = if rng.gen_bool(0.15) { 0.0 } else { rng.gen_range(0.0..max_value) };
            (len, v)
        })
        .collect();
    StepFunction::from_lengths(&pieces).expect("generated pieces are valid")
}

/// Non-increasing step function with unbounded-ish heights.
pub fn nonincreasing(rng: &mut impl Rng, max_pieces: usize, max_value: f64) -> StepFunction {
    step_function(rng, max_pieces, max_value).rearrangement()
}

/// Element of the class of non-increasing `[0, 1]`-valued step functions:
/// sorted uniform values on a dyadic grid with `2^j` pieces, `j ∈ 1..=5`,
/// over a support of length `2^m`, `m ∈ -2..=2`.
pub fn class_c(rng: &mut impl Rng) -> StepFunction {
    let j = rng.gen_range(1..=5u32);
    let m = rng.gen_range(-2..=2i32);
    let pieces = 1usize << j;
    let len = 2f64.powi(m) / pieces as f64;
    let mut values: Vec<f64> = (0..pieces).map(|_| rng.gen::<f64>()).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    let pairs: Vec<(f64, f64)> = values.into_iter().map(|v| (len, v.clamp(0.0, 1.0))).collect();
    StepFunction::from_lengths(&pairs).expect("dyadic pieces are valid")
}

/// Step function supported in `(0, 1)` with up to `max_pieces` pieces.
pub fn supported_in_unit(rng: &mut impl Rng, max_pieces: usize, max_value: f64) -> StepFunction {
    let m = rng.gen_range(1..=max_pieces.max(1));
    let mut cuts: Vec<f64> = (0..m).map(|_| rng.gen::<f64>()).collect();
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    let values = (0..cuts.len()).map(|_| rng.gen_range(0.0..max_value)).collect();
    StepFunction::new(cuts, values).expect("sorted cuts are valid")
}

/// Random positive weights summing to one.
pub fn simplex_weights(rng: &mut impl Rng, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}
