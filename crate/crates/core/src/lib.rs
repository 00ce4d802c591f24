//! Numerics for rearrangement-invariant function norms.
//!
//! Everything is built on [`StepFunction`], a nonnegative piecewise-constant
//! function on the half-line with finitely many pieces. On this class the
//! decreasing rearrangement, the distribution function and every norm in
//! [`NormSpec`] have exact (or bisection-exact) evaluations.
//!
//! Modules:
//!
//! - [`stepfn`]: rearrangement calculus on step functions.
//! - [`norms`]: Lebesgue, Lorentz, Orlicz (Luxemburg and Amemiya), Lorentz
//!   endpoint and Marcinkiewicz norms; averaged norms; fundamental functions.
//! - [`gx`]: the functional `f ↦ ‖f⁻¹‖` on non-increasing functions and its
//!   concavity and partition diagnostics.
//! - [`maximal`]: brute-force norm maximal operator on a 1-D grid, weak-type and
//!   Riesz-Wiener measurements.
//! - [`witness`]: explicit counterexamples and their verifiers.
//! - [`lebesgue`]: averaged-norm oscillation around points.
//! - [`sampling`]: seeded random generators used by the property suites.

#![forbid(unsafe_code)]

pub mod error;
pub mod gx;
pub mod lebesgue;
pub mod maximal;
pub mod norms;
pub mod sampling;
pub mod stepfn;
pub mod witness;

pub use error::{Error, Result};
pub use norms::{ConcavePhi, NormSpec, YoungFunction};
pub use stepfn::{Interval, StepFunction};

/// Absolute tolerance used for structural equality of step functions.
pub const STRUCTURAL_TOL: f64 = 1e-12;
