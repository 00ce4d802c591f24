use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Concave, non-decreasing weights for the Lorentz endpoint and Marcinkiewicz norms.
///
/// JSON: `{"kind":"power","alpha":0.5}` or `{"kind":"affine","b":1,"m":0.5}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConcavePhi {
    /// `s^α`, `0 < α ≤ 1`.
    Power { alpha: f64 },
    /// `b + m·s` with `b, m ≥ 0`, not both zero.
    Affine { b: f64, m: f64 },
}

impl ConcavePhi {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ConcavePhi::Power { alpha } if !(alpha > 0.0 && alpha <= 1.0) => {
                Err(Error::InvalidSpec(format!("power phi needs 0 < alpha <= 1, got {alpha}")))
            }
            ConcavePhi::Affine { b, m }
                if !(b >= 0.0 && m >= 0.0 && b.is_finite() && m.is_finite() && b + m > 0.0) =>
            {
                Err(Error::InvalidSpec(format!("affine phi needs b, m >= 0 not both zero, got b={b}, m={m}")))
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        let s = s.max(0.0);
        match *self {
            ConcavePhi::Power { alpha } => s.powf(alpha),
            ConcavePhi::Affine { b, m } => b + m * s,
        }
    }

    /// `φ(0⁺)`.
    pub fn zero_plus(&self) -> f64 {
        match *self {
            ConcavePhi::Power { .. } => 0.0,
            ConcavePhi::Affine { b, .. } => b,
        }
    }
}
