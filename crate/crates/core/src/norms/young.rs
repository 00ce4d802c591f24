use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Young functions used by the Orlicz norms.
///
/// JSON: `{"kind":"power","p":2}`, `{"kind":"power_log","p":2,"a":1}`,
/// `{"kind":"exp_minus_one"}`, `{"kind":"ess_sup_indicator"}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum YoungFunction {
    /// `t^p`, `p ≥ 1`.
    Power { p: f64 },
    /// `t^p · ln(e + t)^a`, `p ≥ 1`, `a ≥ 0`.
    PowerLog { p: f64, a: f64 },
    /// `e^t - 1`.
    ExpMinusOne,
    /// `∞ · χ_{(1,∞)}`; its Luxemburg norm is the `L^∞` norm.
    EssSupIndicator,
}

impl YoungFunction {
    pub fn validate(&self) -> Result<()> {
        match *self {
            YoungFunction::Power { p } if !(p >= 1.0 && p.is_finite()) => {
                Err(Error::InvalidSpec(format!("power Young function needs p >= 1, got {p}")))
            }
            YoungFunction::PowerLog { p, a } if !(p >= 1.0 && p.is_finite() && a >= 0.0 && a.is_finite()) => {
                Err(Error::InvalidSpec(format!("power-log Young function needs p >= 1, a >= 0, got p={p}, a={a}")))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            YoungFunction::Power { .. } => "power",
            YoungFunction::PowerLog { .. } => "power_log",
            YoungFunction::ExpMinusOne => "exp_minus_one",
            YoungFunction::EssSupIndicator => "ess_sup_indicator",
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match *self {
            YoungFunction::Power { p } => t.powf(p),
            YoungFunction::PowerLog { p, a } => t.powf(p) * (std::f64::consts::E + t).ln().powf(a),
            YoungFunction::ExpMinusOne => t.exp_m1(),
            YoungFunction::EssSupIndicator => {
                if t > 1.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
        }
    }

    /// Left-continuous derivative, with `A'(0) = 0`.
    pub fn derivative(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match *self {
            YoungFunction::Power { p } => p * t.powf(p - 1.0),
            YoungFunction::PowerLog { p, a } => {
                let l = (std::f64::consts::E + t).ln();
                p * t.powf(p - 1.0) * l.powf(a)
                    + if a > 0.0 {
                        t.powf(p) * a * l.powf(a - 1.0) / (std::f64::consts::E + t)
                    } else {
                        0.0
                    }
            }
            YoungFunction::ExpMinusOne => t.exp(),
            YoungFunction::EssSupIndicator => {
                if t > 1.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
        }
    }

    /// Generalized inverse `y ↦ sup{t ≥ 0 : A(t) ≤ y}`.
    pub fn inverse(&self, y: f64) -> f64 {
        if y.is_infinite() && y > 0.0 {
            return match self {
                YoungFunction::EssSupIndicator => 1.0,
                _ => f64::INFINITY,
            };
        }
        let y = y.max(0.0);
        match *self {
            YoungFunction::Power { p } => y.powf(1.0 / p),
            YoungFunction::ExpMinusOne => y.ln_1p(),
            YoungFunction::EssSupIndicator => 1.0,
            YoungFunction::PowerLog { .. } => {
                if y == 0.0 {
                    return 0.0;
                }
                let mut hi = 1.0;
                while self.eval(hi) <= y {
                    hi *= 2.0;
                }
                let mut lo = 0.0;
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.eval(mid) <= y {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
        }
    }

    /// Whether `A(2t) ≤ C A(t)` for large `t`.
    pub fn delta2_near_infinity(&self) -> bool {
        matches!(self, YoungFunction::Power { .. } | YoungFunction::PowerLog { .. })
    }

    pub fn is_finite_valued(&self) -> bool {
        !matches!(self, YoungFunction::EssSupIndicator)
    }
}
