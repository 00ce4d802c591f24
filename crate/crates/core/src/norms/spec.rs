use serde::{Deserialize, Serialize};

use super::{ConcavePhi, YoungFunction};
use crate::error::{Error, Result};

/// A concrete rearrangement-invariant norm family with its parameters.
///
/// JSON uses a `family` tag, e.g. `{"family":"lorentz","p":2,"q":1}`. Infinite
/// exponents are written as the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", try_from = "NormSpecRepr")]
pub enum NormSpec {
    Lebesgue {
        #[serde(with = "exponent")]
        p: f64,
    },
    Lorentz {
        #[serde(with = "exponent")]
        p: f64,
        #[serde(with = "exponent")]
        q: f64,
    },
    Orlicz { young: YoungFunction },
    LambdaPhi { phi: ConcavePhi },
    MarcPhi { phi: ConcavePhi },
}

#[derive(Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
enum NormSpecRepr {
    Lebesgue {
        #[serde(with = "exponent")]
        p: f64,
    },
    Lorentz {
        #[serde(with = "exponent")]
        p: f64,
        #[serde(with = "exponent")]
        q: f64,
    },
    Orlicz { young: YoungFunction },
    LambdaPhi { phi: ConcavePhi },
    MarcPhi { phi: ConcavePhi },
}

impl TryFrom<NormSpecRepr> for NormSpec {
    type Error = Error;
    fn try_from(r: NormSpecRepr) -> Result<Self> {
        let spec = match r {
            NormSpecRepr::Lebesgue { p } => NormSpec::Lebesgue { p },
            NormSpecRepr::Lorentz { p, q } => NormSpec::Lorentz { p, q },
            NormSpecRepr::Orlicz { young } => NormSpec::Orlicz { young },
            NormSpecRepr::LambdaPhi { phi } => NormSpec::LambdaPhi { phi },
            NormSpecRepr::MarcPhi { phi } => NormSpec::MarcPhi { phi },
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// `f64` exponents with `"inf"` for infinity.
pub(crate) mod exponent {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(v),
            Raw::Str(s) if matches!(s.as_str(), "inf" | "infinity" | "Infinity") => Ok(f64::INFINITY),
            Raw::Str(s) => Err(de::Error::custom(format!("bad exponent {s:?}"))),
        }
    }
}

impl NormSpec {
    pub fn lebesgue(p: f64) -> Result<Self> {
        let s = NormSpec::Lebesgue { p };
        s.validate()?;
        Ok(s)
    }

    pub fn lorentz(p: f64, q: f64) -> Result<Self> {
        let s = NormSpec::Lorentz { p, q };
        s.validate()?;
        Ok(s)
    }

    pub fn orlicz(young: YoungFunction) -> Result<Self> {
        let s = NormSpec::Orlicz { young };
        s.validate()?;
        Ok(s)
    }

    pub fn lambda(phi: ConcavePhi) -> Result<Self> {
        let s = NormSpec::LambdaPhi { phi };
        s.validate()?;
        Ok(s)
    }

    pub fn marcinkiewicz(phi: ConcavePhi) -> Result<Self> {
        let s = NormSpec::MarcPhi { phi };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            NormSpec::Lebesgue { p } => {
                if p >= 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidSpec(format!("Lebesgue exponent must lie in [1, inf], got {p}")))
                }
            }
            NormSpec::Lorentz { p, q } => {
                // p = 1 < q < ∞ is the quasi-norm used by the counterexamples
                let ok = (p > 1.0 && p.is_finite() && q >= 1.0)
                    || (p == 1.0 && q >= 1.0 && q.is_finite())
                    || (p.is_infinite() && q.is_infinite());
                if ok {
                    Ok(())
                } else {
                    Err(Error::InvalidSpec(format!("inadmissible Lorentz exponents (p, q) = ({p}, {q})")))
                }
            }
            NormSpec::Orlicz { young } => young.validate(),
            NormSpec::LambdaPhi { phi } | NormSpec::MarcPhi { phi } => phi.validate(),
        }
    }

    /// Short human-readable label, e.g. `L^{2,1}`.
    pub fn label(&self) -> String {
        fn e(x: f64) -> String {
            if x.is_infinite() {
                "inf".into()
            } else {
                format!("{x}")
            }
        }
        match *self {
            NormSpec::Lebesgue { p } => format!("L^{}", e(p)),
            NormSpec::Lorentz { p, q } => format!("L^{{{},{}}}", e(p), e(q)),
            NormSpec::Orlicz { young } => format!("L^A[{}]", young.name()),
            NormSpec::LambdaPhi { phi } => format!("Lambda_phi[{phi:?}]"),
            NormSpec::MarcPhi { phi } => format!("M_phi[{phi:?}]"),
        }
    }
}
