//! Python bindings: step functions, norm specs, witnesses, the maximal
//! operator and the CLI presets.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use rinorm_core::{maximal, norms, witness, Interval, NormSpec, StepFunction, YoungFunction};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn to_py<'py>(py: Python<'py>, x: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    json_to_py(py, &serde_json::to_value(x).map_err(err)?)
}

/// Accepts a JSON string or any object `json.dumps` can encode.
fn from_py<T: serde::de::DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = match obj.extract::<String>() {
        Ok(s) => s,
        Err(_) => obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?,
    };
    serde_json::from_str(&text).map_err(err)
}

/// Nonnegative step function on `[0, inf)` with breakpoints `t1 < ... < tm`
/// and value `values[i]` on `[t_{i-1}, t_i)`.
#[pyclass(name = "StepFunction", frozen, skip_from_py_object, module = "rinorm")]
#[derive(Clone)]
pub struct PyStepFunction {
    inner: StepFunction,
}

#[pymethods]
impl PyStepFunction {
    #[new]
    fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: StepFunction::new(breakpoints, values).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_lengths(pieces: Vec<(f64, f64)>) -> PyResult<Self> {
        Ok(Self {
            inner: StepFunction::from_lengths(&pieces).map_err(err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (a, b, height = 1.0))]
    fn indicator(a: f64, b: f64, height: f64) -> PyResult<Self> {
        Ok(Self {
            inner: StepFunction::scaled_indicator(a, b, height).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: serde_json::from_str(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    #[getter]
    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    fn __call__(&self, x: f64) -> f64 {
        self.inner.eval(x)
    }

    fn integral(&self) -> f64 {
        self.inner.integral()
    }

    fn sup(&self) -> f64 {
        self.inner.sup()
    }

    fn support_measure(&self) -> f64 {
        self.inner.support_measure()
    }

    fn rearrangement(&self) -> Self {
        Self {
            inner: self.inner.rearrangement(),
        }
    }

    fn distribution(&self) -> Self {
        Self {
            inner: self.inner.distribution(),
        }
    }

    fn right_inverse(&self) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.right_inverse(true).map_err(err)?,
        })
    }

    /// `u**(s)`, the average of the rearrangement over `(0, s)`.
    fn maximal_average(&self, s: f64) -> PyResult<f64> {
        self.inner.maximal_average(s).map_err(err)
    }

    fn dilate(&self, delta: f64) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.dilate(delta).map_err(err)?,
        })
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> Self {
        Self {
            inner: self.inner.superpose(&other.inner),
        }
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "StepFunction(breakpoints={:?}, values={:?})",
            self.inner.breakpoints(),
            self.inner.values()
        )
    }
}

/// A norm family with parameters, e.g. `NormSpec.lorentz(2, 1)` or
/// `NormSpec({"family": "orlicz", "young": {"kind": "power", "p": 2}})`.
#[pyclass(name = "NormSpec", frozen, skip_from_py_object, module = "rinorm")]
#[derive(Clone)]
pub struct PyNormSpec {
    inner: NormSpec,
}

#[pymethods]
impl PyNormSpec {
    #[new]
    fn new(spec: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self { inner: from_py(spec)? })
    }

    #[staticmethod]
    fn lebesgue(p: f64) -> PyResult<Self> {
        Ok(Self {
            inner: NormSpec::lebesgue(p).map_err(err)?,
        })
    }

    #[staticmethod]
    fn lorentz(p: f64, q: f64) -> PyResult<Self> {
        Ok(Self {
            inner: NormSpec::lorentz(p, q).map_err(err)?,
        })
    }

    #[getter]
    fn label(&self) -> String {
        self.inner.label()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("NormSpec({})", self.inner.label())
    }
}

/// A triple `(f, intervals, weights)` probing condition (H).
#[pyclass(name = "HWitness", frozen, skip_from_py_object, module = "rinorm")]
#[derive(Clone)]
pub struct PyHWitness {
    inner: witness::HWitness,
}

#[pymethods]
impl PyHWitness {
    #[staticmethod]
    fn lorentz(p: f64, q: f64, c: f64, n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: witness::lorentz_h_witness(p, q, c, n).map_err(err)?,
        })
    }

    #[getter]
    fn f(&self) -> PyStepFunction {
        PyStepFunction {
            inner: self.inner.f.clone(),
        }
    }

    #[getter]
    fn intervals(&self) -> Vec<(f64, f64)> {
        self.inner.intervals.iter().map(|i| (i.left(), i.right())).collect()
    }

    #[getter]
    fn weights(&self) -> Vec<f64> {
        self.inner.weights.clone()
    }

    fn piece_norm(&self, k: usize, spec: PyRef<'_, PyNormSpec>) -> PyResult<f64> {
        if k >= self.inner.len() {
            return Err(err(format!("piece {k} out of range")));
        }
        self.inner.piece_norm(k, &spec.inner).map_err(err)
    }

    /// Verification report as a dict.
    #[pyo3(signature = (spec, sum_bound = 2.0, norm_budget = None))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        spec: PyRef<'_, PyNormSpec>,
        sum_bound: f64,
        norm_budget: Option<f64>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let cfg = witness::HVerifyConfig { sum_bound, norm_budget };
        to_py(py, &witness::verify_h_witness(&self.inner, &spec.inner, &cfg).map_err(err)?)
    }

    /// Measure of the union of transplanted balls whose averaged norm exceeds `t`.
    #[pyo3(signature = (spec, t = 1.0))]
    fn level_set_measure(&self, spec: PyRef<'_, PyNormSpec>, t: f64) -> PyResult<f64> {
        let layout = witness::transplant(&self.inner, 0.0).map_err(err)?;
        maximal::superlevel_union_measure(&layout, &spec.inner, &layout.balls, t).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pyfunction]
fn norm(f: PyRef<'_, PyStepFunction>, spec: PyRef<'_, PyNormSpec>) -> PyResult<f64> {
    norms::rep_norm(&f.inner, &spec.inner).map_err(err)
}

/// `‖u‖⊘` over `(a, b)` with respect to normalized Lebesgue measure.
#[pyfunction]
fn averaged_norm(f: PyRef<'_, PyStepFunction>, a: f64, b: f64, spec: PyRef<'_, PyNormSpec>) -> PyResult<f64> {
    let g = Interval::new(a, b).map_err(err)?;
    norms::averaged_norm(&f.inner, &g, &spec.inner).map_err(err)
}

#[pyfunction]
fn fundamental_function(spec: PyRef<'_, PyNormSpec>, s: f64) -> PyResult<f64> {
    norms::fundamental_function(&spec.inner, s).map_err(err)
}

/// Amemiya norm for a Young function given as JSON or dict.
#[pyfunction]
fn amemiya_norm(f: PyRef<'_, PyStepFunction>, young: &Bound<'_, PyAny>) -> PyResult<f64> {
    let young: YoungFunction = from_py(young)?;
    norms::amemiya_norm(&f.inner, &young).map_err(err)
}

/// `‖f⁻¹‖` for a non-increasing `f`.
#[pyfunction]
fn gx_value(f: PyRef<'_, PyStepFunction>, spec: PyRef<'_, PyNormSpec>) -> PyResult<f64> {
    rinorm_core::gx::gx_value(&f.inner, &spec.inner).map_err(err)
}

#[pyfunction]
fn harmonic(n: usize) -> f64 {
    witness::harmonic(n)
}

/// `[(x, M u(x))]` on `n` grid nodes of `[a, b]`, all-pairs candidates.
#[pyfunction]
fn maximal_field(
    f: PyRef<'_, PyStepFunction>,
    spec: PyRef<'_, PyNormSpec>,
    a: f64,
    b: f64,
    n: usize,
) -> PyResult<Vec<(f64, f64)>> {
    let grid = maximal::Grid1D::new(a, b, n).map_err(err)?;
    let field =
        maximal::maximal_field(&f.inner, &spec.inner, &grid, &maximal::CandidateStrategy::AllPairs).map_err(err)?;
    Ok(field.rows())
}

/// Runs a CLI preset and returns its report as a dict, plus `"verdict"`.
#[pyfunction]
#[pyo3(signature = (name, params = None, seed = None, n = None))]
fn run_preset<'py>(
    py: Python<'py>,
    name: &str,
    params: Option<&Bound<'py, PyAny>>,
    seed: Option<u64>,
    n: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let params: serde_json::Map<String, Value> = match params {
        Some(p) => from_py(p)?,
        None => Default::default(),
    };
    let report = rinorm_cli::run_preset(name, params, rinorm_cli::Overrides { seed, n }).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
mod rinorm {
    #[pymodule_export]
    use super::{
        amemiya_norm, averaged_norm, fundamental_function, gx_value, harmonic, maximal_field, norm, run_preset,
        PyHWitness, PyNormSpec, PyStepFunction,
    };
}
