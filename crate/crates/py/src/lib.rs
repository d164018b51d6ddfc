//! Python bindings: the module `biquotients`.
//!
//! Structured results cross the boundary as plain dicts and lists built from
//! the same serde representation the CLI prints as JSON.

use biq_core::catalog::{catalog as core_catalog, lookup as core_lookup};
use biq_core::cohomology;
use biq_core::curvature::{self, MetricConfig, OptimizerConfig};
use biq_core::freeness;
use biq_core::reps::{enumerate_sp1, enumerate_sp1xsp1, BiquotientSpec, TorusImage};
use biq_core::Error;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde::Serialize;
use serde_json::Value;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownSpec(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn value_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    match v {
        Value::Null => Ok(py.None()),
        Value::Bool(b) => b.into_py_any(py),
        Value::Number(n) => match (n.as_i64(), n.as_f64()) {
            (Some(i), _) => i.into_py_any(py),
            (None, Some(f)) => f.into_py_any(py),
            _ => n.to_string().into_py_any(py),
        },
        Value::String(s) => s.into_py_any(py),
        Value::Array(a) => {
            let items = a
                .iter()
                .map(|x| value_to_py(py, x))
                .collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_py_any(py)
        }
        Value::Object(m) => {
            let d = PyDict::new(py);
            for (k, x) in m {
                d.set_item(k, value_to_py(py, x)?)?;
            }
            d.into_py_any(py)
        }
    }
}

fn to_py<T: Serialize>(py: Python<'_>, x: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    value_to_py(py, &v)
}

/// Torus data of a biquotient action: row `i` of each side is `(a, b)` for
/// the diagonal entry `z^a w^b`.
#[pyclass(name = "Spec", module = "biquotients", frozen, skip_from_py_object)]
struct PySpec {
    inner: BiquotientSpec,
}

#[pymethods]
impl PySpec {
    #[new]
    fn new(name: String, left: [[i64; 2]; 3], right: [[i64; 2]; 3]) -> Self {
        Self {
            inner: BiquotientSpec::new(name, TorusImage::new(left), TorusImage::new(right)),
        }
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn left(&self) -> [[i64; 2]; 3] {
        self.inner.left.rows
    }

    #[getter]
    fn right(&self) -> [[i64; 2]; 3] {
        self.inner.right.rows
    }

    #[getter]
    fn left_type(&self) -> String {
        self.inner.z_type.to_string()
    }

    #[getter]
    fn right_type(&self) -> String {
        self.inner.w_type.to_string()
    }

    fn is_homogeneous(&self) -> bool {
        self.inner.is_homogeneous()
    }

    /// Canonical representative of the equivalence class.
    fn canonical(&self) -> Self {
        Self {
            inner: self.inner.canonicalize(),
        }
    }

    fn equivalent(&self, other: &PySpec) -> bool {
        self.inner.equivalent(&other.inner)
    }

    /// Exact freeness verdict with witnesses as rational strings.
    fn certify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &freeness::certify(&self.inner).map_err(py_err)?)
    }

    /// dx3, dx7, A_f, |H^8|, p1 and pi2.
    fn invariants(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &cohomology::report(&self.inner).map_err(py_err)?)
    }

    fn __repr__(&self) -> String {
        format!("Spec({})", self.inner)
    }

    fn __eq__(&self, other: &PySpec) -> bool {
        self.inner == other.inner
    }
}

/// The nineteen catalog specs in table order.
#[pyfunction]
fn catalog() -> Vec<PySpec> {
    core_catalog()
        .iter()
        .map(|e| PySpec {
            inner: e.spec.clone(),
        })
        .collect()
}

#[pyfunction]
fn lookup(name: &str) -> PyResult<PySpec> {
    Ok(PySpec {
        inner: core_lookup(name).map_err(py_err)?.spec.clone(),
    })
}

/// Symplectic representations of `Sp(1)` (`"sp1"`) or `Sp(1)^2`
/// (`"sp1xsp1"`) of quaternionic dimension `hdim`, as display strings.
#[pyfunction]
#[pyo3(signature = (group, hdim = 3))]
fn enumerate(group: &str, hdim: usize) -> PyResult<Vec<String>> {
    let reps = match group {
        "sp1" => enumerate_sp1(hdim),
        "sp1xsp1" => enumerate_sp1xsp1(hdim),
        _ => return Err(PyValueError::new_err(format!("unknown group `{group}`"))),
    };
    Ok(reps.iter().map(|r| r.to_string()).collect())
}

#[pyfunction]
fn classify(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &freeness::classify_all().map_err(py_err)?)
}

#[pyfunction]
fn sp1_pairs(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &freeness::certify_sp1_pairs().map_err(py_err)?)
}

/// Multi-start minimum of the zero-plane defect at `p(theta)`.
#[pyfunction]
#[pyo3(signature = (name, theta, restarts = 64, seed = 42))]
fn min_defect(
    py: Python<'_>,
    name: &str,
    theta: f64,
    restarts: usize,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let spec = core_lookup(name).map_err(py_err)?.spec.clone();
    let opt = OptimizerConfig {
        restarts,
        seed,
        ..OptimizerConfig::default()
    };
    let result = py
        .detach(|| curvature::min_defect(&spec, theta, &opt, &MetricConfig::default()))
        .map_err(py_err)?;
    to_py(py, &result)
}

#[pymodule]
fn biquotients(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", biq_core::VERSION)?;
    m.add_class::<PySpec>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(lookup, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(sp1_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(min_defect, m)?)?;
    Ok(())
}
