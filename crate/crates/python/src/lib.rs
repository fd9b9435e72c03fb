//! Python bindings. Reports cross the boundary as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use supercohom::algebra::{catalog, catalog_names, load_algebra, model_filiform, model_shape, AlgebraSpec};
use supercohom::ce::ce_complex;
use supercohom::dp::{dp_complex, Truncation};
use supercohom::{oracle, report};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_python<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite-dimensional Lie superalgebra given by structure constants.
#[pyclass(name = "Algebra", module = "supercohom_py")]
struct PyAlgebra {
    id: String,
    spec: AlgebraSpec,
    model: Option<(usize, usize)>,
}

#[pymethods]
impl PyAlgebra {
    /// Catalog lookup: the eight named algebras and `L{n},{m}`.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        let spec = catalog(name).map_err(value_error)?;
        Ok(Self { id: name.to_string(), spec, model: model_shape(name) })
    }

    #[staticmethod]
    fn model(n: usize, m: usize) -> PyResult<Self> {
        let spec = model_filiform(n, m).map_err(value_error)?;
        Ok(Self { id: format!("L{n},{m}"), spec, model: Some((n, m)) })
    }

    /// Parses and validates a JSON algebra document.
    #[staticmethod]
    #[pyo3(signature = (text, name = "custom"))]
    fn from_json(text: &str, name: &str) -> PyResult<Self> {
        let spec = load_algebra(text).map_err(value_error)?;
        Ok(Self { id: name.to_string(), spec, model: None })
    }

    #[getter]
    fn name(&self) -> &str {
        &self.id
    }

    #[getter]
    fn even(&self) -> Vec<String> {
        self.spec.even_names().to_vec()
    }

    #[getter]
    fn odd(&self) -> Vec<String> {
        self.spec.odd_names().to_vec()
    }

    fn to_json(&self) -> String {
        self.spec.to_json()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &report::validate_report(&self.id, &self.spec))
    }

    /// Betti numbers for degrees `0..=kmax`; over F_p when `p` is given.
    #[pyo3(signature = (kmax, p = None, t = None))]
    fn betti(&self, kmax: usize, p: Option<u64>, t: Option<Vec<u32>>) -> PyResult<Vec<usize>> {
        match self.truncation(p, t)? {
            None => ce_complex(&self.spec).betti_numbers(kmax).map_err(value_error),
            Some(trunc) => {
                let c = dp_complex(&self.spec, &trunc).map_err(value_error)?;
                let kmax = c.top_degree().map_or(kmax, |top| kmax.min(top));
                c.betti_numbers(kmax).map_err(value_error)
            }
        }
    }

    /// Characteristic-zero report with oracle and reference comparisons.
    #[pyo3(signature = (kmax, oracle = false))]
    fn betti_report<'py>(&self, py: Python<'py>, kmax: usize, oracle: bool) -> PyResult<Bound<'py, PyAny>> {
        if oracle && self.model.is_none() {
            return Err(value_error(format!("{} is not a model algebra", self.id)));
        }
        let r = report::betti_report(&self.id, &self.spec, kmax, if oracle { self.model } else { None })
            .map_err(value_error)?;
        to_python(py, &r)
    }

    #[pyo3(signature = (p, t = None))]
    fn dph<'py>(&self, py: Python<'py>, p: u64, t: Option<Vec<u32>>) -> PyResult<Bound<'py, PyAny>> {
        let trunc = self.truncation(Some(p), t)?.expect("p is set");
        to_python(py, &report::dph_report(&self.id, &self.spec, &trunc).map_err(value_error)?)
    }

    #[pyo3(signature = (kmax, p = None, t = None))]
    fn products<'py>(&self, py: Python<'py>, kmax: usize, p: Option<u64>, t: Option<Vec<u32>>) -> PyResult<Bound<'py, PyAny>> {
        let r = match self.truncation(p, t)? {
            None => report::product_report(&self.id, &ce_complex(&self.spec), kmax),
            Some(trunc) => {
                let c = dp_complex(&self.spec, &trunc).map_err(value_error)?;
                report::product_report(&self.id, &c, kmax)
            }
        }
        .map_err(value_error)?;
        to_python(py, &r)
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, even={}, odd={})", self.id, self.spec.even_names().len(), self.spec.odd_names().len())
    }
}

impl PyAlgebra {
    fn truncation(&self, p: Option<u64>, t: Option<Vec<u32>>) -> PyResult<Option<Truncation>> {
        let n_odd = self.spec.odd_names().len();
        match (p, t) {
            (None, None) => Ok(None),
            (None, Some(_)) => Err(value_error("t requires p")),
            (Some(p), None) => Truncation::ones(p, n_odd).map(Some).map_err(value_error),
            (Some(p), Some(t)) => {
                if t.len() != n_odd {
                    return Err(value_error(format!("t needs {n_odd} entries")));
                }
                Truncation::new(p, t).map(Some).map_err(value_error)
            }
        }
    }
}

#[pyfunction]
fn catalog_list() -> Vec<&'static str> {
    catalog_names().collect()
}

#[pyfunction]
fn betti_formula(n: usize, m: usize, k: usize) -> u64 {
    oracle::betti_formula(n, m, k)
}

/// Aggregated oracle checks for `L_{n,m}` up to degree `kmax`.
#[pyfunction]
fn oracle_report<'py>(py: Python<'py>, n: usize, m: usize, kmax: usize) -> PyResult<Bound<'py, PyAny>> {
    to_python(py, &report::oracle_report(n, m, kmax).map_err(value_error)?)
}

#[pymodule]
fn supercohom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(catalog_list, m)?)?;
    m.add_function(wrap_pyfunction!(betti_formula, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_report, m)?)?;
    Ok(())
}
