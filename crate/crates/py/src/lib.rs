//! Python bindings. Coordinates are 0-indexed on this side.

use codesparse::graphs;
use codesparse::sparsify::{self, Alpha, CensusOptions, SearchMode, SearchOptions};
use codesparse::Error;
use pyo3::exceptions::{PyLookupError, PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

fn err(e: Error) -> PyErr {
    match e {
        Error::DimensionTooLarge { .. } | Error::LengthTooLarge { .. } => {
            PyOverflowError::new_err(e.to_string())
        }
        Error::NotFound(_) => PyLookupError::new_err(e.to_string()),
        Error::TheoremViolation { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn alpha(s: &str) -> PyResult<Alpha> {
    s.parse().map_err(err)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_u64() {
            Some(u) => u.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn report<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &value)
}

#[pyclass(
    name = "BitVector",
    module = "codesparse",
    eq,
    frozen,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyBitVector(codesparse::BitVector);

#[pymethods]
impl PyBitVector {
    /// From a "0110" string.
    #[new]
    fn new(bits: &str) -> PyResult<Self> {
        Ok(Self(bits.parse().map_err(err)?))
    }

    #[staticmethod]
    fn from_indices(n: usize, indices: Vec<usize>) -> PyResult<Self> {
        if let Some(&i) = indices.iter().find(|&&i| i >= n) {
            return Err(PyValueError::new_err(format!(
                "index {i} out of range for length {n}"
            )));
        }
        Ok(Self(codesparse::BitVector::from_indices(n, indices)))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BitVector('{}')", self.0)
    }

    fn weight(&self) -> usize {
        self.0.weight()
    }

    fn indices(&self) -> Vec<usize> {
        self.0.to_indices()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self(self.0.add(&other.0).map_err(err)?))
    }

    /// Weight of `self` restricted to the support of `mask`.
    fn project_weight(&self, mask: &Self) -> PyResult<usize> {
        self.0.project_weight(&mask.0).map_err(err)
    }
}

#[pyclass(name = "LinearCode", module = "codesparse", frozen)]
struct PyLinearCode(codesparse::LinearCode);

#[pymethods]
impl PyLinearCode {
    /// Generator rows as "0110" strings, all of length `n`.
    #[new]
    #[pyo3(signature = (n, rows, max_k = 28))]
    fn new(n: usize, rows: Vec<String>, max_k: usize) -> PyResult<Self> {
        let rows = rows
            .iter()
            .map(|r| r.parse::<codesparse::BitVector>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let code = codesparse::LinearCode::from_rows(n, rows).map_err(err)?;
        Ok(Self(code.with_enumeration_cap(max_k)))
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self(codesparse::io::parse_code(text).map_err(err)?))
    }

    #[staticmethod]
    fn repetition(n: usize) -> Self {
        Self(codesparse::LinearCode::repetition(n))
    }

    #[staticmethod]
    fn full(n: usize) -> Self {
        Self(codesparse::LinearCode::full(n))
    }

    #[staticmethod]
    fn hamming() -> Self {
        Self(codesparse::LinearCode::hamming_7_4())
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.dimension()
    }

    fn basis(&self) -> Vec<PyBitVector> {
        self.0.basis().iter().cloned().map(PyBitVector).collect()
    }

    fn contains(&self, v: &PyBitVector) -> PyResult<bool> {
        self.0.contains(&v.0).map_err(err)
    }

    fn codewords(&self) -> PyResult<Vec<PyBitVector>> {
        Ok(self
            .0
            .codeword_list()
            .map_err(err)?
            .into_iter()
            .map(PyBitVector)
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("LinearCode(n={}, k={})", self.0.len(), self.0.dimension())
    }

    #[pyo3(signature = (s, alpha = "1/2"))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        s: &PyBitVector,
        alpha: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        report(
            py,
            &sparsify::verify(&self.0, &s.0, self::alpha(alpha)?).map_err(err)?,
        )
    }

    fn improve_once(&self, s: &PyBitVector) -> PyResult<Option<PyBitVector>> {
        Ok(sparsify::improve_once(&self.0, &s.0)
            .map_err(err)?
            .map(PyBitVector))
    }

    fn coset_maximize(&self, s: &PyBitVector) -> PyResult<PyBitVector> {
        Ok(PyBitVector(
            sparsify::coset_maximize(&self.0, &s.0).map_err(err)?,
        ))
    }

    #[pyo3(signature = (alpha = "1/2", threads = None, max_n = 28))]
    fn census<'py>(
        &self,
        py: Python<'py>,
        alpha: &str,
        threads: Option<usize>,
        max_n: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let opts = CensusOptions {
            max_n,
            threads,
            chunks: None,
        };
        let a = self::alpha(alpha)?;
        let r = py
            .detach(|| sparsify::count_sparsifiers(&self.0, a, &opts))
            .map_err(err)?;
        report(py, &r)
    }

    #[pyo3(signature = (alpha = "1/2", max_n = 28))]
    fn min_sparsifier(&self, alpha: &str, max_n: usize) -> PyResult<PyBitVector> {
        let (s, _) = sparsify::min_sparsifier(&self.0, self::alpha(alpha)?, max_n).map_err(err)?;
        Ok(PyBitVector(s))
    }

    #[pyo3(signature = (ell, heuristic = false, seed = 0))]
    fn iterate<'py>(
        &self,
        py: Python<'py>,
        ell: u32,
        heuristic: bool,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let opts = SearchOptions {
            mode: if heuristic {
                SearchMode::Heuristic
            } else {
                SearchMode::Exact
            },
            seed,
            ..SearchOptions::default()
        };
        report(
            py,
            &sparsify::iterated_sparsifier(&self.0, ell, &opts).map_err(err)?,
        )
    }

    #[pyo3(signature = (trials, alpha = "1/2", seed = 0, threads = None))]
    fn monte_carlo<'py>(
        &self,
        py: Python<'py>,
        trials: u64,
        alpha: &str,
        seed: u64,
        threads: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let a = self::alpha(alpha)?;
        let r = py
            .detach(|| sparsify::monte_carlo_density(&self.0, trials, a, seed, threads))
            .map_err(err)?;
        report(py, &r)
    }
}

#[pyclass(name = "Graph", module = "codesparse", frozen)]
struct PyGraph(graphs::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self(graphs::Graph::new(num_vertices, edges).map_err(err)?))
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Self(graphs::Graph::complete(n))
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.0.num_vertices()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.0.num_edges()
    }

    fn cut_space(&self) -> PyLinearCode {
        PyLinearCode(graphs::cut_space(&self.0))
    }

    #[pyo3(signature = (edges, alpha = "1/2"))]
    fn is_thin<'py>(
        &self,
        py: Python<'py>,
        edges: &PyBitVector,
        alpha: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        report(
            py,
            &graphs::is_thin(&self.0, &edges.0, self::alpha(alpha)?).map_err(err)?,
        )
    }

    #[pyo3(signature = (alpha = "1/2", threads = None))]
    fn count_thin<'py>(
        &self,
        py: Python<'py>,
        alpha: &str,
        threads: Option<usize>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let opts = CensusOptions {
            threads,
            ..CensusOptions::default()
        };
        report(
            py,
            &graphs::count_thin(&self.0, self::alpha(alpha)?, &opts).map_err(err)?,
        )
    }

    fn edge_connectivity(&self) -> PyResult<usize> {
        graphs::edge_connectivity(&self.0).map_err(err)
    }
}

/// Closed-form budgets for length `n` and dimension `k`.
#[pyfunction]
fn bounds<'py>(py: Python<'py>, n: usize, k: usize) -> PyResult<Bound<'py, PyAny>> {
    report(py, &sparsify::bounds_for(n, k).map_err(err)?)
}

#[pyfunction]
fn entropy(x: f64) -> PyResult<f64> {
    sparsify::entropy(x).map_err(err)
}

#[pymodule]
#[pyo3(name = "codesparse")]
fn codesparse_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBitVector>()?;
    m.add_class::<PyLinearCode>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    Ok(())
}
