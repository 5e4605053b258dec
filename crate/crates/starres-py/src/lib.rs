use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use starres::hj;
use starres::intersection::{canonical_cycle, fundamental_cycle, matrix_from_graph};
use starres::reconalg::{self, quiver_combinatorial, quiver_from_intersection};
use starres::resolution;
use starres::sweep::{run_sweep, SweepConfig};

create_exception!(starres, StarresError, PyValueError);

fn err(e: starres::Error) -> PyErr {
    StarresError::new_err(format!("{}: {}", e.code(), e))
}

/// Serializes through JSON so results arrive as plain dicts and lists.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| StarresError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Parameters", module = "starres", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyParameters {
    inner: starres::Parameters,
}

#[pymethods]
impl PyParameters {
    /// `lam` holds points as "u:w" strings; missing points get the defaults.
    #[new]
    #[pyo3(signature = (p, lam=None))]
    fn new(p: Vec<i64>, lam: Option<Vec<String>>) -> PyResult<Self> {
        let mut points = Vec::new();
        for s in lam.unwrap_or_default() {
            points.push(starres::Point::parse(&s).map_err(err)?);
        }
        for i in points.len()..p.len() {
            points.push(starres::Point::default_for(i));
        }
        let inner = starres::Parameters::new(p, points).map_err(err)?;
        Ok(PyParameters { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(text).map_err(|e| StarresError::new_err(e.to_string()))?;
        Ok(PyParameters { inner })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("serializable")
    }

    #[getter]
    fn weights(&self) -> Vec<i64> {
        self.inner.weights().to_vec()
    }

    fn normal_form(&self, xi: Vec<i64>, c: i64) -> PyResult<PyLElement> {
        self.inner.normal_form(&xi, c).map(PyLElement::from).map_err(err)
    }

    fn x(&self, i: usize) -> PyResult<PyLElement> {
        if i >= self.inner.n() {
            return Err(StarresError::new_err(format!("index {i} out of range")));
        }
        Ok(self.inner.x(i).into())
    }

    fn c(&self) -> PyLElement {
        self.inner.c().into()
    }

    fn omega(&self) -> PyLElement {
        self.inner.omega().into()
    }

    fn s(&self) -> PyLElement {
        self.inner.s().into()
    }

    fn s_a(&self, k: i64) -> PyLElement {
        self.inner.s_a(k).into()
    }

    fn __repr__(&self) -> String {
        format!("Parameters({})", self.to_json())
    }
}

#[pyclass(name = "LElement", module = "starres", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyLElement {
    inner: starres::LElement,
}

impl From<starres::LElement> for PyLElement {
    fn from(inner: starres::LElement) -> Self {
        PyLElement { inner }
    }
}

#[pymethods]
impl PyLElement {
    #[getter]
    fn xi(&self) -> Vec<i64> {
        self.inner.xi().to_vec()
    }

    #[getter]
    fn c(&self) -> i64 {
        self.inner.c_coeff()
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.inner.try_add(&other.inner).map(Into::into).map_err(err)
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.inner.try_sub(&other.inner).map(Into::into).map_err(err)
    }

    fn __neg__(&self) -> Self {
        self.inner.neg().into()
    }

    fn scale(&self, k: i64) -> Self {
        self.inner.scale(k).into()
    }

    fn is_positive(&self) -> bool {
        self.inner.is_positive()
    }

    fn in_interval_0_c(&self) -> bool {
        self.inner.in_interval_0_c()
    }

    fn support(&self) -> Vec<usize> {
        self.inner.support()
    }

    fn __repr__(&self) -> String {
        format!("LElement{}", self.inner)
    }
}

#[pyfunction]
fn hj_expand(r: i64, a: i64) -> PyResult<Vec<i64>> {
    hj::hj_expand(r, a).map(|e| e.alphas).map_err(err)
}

#[pyfunction]
fn i_series(r: i64, a: i64) -> PyResult<Vec<i64>> {
    hj::i_series(r, a).map(|s| s.terms).map_err(err)
}

#[pyfunction]
fn i_set(r: i64, a: i64) -> PyResult<Vec<i64>> {
    hj::i_set(r, a).map(|s| s.into_iter().collect()).map_err(err)
}

#[pyfunction]
fn coprime_criterion(params: &PyParameters, x: &PyLElement) -> PyResult<bool> {
    starres::lgroup::coprime_criterion(&params.inner, &x.inner).map_err(err)
}

#[pyfunction]
fn reduce_parameters(params: &PyParameters, x: &PyLElement) -> PyResult<(PyParameters, PyLElement)> {
    let (p, y) = starres::lgroup::reduce_parameters(&params.inner, &x.inner).map_err(err)?;
    Ok((PyParameters { inner: p }, y.into()))
}

#[pyfunction]
fn graded_dim(y: &PyLElement) -> usize {
    starres::gradedring::graded_dim(&y.inner)
}

#[pyfunction]
fn dual_graph<'py>(py: Python<'py>, params: &PyParameters, x: &PyLElement) -> PyResult<Bound<'py, PyAny>> {
    let report = resolution::resolution_report(&params.inner, &x.inner).map_err(err)?;
    to_py(py, &report)
}

#[pyfunction]
fn dual_graph_dot(params: &PyParameters, x: &PyLElement) -> PyResult<String> {
    let report = resolution::resolution_report(&params.inner, &x.inner).map_err(err)?;
    Ok(resolution::to_dot(&report.graph, report.specials.as_deref()))
}

#[pyfunction]
fn specials<'py>(py: Python<'py>, params: &PyParameters, x: &PyLElement) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &resolution::specials(&params.inner, &x.inner).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (params, x, y, l_max=resolution::DEFAULT_L_MAX))]
fn speciality_oracle<'py>(
    py: Python<'py>,
    params: &PyParameters,
    x: &PyLElement,
    y: &PyLElement,
    l_max: i64,
) -> PyResult<Bound<'py, PyAny>> {
    let v = resolution::speciality_oracle(&params.inner, &x.inner, &y.inner, l_max).map_err(err)?;
    to_py(py, &v)
}

/// `(Z_f, Z_K)` on the dual graph, coefficients as strings.
#[pyfunction]
fn cycles(params: &PyParameters, x: &PyLElement) -> PyResult<(Vec<String>, Vec<String>)> {
    let g = resolution::dual_graph(&params.inner, &x.inner).map_err(err)?;
    let m = matrix_from_graph(&g);
    let zf = fundamental_cycle(&m).map_err(err)?;
    let zk = canonical_cycle(&m).map_err(err)?;
    let strings = |c: starres::intersection::Cycle| c.coeffs.iter().map(ToString::to_string).collect();
    Ok((strings(zf), strings(zk)))
}

#[pyfunction]
fn quiver<'py>(py: Python<'py>, params: &PyParameters, x: &PyLElement) -> PyResult<Bound<'py, PyAny>> {
    let q = if x.inner.support().len() >= 2 {
        quiver_combinatorial(&params.inner, &x.inner)
    } else {
        resolution::specials(&params.inner, &x.inner).and_then(|mods| {
            let g = resolution::dual_graph(&params.inner, &x.inner)?;
            quiver_from_intersection(&g, &mods)
        })
    }
    .map_err(err)?;
    to_py(py, &q)
}

#[pyfunction]
#[pyo3(signature = (params, max_degree=12))]
fn wahl_verify<'py>(py: Python<'py>, params: &PyParameters, max_degree: i64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &reconalg::wahl_verify(&params.inner, max_degree).map_err(err)?)
}

#[pyfunction]
fn domestic<'py>(py: Python<'py>, params: &PyParameters, m: i64) -> PyResult<Bound<'py, PyAny>> {
    let info = reconalg::domestic_classify(&params.inner, m).map_err(err)?;
    to_py(py, &info.summary())
}

#[pyfunction]
#[pyo3(signature = (seed=0, max_r=40, samples=20, l_max=resolution::DEFAULT_L_MAX))]
fn sweep<'py>(py: Python<'py>, seed: u64, max_r: i64, samples: usize, l_max: i64) -> PyResult<Bound<'py, PyAny>> {
    let config = SweepConfig { seed, max_r, samples, l_max };
    to_py(py, &run_sweep(&config).map_err(err)?)
}

#[pymodule]
#[pyo3(name = "starres")]
fn starres_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("StarresError", m.py().get_type::<StarresError>())?;
    m.add_class::<PyParameters>()?;
    m.add_class::<PyLElement>()?;
    m.add_function(wrap_pyfunction!(hj_expand, m)?)?;
    m.add_function(wrap_pyfunction!(i_series, m)?)?;
    m.add_function(wrap_pyfunction!(i_set, m)?)?;
    m.add_function(wrap_pyfunction!(coprime_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(graded_dim, m)?)?;
    m.add_function(wrap_pyfunction!(dual_graph, m)?)?;
    m.add_function(wrap_pyfunction!(dual_graph_dot, m)?)?;
    m.add_function(wrap_pyfunction!(specials, m)?)?;
    m.add_function(wrap_pyfunction!(speciality_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(cycles, m)?)?;
    m.add_function(wrap_pyfunction!(quiver, m)?)?;
    m.add_function(wrap_pyfunction!(wahl_verify, m)?)?;
    m.add_function(wrap_pyfunction!(domestic, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
