use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rigidquad::bijection;
use rigidquad::json::MapObject;
use rigidquad::statistics;
use rigidquad::{ColorfulQuad, Kind, RigidQuad};

pub mod helpers;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_loads<'py>(py: Python<'py>, s: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (s,))
}

/// Rigid quadrangulation of the disk.
#[pyclass(name = "RigidQuad", module = "rigidquad_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyRigidQuad {
    inner: RigidQuad,
}

#[pymethods]
impl PyRigidQuad {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        match MapObject::parse(s).map_err(err)? {
            MapObject::Rigid(inner) => Ok(PyRigidQuad { inner }),
            _ => Err(err("expected a rigid map")),
        }
    }

    fn to_json(&self) -> String {
        MapObject::from(self.inner.clone()).to_string_pretty()
    }

    /// Number of convex corners minus one.
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn cells(&self) -> usize {
        self.inner.cells().len()
    }

    fn base_signature(&self) -> Vec<usize> {
        self.inner.base_signature()
    }

    fn mirror(&self) -> Self {
        PyRigidQuad { inner: self.inner.mirror() }
    }

    fn turning_numbers(&self) -> Vec<i64> {
        self.inner.turning_numbers().into_iter().map(|x| x.1).collect()
    }

    fn is_fighting_fish(&self) -> bool {
        statistics::is_fighting_fish(&self.inner)
    }

    fn rows_and_columns(&self) -> (usize, usize) {
        statistics::rows_and_columns(&self.inner)
    }

    /// Exploration trace of the expanded disk.
    fn trace(&self) -> PyResult<String> {
        Ok(rigidquad::explore_rigid(&bijection::expand(&self.inner)).map_err(err)?.to_string())
    }

    /// Dictionary quantities on both sides of the bijection, as a dict.
    fn dictionary<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let rep = statistics::dictionary_report(&self.inner).map_err(err)?;
        json_loads(py, &serde_json::to_string(&rep).map_err(err)?)
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.inner == o.inner
    }

    fn __repr__(&self) -> String {
        format!("RigidQuad(n={}, cells={})", self.inner.n(), self.inner.cells().len())
    }
}

/// Colorful quadrangulation of the sphere or the disk.
#[pyclass(name = "ColorfulQuad", module = "rigidquad_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyColorfulQuad {
    inner: ColorfulQuad,
}

#[pymethods]
impl PyColorfulQuad {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        match MapObject::parse(s).map_err(err)? {
            MapObject::Colorful(inner) => Ok(PyColorfulQuad { inner }),
            _ => Err(err("expected a colorful map")),
        }
    }

    fn to_json(&self) -> String {
        MapObject::from(self.inner.clone()).to_string_pretty()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind() {
            Kind::Sphere => "sphere",
            Kind::Disk => "disk",
        }
    }

    fn vertex_labels(&self) -> Vec<i64> {
        self.inner.vertex_labels()
    }

    fn boundary_walk(&self) -> Vec<i64> {
        self.inner.boundary_walk()
    }

    fn relabel(&self) -> PyResult<Self> {
        Ok(PyColorfulQuad { inner: self.inner.relabel().map_err(err)? })
    }

    fn __eq__(&self, o: &Self) -> bool {
        self.inner == o.inner
    }

    fn __repr__(&self) -> String {
        format!("ColorfulQuad(kind={}, n={})", self.kind(), self.inner.n())
    }
}

#[pyfunction]
fn rigid_counts(n_max: usize) -> Vec<BigInt> {
    rigidquad::series::rigid_counts(n_max)
}

#[pyfunction]
fn catalytic_counts(p_max: usize, j_max: usize) -> PyResult<Vec<Vec<BigUint>>> {
    let t = rigidquad::series::catalytic_counts(p_max, j_max).map_err(err)?;
    Ok((0..=p_max).map(|p| (0..=j_max).map(|j| t.get(p, j)).collect()).collect())
}

/// Nonzero terms of a named series as (exponents, numerator, denominator).
#[pyfunction]
#[pyo3(signature = (name, order, p = 2, q = 2))]
fn series(name: &str, order: usize, p: usize, q: usize) -> PyResult<Vec<(Vec<usize>, BigInt, BigInt)>> {
    Ok(helpers::series_terms(&helpers::named_series(name, order, p, q).map_err(err)?))
}

#[pyfunction]
fn psi(r: &PyRigidQuad) -> PyResult<PyColorfulQuad> {
    Ok(PyColorfulQuad { inner: bijection::psi(&r.inner).map_err(err)? })
}

#[pyfunction]
fn psi_inverse(q: &PyColorfulQuad) -> PyResult<PyRigidQuad> {
    Ok(PyRigidQuad { inner: bijection::psi_inverse(&q.inner).map_err(err)? })
}

/// Refined bijection: the colorful disk and the base signature.
#[pyfunction]
fn psi_b(r: &PyRigidQuad) -> PyResult<(PyColorfulQuad, Vec<usize>)> {
    let u = bijection::psi_b(&r.inner).map_err(err)?;
    Ok((PyColorfulQuad { inner: u }, r.inner.base_signature()))
}

#[pyfunction]
fn psi_b_inverse(u: &PyColorfulQuad, signature: Vec<usize>) -> PyResult<PyRigidQuad> {
    Ok(PyRigidQuad { inner: bijection::psi_b_inverse(&u.inner, &signature).map_err(err)? })
}

#[pyfunction]
fn walk_of_signature(signature: Vec<usize>) -> Vec<i64> {
    rigidquad::walk_of_signature(&signature)
}

#[pyfunction]
#[pyo3(signature = (n, seed = 0))]
fn sample_rigid_rooted(n: usize, seed: u64) -> PyResult<PyRigidQuad> {
    Ok(PyRigidQuad { inner: rigidquad::sampler::sample_rigid_rooted(n, seed).map_err(err)? })
}

/// Uniform rigid quadrangulation with base p and t-weight j.
#[pyfunction]
#[pyo3(signature = (p, j, seed = 0))]
fn sample_rigid(p: usize, j: usize, seed: u64) -> PyResult<PyRigidQuad> {
    Ok(PyRigidQuad { inner: rigidquad::sampler::sample_rigid(p, j, seed).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (r, widths = "unit", seed = 0))]
fn render_svg(r: &PyRigidQuad, widths: &str, seed: u64) -> PyResult<String> {
    let w = helpers::parse_widths(widths).map_err(err)?;
    helpers::svg_for(&r.inner, w, seed).map_err(err)
}

#[pyfunction]
fn eval_r(t: f64) -> PyResult<f64> {
    rigidquad::series::eval_r_numeric(t).map_err(err)
}

#[pyfunction]
fn laplace_limit(mu: f64) -> f64 {
    rigidquad::series::laplace_limit(mu)
}

/// Acceptance suite results as a list of dicts.
#[pyfunction]
#[pyo3(signature = (quick = true, jobs = 1))]
fn verify<'py>(py: Python<'py>, quick: bool, jobs: usize) -> PyResult<Bound<'py, PyAny>> {
    let res = py.detach(|| rigidquad::verify::run(quick, jobs));
    json_loads(py, &serde_json::to_string(&res).map_err(err)?)
}

#[pymodule]
fn rigidquad_py(_py: Python, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRigidQuad>()?;
    m.add_class::<PyColorfulQuad>()?;
    m.add_function(wrap_pyfunction!(rigid_counts, m)?)?;
    m.add_function(wrap_pyfunction!(catalytic_counts, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(psi_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(psi_b, m)?)?;
    m.add_function(wrap_pyfunction!(psi_b_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(walk_of_signature, m)?)?;
    m.add_function(wrap_pyfunction!(sample_rigid_rooted, m)?)?;
    m.add_function(wrap_pyfunction!(sample_rigid, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    m.add_function(wrap_pyfunction!(eval_r, m)?)?;
    m.add_function(wrap_pyfunction!(laplace_limit, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
