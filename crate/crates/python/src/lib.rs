//! Python bindings: a `Poly` class over the integral group ring and thin
//! wrappers returning report dictionaries.

use std::collections::BTreeMap;

use algdyn::cli::{
    cmd_analyze, cmd_examples, cmd_goe, cmd_homoclinic, cmd_invert, parse_poly, parse_polys,
    parse_rational, RunReport, Settings,
};
use algdyn::harmonic::invert_l1;
use algdyn::structure::{EndomorphismSpec, FixedPointSpec};
use algdyn::{ExponentVector, GroupRingElement};
use num_bigint::BigInt;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Poly", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Poly {
    inner: GroupRingElement,
}

#[pymethods]
impl Poly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Poly {
            inner: parse_poly(text).map_err(value_err)?,
        })
    }

    /// Builds a polynomial from `{exponent tuple: coefficient}`.
    #[staticmethod]
    fn from_terms(rank: usize, terms: BTreeMap<Vec<i64>, BigInt>) -> PyResult<Self> {
        let inner = GroupRingElement::from_terms(
            rank,
            terms.into_iter().map(|(e, c)| (ExponentVector::new(e), c)),
        )
        .map_err(value_err)?;
        Ok(Poly { inner })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// `{exponent tuple: coefficient}`.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (e, c) in self.inner.terms() {
            d.set_item(PyTuple::new(py, e.coords())?, c.clone())?;
        }
        Ok(d)
    }

    fn l1(&self) -> BigInt {
        self.inner.l1_exact()
    }

    fn involute(&self) -> Poly {
        Poly {
            inner: self.inner.involute(),
        }
    }

    fn __mul__(&self, other: &Poly) -> PyResult<Poly> {
        let inner = self.inner.convolve(&other.inner).map_err(value_err)?;
        Ok(Poly { inner })
    }

    fn __add__(&self, other: &Poly) -> PyResult<Poly> {
        let inner = self.inner.try_add(&other.inner).map_err(value_err)?;
        Ok(Poly { inner })
    }

    fn __sub__(&self, other: &Poly) -> PyResult<Poly> {
        let inner = self.inner.try_sub(&other.inner).map_err(value_err)?;
        Ok(Poly { inner })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.inner)
    }
}

fn report_dict<'py>(py: Python<'py>, r: &RunReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("command", &r.command)?;
    d.set_item("outcome", if r.outcome.exit_code() == 0 { "definite" } else { "undecided" })?;
    for (k, v) in &r.entries {
        d.set_item(k, v)?;
    }
    Ok(d)
}

fn settings(tol: f64, radius: Option<i64>) -> Settings {
    Settings {
        tol,
        radius,
        ..Settings::default()
    }
}

#[pyfunction]
fn parse(text: &str) -> PyResult<Poly> {
    Poly::new(text)
}

#[pyfunction]
#[pyo3(signature = (f, tol = 1e-9))]
fn analyze<'py>(py: Python<'py>, f: &str, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let f = parse_poly(f).map_err(value_err)?;
    let r = cmd_analyze(&f, &settings(tol, None)).map_err(value_err)?;
    report_dict(py, &r)
}

/// Certified inverse; raises `ArithmeticError` if no certificate was found.
#[pyfunction]
#[pyo3(signature = (f, tol = 1e-9))]
fn invert<'py>(py: Python<'py>, f: &str, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let f = parse_poly(f).map_err(value_err)?;
    if f.is_zero() {
        return Err(value_err("0 is not invertible"));
    }
    // the report carries the audit, the direct call carries the coefficients
    let r = cmd_invert(&f, &settings(tol, None)).map_err(value_err)?;
    let d = report_dict(py, &r)?;
    let c = invert_l1(&f, tol).map_err(|e| PyArithmeticError::new_err(e.to_string()))?;
    let coeffs = PyDict::new(py);
    for (e, x) in c.w.terms() {
        coeffs.set_item(PyTuple::new(py, e.coords())?, x)?;
    }
    d.set_item("coefficients", coeffs)?;
    d.set_item("residual_l1_value", c.residual_l1)?;
    d.set_item("tail_bound_value", c.tail_bound())?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (f, r, t = "0", tol = 1e-9))]
fn decide_goe<'py>(py: Python<'py>, f: &str, r: &str, t: &str, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let v = parse_polys(&[f, r]).map_err(value_err)?;
    let (p, q) = parse_rational(t).map_err(value_err)?;
    let endo = EndomorphismSpec {
        r: v[1].clone(),
        t: FixedPointSpec::constant(p, q),
    };
    let rep = cmd_goe(&v[0], &endo, &settings(tol, None)).map_err(value_err)?;
    report_dict(py, &rep)
}

/// The fundamental homoclinic point; `values` is row-major over `[lo, hi]`.
#[pyfunction]
#[pyo3(signature = (f, radius = None, tol = 1e-9))]
fn homoclinic<'py>(
    py: Python<'py>,
    f: &str,
    radius: Option<i64>,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let f = parse_poly(f).map_err(value_err)?;
    let (r, h) = cmd_homoclinic(&f, &settings(tol, radius)).map_err(value_err)?;
    let d = report_dict(py, &r)?;
    d.set_item("lo", h.window.bounds().lo().to_vec())?;
    d.set_item("hi", h.window.bounds().hi().to_vec())?;
    d.set_item("values", h.window.values().to_vec())?;
    d.set_item("tail_l1_value", h.tail_l1)?;
    Ok(d)
}

#[pyfunction]
fn examples(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let r = cmd_examples(&Settings::default()).map_err(value_err)?;
    report_dict(py, &r)
}

#[pymodule]
#[pyo3(name = "algdyn")]
fn algdyn_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(invert, m)?)?;
    m.add_function(wrap_pyfunction!(decide_goe, m)?)?;
    m.add_function(wrap_pyfunction!(homoclinic, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    Ok(())
}
