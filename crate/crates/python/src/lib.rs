//! Python bindings. Words are passed as strings over an alphabet given as a
//! comma-separated list (default `a,b,c`); rationals come back as
//! `fractions.Fraction` and counts as Python ints.

use circparikh::circular::{avg_count, circular_parikh_matrix, direct_count};
use circparikh::enumerate::{partition_by_matrix, search_negative_minor};
use circparikh::rewriting::{find_applications, rewrite_closure, Rule, DEFAULT_MAX_NODES};
use circparikh::suites::{run_suite, Limits, Suite};
use circparikh::words::{count_subword, parikh_matrix};
use circparikh::{Alphabet, Rational, UnitriangularMatrix};
use num_bigint::BigUint;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: circparikh::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn alphabet(list: &str) -> PyResult<Alphabet> {
    Alphabet::parse(list).map_err(err)
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.numer().clone(), q.denom().clone()))
}

/// An exact upper unitriangular matrix.
#[pyclass(name = "Matrix", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyMatrix(pub UnitriangularMatrix);

#[pymethods]
impl PyMatrix {
    #[staticmethod]
    fn identity(dim: usize) -> Self {
        PyMatrix(UnitriangularMatrix::identity(dim))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        UnitriangularMatrix::from_json(text).map(PyMatrix).map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn entry<'py>(&self, py: Python<'py>, i: usize, j: usize) -> PyResult<Bound<'py, PyAny>> {
        if i >= self.0.dim() || j >= self.0.dim() {
            return Err(PyIndexError::new_err(format!("({i},{j}) outside a {0}x{0} matrix", self.0.dim())));
        }
        fraction(py, self.0.get(i, j))
    }

    fn rows<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.0.rows().iter().map(|r| r.iter().map(|q| fraction(py, q)).collect()).collect()
    }

    fn key(&self) -> String {
        self.0.key()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn inverse(&self) -> Self {
        PyMatrix(self.0.inverse())
    }

    fn alternate(&self) -> Self {
        PyMatrix(self.0.alternate())
    }

    fn power(&self, p: u64) -> Self {
        PyMatrix(self.0.power(p))
    }

    fn __matmul__(&self, other: &PyMatrix) -> PyResult<Self> {
        self.0.multiply(&other.0).map(PyMatrix).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Matrix({:?})", self.0)
    }
}

/// `|w|_v` for linear words.
#[pyfunction]
#[pyo3(signature = (word, subword, symbols = "a,b,c"))]
fn count_linear(word: &str, subword: &str, symbols: &str) -> PyResult<BigUint> {
    let a = alphabet(symbols)?;
    Ok(count_subword(&a.parse_word(word).map_err(err)?, &a.parse_word(subword).map_err(err)?))
}

/// Sum of `|w|_u` over the conjugates `u` of `subword`.
#[pyfunction]
#[pyo3(signature = (word, subword, symbols = "a,b,c"))]
fn count_direct(word: &str, subword: &str, symbols: &str) -> PyResult<BigUint> {
    let a = alphabet(symbols)?;
    Ok(direct_count(&a.parse_circular(word).map_err(err)?, &a.parse_word(subword).map_err(err)?))
}

/// Mean of `|u|_v` over the conjugates `u` of `word`.
#[pyfunction]
#[pyo3(signature = (word, subword, symbols = "a,b,c"))]
fn count_average<'py>(py: Python<'py>, word: &str, subword: &str, symbols: &str) -> PyResult<Bound<'py, PyAny>> {
    let a = alphabet(symbols)?;
    let q = avg_count(&a.parse_circular(word).map_err(err)?, &a.parse_word(subword).map_err(err)?);
    fraction(py, &q)
}

#[pyfunction]
#[pyo3(signature = (word, symbols = "a,b,c", circular = false))]
fn matrix(word: &str, symbols: &str, circular: bool) -> PyResult<PyMatrix> {
    let a = alphabet(symbols)?;
    Ok(PyMatrix(if circular {
        circular_parikh_matrix(&a, &a.parse_circular(word).map_err(err)?)
    } else {
        parikh_matrix(&a, &a.parse_word(word).map_err(err)?)
    }))
}

/// Least rotation, bracketed.
#[pyfunction]
#[pyo3(signature = (word, symbols = "a,b,c"))]
fn canonical(word: &str, symbols: &str) -> PyResult<String> {
    let a = alphabet(symbols)?;
    Ok(a.render_circular(&a.parse_circular(word).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (first, second, symbols = "a,b,c"))]
fn m_equivalent(first: &str, second: &str, symbols: &str) -> PyResult<bool> {
    let a = alphabet(symbols)?;
    circparikh::circular::m_equivalent(
        &a,
        &a.parse_circular(first).map_err(err)?,
        &a.parse_circular(second).map_err(err)?,
    )
    .map_err(err)
}

/// CE1/CE2 sites of a ternary circular word, as dicts.
#[pyfunction]
fn rule_applications<'py>(py: Python<'py>, word: &str) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let a = Alphabet::latin(3);
    let cw = a.parse_circular(word).map_err(err)?;
    find_applications(&a, &cw, &[Rule::CE1, Rule::CE2])
        .map_err(err)?
        .into_iter()
        .map(|app| {
            let d = PyDict::new(py);
            d.set_item("rule", app.rule.to_string())?;
            d.set_item("rotation", app.rotation)?;
            d.set_item("x_len", app.x_len)?;
            d.set_item("y_len", app.y_len)?;
            d.set_item("alpha", app.alpha.map(|s| a.name(s).to_string()))?;
            d.set_item("condition", (app.condition_lhs, app.condition_rhs))?;
            d.set_item("valid", app.is_valid())?;
            d.set_item("result", a.render_circular(&app.result))?;
            Ok(d)
        })
        .collect()
}

/// Rewrite closure under CE1 and CE2, as DOT text.
#[pyfunction]
#[pyo3(signature = (word, max_nodes = DEFAULT_MAX_NODES))]
fn closure_dot(word: &str, max_nodes: usize) -> PyResult<String> {
    let a = Alphabet::latin(3);
    let cw = a.parse_circular(word).map_err(err)?;
    Ok(rewrite_closure(&a, &cw, &[Rule::CE1, Rule::CE2], max_nodes).map_err(err)?.to_dot(&a))
}

/// M-equivalence classes of one length, as the JSON report.
#[pyfunction]
#[pyo3(signature = (length, symbols = "a,b,c"))]
fn classes_json(length: usize, symbols: &str) -> PyResult<String> {
    Ok(partition_by_matrix(&alphabet(symbols)?, length).to_json())
}

/// Runs a verification suite; returns `(passed, instances, failures)`.
#[pyfunction]
#[pyo3(signature = (name, max_length = None))]
fn verify(py: Python<'_>, name: &str, max_length: Option<usize>) -> PyResult<(bool, u64, Vec<String>)> {
    let suite: Suite = name.parse().map_err(err)?;
    let r = py.detach(|| run_suite(suite, Limits { bound: max_length, ..Limits::default() }));
    Ok((r.passed(), r.instances, r.failures))
}

/// First negative minor found up to `max_length`, or None.
#[pyfunction]
#[pyo3(signature = (max_length, symbols = "a,b,c"))]
fn search_minor(py: Python<'_>, max_length: usize, symbols: &str) -> PyResult<Option<(String, String)>> {
    let a = alphabet(symbols)?;
    let r = py.detach(|| search_negative_minor(&a, max_length));
    Ok(r.witness.map(|w| (a.render_circular(&w.word), w.value.to_string())))
}

#[pymodule]
fn pycircparikh(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_function(wrap_pyfunction!(count_linear, m)?)?;
    m.add_function(wrap_pyfunction!(count_direct, m)?)?;
    m.add_function(wrap_pyfunction!(count_average, m)?)?;
    m.add_function(wrap_pyfunction!(matrix, m)?)?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(m_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(rule_applications, m)?)?;
    m.add_function(wrap_pyfunction!(closure_dot, m)?)?;
    m.add_function(wrap_pyfunction!(classes_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(search_minor, m)?)?;
    Ok(())
}
