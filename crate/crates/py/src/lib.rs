//! Python bindings. Numbers go in; structured results come back as the same
//! JSON documents the command-line tool writes, decoded into Python objects.

use std::time::Duration;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyOSError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use ring_grooming::bounds;
use ring_grooming::constructions::{construct_best, construct_named};
use ring_grooming::io::{parse_solution, BoundJson, ConstructionJson, OutcomeJson};
use ring_grooming::solver::{solve_exact, SolverOptions};
use ring_grooming::{GroomingError, HalfArcRule, RingInstance};

create_exception!(ring_grooming, InvalidSolutionError, PyException);
create_exception!(ring_grooming, DesignUnavailableError, PyException);

fn to_py_err(e: GroomingError) -> PyErr {
    match e {
        GroomingError::InvalidSolution(_) => InvalidSolutionError::new_err(e.to_string()),
        GroomingError::DesignNonexistent(_) | GroomingError::DesignUnknown(_) => {
            DesignUnavailableError::new_err(e.to_string())
        }
        GroomingError::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Serializes through JSON and decodes with the `json` module.
fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Largest number of arcs of an admissible block on `p` vertices.
#[pyfunction]
fn gamma(c: u32, p: usize) -> PyResult<u64> {
    bounds::gamma(c, p).map_err(to_py_err)
}

/// `rho(C)` as a reduced `(numerator, denominator)` pair.
#[pyfunction]
fn rho(c: u32) -> PyResult<(i128, i128)> {
    let r = bounds::rho(c).map_err(to_py_err)?;
    Ok((*r.numer(), *r.denom()))
}

/// Every applicable lower bound on the ADM count.
#[pyfunction]
fn lower_bounds<'py>(py: Python<'py>, c: u32, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let reports = bounds::all_bounds(c, n).map_err(to_py_err)?;
    to_py(py, &reports.iter().map(BoundJson::from).collect::<Vec<_>>())
}

/// The strongest lower bound.
#[pyfunction]
fn lower_bound<'py>(py: Python<'py>, c: u32, n: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &BoundJson::from(&bounds::lb_best(c, n).map_err(to_py_err)?))
}

/// A construction document; the best applicable one unless `name` is given.
#[pyfunction]
#[pyo3(signature = (c, n, name=None))]
fn construct<'py>(py: Python<'py>, c: u32, n: usize, name: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let r = py
        .detach(|| match name {
            Some(name) => construct_named(name, c, n),
            None => construct_best(c, n),
        })
        .map_err(to_py_err)?;
    to_py(py, &ConstructionJson::from(&r))
}

/// Exact search. `orientation` fixes the diameter rule for even `N`.
#[pyfunction]
#[pyo3(signature = (c, n, node_budget=None, time_budget=None, optimize_orientation=false, orientation=None))]
fn solve<'py>(
    py: Python<'py>,
    c: u32,
    n: usize,
    node_budget: Option<u64>,
    time_budget: Option<f64>,
    optimize_orientation: bool,
    orientation: Option<Vec<bool>>,
) -> PyResult<Bound<'py, PyAny>> {
    let rule = orientation.map_or(HalfArcRule::AllForward, HalfArcRule::Explicit);
    let inst = RingInstance::with_rule(n, c, rule).map_err(to_py_err)?;
    let mut options = SolverOptions { optimize_orientation, ..SolverOptions::default() };
    if let Some(b) = node_budget {
        options.node_budget = b;
    }
    if let Some(t) = time_budget {
        let t = Duration::try_from_secs_f64(t).map_err(|e| PyValueError::new_err(e.to_string()))?;
        options.time_budget = Some(t);
    }
    let outcome = py.detach(|| solve_exact(&inst, &options)).map_err(to_py_err)?;
    to_py(py, &OutcomeJson::from(&outcome))
}

/// Validates a solution document and returns its ADM count.
#[pyfunction]
fn validate(document: &str) -> PyResult<usize> {
    let sol = parse_solution(document).map_err(to_py_err)?;
    sol.validate().map_err(|e| to_py_err(e.into()))?;
    Ok(sol.adm())
}

#[pymodule]
#[pyo3(name = "ring_grooming")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add("InvalidSolutionError", m.py().get_type::<InvalidSolutionError>())?;
    m.add("DesignUnavailableError", m.py().get_type::<DesignUnavailableError>())?;
    Ok(())
}
