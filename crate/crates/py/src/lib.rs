//! Python module `parrep`: the `build` and `verify` commands returning JSON text.

use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use parrep_cli::config::{parse_suites, RunConfig, DEFAULT_MAX_ORDER};
use parrep_cli::CliError;

fn to_py(e: CliError) -> PyErr {
    match e {
        CliError::Guard(_) | CliError::Parse(_) => PyValueError::new_err(e.to_string()),
        CliError::Io(_) => PyIOError::new_err(e.to_string()),
        CliError::Failure(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

fn config(group: &str, suites: &str, max_order: usize, extended: bool, module: Option<String>) -> Result<RunConfig, CliError> {
    Ok(RunConfig {
        suites: parse_suites(suites).map_err(CliError::Parse)?,
        max_order,
        extended,
        module: module.map(Into::into),
        ..RunConfig::new(group).map_err(CliError::Parse)?
    })
}

/// Dimension report for `group` as JSON.
pub fn build_json(group: &str, max_order: usize) -> Result<String, CliError> {
    Ok(parrep_cli::build(&config(group, "all", max_order, false, None)?)?.to_json())
}

/// Verification report as JSON; `timed = false` drops the wall-clock field.
pub fn verify_json(group: &str, suites: &str, max_order: usize, extended: bool, module: Option<String>, timed: bool) -> Result<String, CliError> {
    let rep = parrep_cli::verify(&config(group, suites, max_order, extended, module)?)?;
    Ok(if timed { rep.to_json() } else { rep.to_json_untimed() })
}

#[pyfunction]
#[pyo3(signature = (group, max_order = DEFAULT_MAX_ORDER))]
fn build(py: Python<'_>, group: &str, max_order: usize) -> PyResult<String> {
    py.detach(|| build_json(group, max_order)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (group, suites = "all", max_order = DEFAULT_MAX_ORDER, extended = false, module = None, timed = true))]
fn verify(py: Python<'_>, group: &str, suites: &str, max_order: usize, extended: bool, module: Option<String>, timed: bool) -> PyResult<String> {
    py.detach(|| verify_json(group, suites, max_order, extended, module, timed)).map_err(to_py)
}

#[pymodule]
fn parrep(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
