//! Python bindings for the inverse heat-equation toolkit: the dimensionless
//! evaluators, the inversion schemes, and the three physical inverse
//! problems.
//!
//! Build with `cargo build --release -p heatinv-py`, then rename/copy
//! `libheatinv_py.so` to `heatinv_py.so` somewhere on `sys.path` (see
//! `python/smoke_test.py`).

use heatinv::composite;
use heatinv::contour::{self, QuadratureSpec};
use heatinv::error::Error;
use heatinv::invert_large;
use heatinv::oracle::{self, RootFindSpec, SolverId};
use heatinv::physics::{self, DrainageScenario, InfiltrationScenario};
use heatinv::series::{self, SeriesTruncation};
use heatinv::specfn;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Tolerance(_) | Error::Truncation(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_scheme(name: &str) -> PyResult<SolverId> {
    name.parse().map_err(to_py)
}

fn quad() -> QuadratureSpec {
    QuadratureSpec::default()
}

/// Reconstruction report for one estimate.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct ErrorReport {
    #[pyo3(get)]
    c_target: f64,
    #[pyo3(get)]
    a_estimate: f64,
    #[pyo3(get)]
    c_reconstructed: f64,
    #[pyo3(get)]
    re_percent: f64,
}

#[pymethods]
impl ErrorReport {
    fn __repr__(&self) -> String {
        format!(
            "ErrorReport(c_target={}, a_estimate={}, c_reconstructed={}, re_percent={})",
            self.c_target, self.a_estimate, self.c_reconstructed, self.re_percent
        )
    }
}

impl From<composite::ErrorReport> for ErrorReport {
    fn from(r: composite::ErrorReport) -> Self {
        ErrorReport {
            c_target: r.c_target,
            a_estimate: r.a_estimate,
            c_reconstructed: r.c_reconstructed,
            re_percent: r.re_percent,
        }
    }
}

/// Complementary error function.
#[pyfunction]
fn erfc(x: f64) -> f64 {
    specfn::erfc(x)
}

/// Inverse complementary error function on (0, 2).
#[pyfunction]
fn erfc_inv(y: f64) -> PyResult<f64> {
    specfn::erfc_inv(y).map_err(to_py)
}

/// Principal Lambert W branch on x >= 0.
#[pyfunction]
fn lambert_w0(x: f64) -> PyResult<f64> {
    specfn::lambert_w0(x).map_err(to_py)
}

/// The dimensionless integral I(a) by hyperbola-contour quadrature (with
/// series deferral outside the contour window).
#[pyfunction]
fn eval_i(a: f64) -> PyResult<f64> {
    contour::eval_i(a, &quad()).map_err(to_py)
}

/// I(a) through the Fourier-type series.
#[pyfunction]
fn i_fourier(a: f64) -> PyResult<f64> {
    series::i_fourier(a, &SeriesTruncation::default()).map_err(to_py)
}

/// I(a) through the alternating erfc sum.
#[pyfunction]
fn i_erfc_sum(a: f64) -> PyResult<f64> {
    series::i_erfc_sum(a, &SeriesTruncation::default()).map_err(to_py)
}

/// Expansion coefficient b_n(c) by contour quadrature.
#[pyfunction]
fn eval_bn(n: u32, c: f64) -> PyResult<f64> {
    contour::eval_bn(n, c, &quad()).map_err(to_py)
}

/// Numerically exact inversion of I(a) = c.
#[pyfunction]
fn true_a(c: f64) -> PyResult<f64> {
    oracle::true_a(c, &RootFindSpec::default()).map_err(to_py)
}

/// Names accepted wherever a scheme is selected.
#[pyfunction]
fn scheme_names() -> Vec<String> {
    SolverId::ALL_NAMES.iter().map(|s| s.to_string()).collect()
}

/// Estimate a from c with the named scheme.
#[pyfunction]
#[pyo3(signature = (c, scheme = "perfect-match"))]
fn invert(c: f64, scheme: &str) -> PyResult<f64> {
    oracle::invert_with(parse_scheme(scheme)?, c, &quad()).map_err(to_py)
}

/// Reconstruction error of an estimate against the exact evaluator.
#[pyfunction]
fn relative_error(c_target: f64, a_estimate: f64) -> PyResult<ErrorReport> {
    composite::relative_error(c_target, a_estimate)
        .map(ErrorReport::from)
        .map_err(to_py)
}

/// Estimate a and report its reconstruction error in one call.
#[pyfunction]
#[pyo3(signature = (c, scheme = "perfect-match"))]
fn solve(c: f64, scheme: &str) -> PyResult<ErrorReport> {
    let a = oracle::invert_with(parse_scheme(scheme)?, c, &quad()).map_err(to_py)?;
    composite::relative_error(c, a)
        .map(ErrorReport::from)
        .map_err(to_py)
}

/// Sweep a scheme over a c grid; failed points come back as None.
#[pyfunction]
fn error_sweep(scheme: &str, c_grid: Vec<f64>) -> PyResult<Vec<Option<ErrorReport>>> {
    let rows = oracle::error_sweep(parse_scheme(scheme)?, &c_grid, &quad()).map_err(to_py)?;
    Ok(rows
        .into_iter()
        .map(|r| r.outcome.ok().map(ErrorReport::from))
        .collect())
}

/// Water-table height h(x, t) for a drainage scenario (m, days).
#[pyfunction]
fn eval_h(x: f64, t: f64, h0: f64, d: f64, diffusion: f64, half_spacing: f64) -> PyResult<f64> {
    let mut s = DrainageScenario::new(h0, d);
    s.diffusion_m2_day = Some(diffusion);
    s.half_spacing_m = Some(half_spacing);
    contour::eval_h(x, t, &s, &quad()).map_err(to_py)
}

/// Moisture profile theta(x, t) for an infiltration scenario (cm, hours).
#[pyfunction]
fn eval_theta(
    x: f64,
    t: f64,
    theta0: f64,
    theta1: f64,
    diffusivity: f64,
    length: f64,
) -> PyResult<f64> {
    let mut s = InfiltrationScenario::new(theta0, theta1, length);
    s.diffusivity_cm2_h = Some(diffusivity);
    contour::eval_theta(x, t, &s, &quad()).map_err(to_py)
}

/// IP1: field drain spacing 2L (m) from an observed drawdown.
#[pyfunction]
#[pyo3(signature = (h0, d, height, t, diffusion, scheme = "perfect-match"))]
fn drain_spacing(
    h0: f64,
    d: f64,
    height: f64,
    t: f64,
    diffusion: f64,
    scheme: &str,
) -> PyResult<f64> {
    let mut s = DrainageScenario::new(h0, d).with_observed(height);
    s.time_days = Some(t);
    s.diffusion_m2_day = Some(diffusion);
    physics::solve_ip1_spacing(&s, parse_scheme(scheme)?, &quad())
        .map(|l| 2.0 * l)
        .map_err(to_py)
}

/// IP2: drainage time (days) to reach an observed height, given spacing 2L.
#[pyfunction]
#[pyo3(signature = (h0, d, height, spacing, diffusion, scheme = "perfect-match"))]
fn drain_time(
    h0: f64,
    d: f64,
    height: f64,
    spacing: f64,
    diffusion: f64,
    scheme: &str,
) -> PyResult<f64> {
    let mut s = DrainageScenario::new(h0, d).with_observed(height);
    s.half_spacing_m = Some(spacing / 2.0);
    s.diffusion_m2_day = Some(diffusion);
    physics::solve_ip2_time(&s, parse_scheme(scheme)?, &quad()).map_err(to_py)
}

/// IP3: soil diffusivity D0 (cm^2/h) from one midpoint moisture reading.
#[pyfunction]
#[pyo3(signature = (theta0, theta1, theta, length, t, scheme = "perfect-match"))]
fn diffusivity(
    theta0: f64,
    theta1: f64,
    theta: f64,
    length: f64,
    t: f64,
    scheme: &str,
) -> PyResult<f64> {
    let mut s = InfiltrationScenario::new(theta0, theta1, length);
    s.measured = Some(theta);
    s.time_h = Some(t);
    physics::solve_ip3_diffusivity(&s, parse_scheme(scheme)?, &quad()).map_err(to_py)
}

/// Closed-form first-order drain spacing (the Glover-Dumm equation).
#[pyfunction]
fn glover_dumm_spacing(h0: f64, d: f64, height: f64, t: f64, diffusion: f64) -> PyResult<f64> {
    let mut s = DrainageScenario::new(h0, d).with_observed(height);
    s.time_days = Some(t);
    s.diffusion_m2_day = Some(diffusion);
    physics::glover_dumm_spacing(&s).map(|l| 2.0 * l).map_err(to_py)
}

/// Closed-form first-order drainage time.
#[pyfunction]
fn glover_dumm_time(h0: f64, d: f64, height: f64, spacing: f64, diffusion: f64) -> PyResult<f64> {
    let mut s = DrainageScenario::new(h0, d).with_observed(height);
    s.half_spacing_m = Some(spacing / 2.0);
    s.diffusion_m2_day = Some(diffusion);
    physics::glover_dumm_time(&s).map_err(to_py)
}

/// Closed-form first-order diffusivity from a midpoint moisture reading.
#[pyfunction]
fn glover_dumm_diffusivity(
    theta0: f64,
    theta1: f64,
    theta: f64,
    length: f64,
    t: f64,
) -> PyResult<f64> {
    let mut s = InfiltrationScenario::new(theta0, theta1, length);
    s.measured = Some(theta);
    s.time_h = Some(t);
    physics::glover_dumm_diffusivity(&s).map_err(to_py)
}

/// Reproducible moisture scenarios: D0 = 1.2(1+delta) with delta drawn from
/// a seeded SplitMix64 generator, theta measured by the forward evaluator.
#[pyfunction]
fn simulate_moisture(py: Python<'_>, seed: u64, n: usize, times: Vec<f64>) -> PyResult<Vec<Py<PyDict>>> {
    let scenarios = physics::simulate_moisture(seed, n, &times, &quad()).map_err(to_py)?;
    scenarios
        .iter()
        .map(|s| {
            let d = PyDict::new(py);
            d.set_item("time_h", s.time_h.unwrap())?;
            d.set_item("theta0", s.theta0)?;
            d.set_item("theta1", s.theta1)?;
            d.set_item("theta", s.measured.unwrap())?;
            d.set_item("length_cm", s.length_cm)?;
            d.set_item("d0_true", s.diffusivity_cm2_h.unwrap())?;
            Ok(d.unbind())
        })
        .collect()
}

/// Exact inversion coefficients of order n as ((num, den) tuples):
/// returns (g, f) with g_0 = 1 omitted.
#[pyfunction]
fn inversion_coefficients(n: u8) -> PyResult<(Vec<(i64, i64)>, Vec<(i64, i64)>)> {
    let coeffs = invert_large::gen_inversion_coeffs(n).map_err(to_py)?;
    let conv = |r: &heatinv::rational::Rational| (r.numer() as i64, r.denom() as i64);
    Ok((
        coeffs.g.iter().skip(1).map(conv).collect(),
        coeffs.f.iter().map(conv).collect(),
    ))
}

#[pymodule]
fn heatinv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<ErrorReport>()?;
    m.add_function(wrap_pyfunction!(erfc, m)?)?;
    m.add_function(wrap_pyfunction!(erfc_inv, m)?)?;
    m.add_function(wrap_pyfunction!(lambert_w0, m)?)?;
    m.add_function(wrap_pyfunction!(eval_i, m)?)?;
    m.add_function(wrap_pyfunction!(i_fourier, m)?)?;
    m.add_function(wrap_pyfunction!(i_erfc_sum, m)?)?;
    m.add_function(wrap_pyfunction!(eval_bn, m)?)?;
    m.add_function(wrap_pyfunction!(true_a, m)?)?;
    m.add_function(wrap_pyfunction!(scheme_names, m)?)?;
    m.add_function(wrap_pyfunction!(invert, m)?)?;
    m.add_function(wrap_pyfunction!(relative_error, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(error_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(eval_h, m)?)?;
    m.add_function(wrap_pyfunction!(eval_theta, m)?)?;
    m.add_function(wrap_pyfunction!(drain_spacing, m)?)?;
    m.add_function(wrap_pyfunction!(drain_time, m)?)?;
    m.add_function(wrap_pyfunction!(diffusivity, m)?)?;
    m.add_function(wrap_pyfunction!(glover_dumm_spacing, m)?)?;
    m.add_function(wrap_pyfunction!(glover_dumm_time, m)?)?;
    m.add_function(wrap_pyfunction!(glover_dumm_diffusivity, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_moisture, m)?)?;
    m.add_function(wrap_pyfunction!(inversion_coefficients, m)?)?;
    Ok(())
}
