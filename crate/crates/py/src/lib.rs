//! Python bindings: evaluation, zeros, zero sums, property checks and the
//! verification suite.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use dini::monotonicity::{
    abs_monotone_report, bound_check, corput_check, log_concavity_check, logderiv_bound_check,
    nu_monotone_check, trig_case_check, ConcavityTarget, MonotoneTarget,
};
use dini::suite::{self, SuiteConfig};
use dini::{EvalPolicy, GridSpec, Order, ZeroKind};

fn to_py(e: dini::Error) -> PyErr {
    match e {
        dini::Error::Domain(msg) => PyValueError::new_err(msg),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn order(nu: f64) -> PyResult<Order> {
    Order::new(nu).map_err(to_py)
}

fn kind(name: &str) -> PyResult<ZeroKind> {
    name.parse().map_err(to_py)
}

#[pyfunction]
fn bessel_j(nu: f64, x: f64) -> PyResult<f64> {
    dini::bessel_j(order(nu)?, x, &EvalPolicy::default()).map_err(to_py)
}

#[pyfunction]
fn bessel_j_prime(nu: f64, x: f64) -> PyResult<f64> {
    dini::bessel_j_prime(order(nu)?, x, &EvalPolicy::default()).map_err(to_py)
}

/// d_ν(x) = (1 − ν) J_ν(x) + x J_ν′(x).
#[pyfunction]
#[pyo3(name = "dini")]
fn dini_value(nu: f64, x: f64) -> PyResult<f64> {
    dini::dini(order(nu)?, x, &EvalPolicy::default()).map_err(to_py)
}

#[pyfunction]
fn dini_prime(nu: f64, x: f64) -> PyResult<f64> {
    dini::dini_prime(order(nu)?, x, &EvalPolicy::default()).map_err(to_py)
}

/// Returns (g_ν(x), g_ν′(x)).
#[pyfunction]
fn g_pair(nu: f64, x: f64) -> PyResult<(f64, f64)> {
    let g = dini::g_pair(order(nu)?, x, &EvalPolicy::default()).map_err(to_py)?;
    Ok((g.g, g.g_prime))
}

/// The n-th positive zero (1-based) of d_ν.
#[pyfunction]
fn dini_zero(nu: f64, n: usize) -> PyResult<f64> {
    dini::dini_zero(order(nu)?, n).map_err(to_py)
}

/// The n-th positive zero (1-based) of J_ν.
#[pyfunction]
fn bessel_zero(nu: f64, n: usize) -> PyResult<f64> {
    dini::bessel_zero(order(nu)?, n).map_err(to_py)
}

#[pyfunction]
fn eta2_exact(nu: f64) -> PyResult<f64> {
    Ok(dini::eta2_exact(order(nu)?))
}

/// Returns (value, tail_bound); tail_bound is None when no bound applies.
#[pyfunction]
fn weierstrass_product(nu: f64, x: f64, n_factors: usize) -> PyResult<(f64, Option<f64>)> {
    let p = dini::weierstrass_product(order(nu)?, x, n_factors).map_err(to_py)?;
    Ok((p.value, p.tail_bound))
}

#[pyfunction]
fn logderiv_series(nu: f64, x: f64, n_terms: usize) -> PyResult<f64> {
    dini::logderiv_series(order(nu)?, x, n_terms).map_err(to_py)
}

/// Returns (value, coefficients, remainder_bound).
#[pyfunction]
fn logderiv_power_series(nu: f64, x: f64, orders: u32) -> PyResult<(f64, Vec<f64>, f64)> {
    let s = dini::logderiv_power_series(order(nu)?, x, orders).map_err(to_py)?;
    Ok((s.value, s.coefficients, s.remainder_bound))
}

/// Rows (x, d_1(x), envelope(x)) of the figure data.
#[pyfunction]
#[pyo3(signature = (fig = 1, x_max = 5.0, points = 500))]
fn figure_data(fig: u32, x_max: f64, points: usize) -> PyResult<Vec<(f64, f64, f64)>> {
    let rows = dini::figure::figure_data(fig, x_max, points).map_err(to_py)?;
    Ok(rows.iter().map(|r| (r.x, r.d1, r.envelope)).collect())
}

#[pyclass(name = "ZeroTable", frozen)]
struct PyZeroTable(dini::ZeroTable);

#[pymethods]
impl PyZeroTable {
    #[getter]
    fn nu(&self) -> f64 {
        self.0.order().nu()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.0.kind() {
            ZeroKind::Bessel => "bessel",
            ZeroKind::Dini => "dini",
        }
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.values().to_vec()
    }

    #[getter]
    fn bracket_width(&self) -> f64 {
        self.0.bracket_width()
    }

    /// 1-based access: `zero(1)` is the first positive zero.
    fn zero(&self, n: usize) -> PyResult<f64> {
        if n == 0 || n > self.0.count() {
            return Err(PyValueError::new_err(format!(
                "n must lie in 1..={}, got {n}",
                self.0.count()
            )));
        }
        Ok(self.0.zero(n))
    }

    fn __len__(&self) -> usize {
        self.0.count()
    }

    fn __repr__(&self) -> String {
        format!("ZeroTable(nu={}, kind='{}', count={})", self.nu(), self.kind(), self.0.count())
    }
}

#[pyfunction]
#[pyo3(signature = (nu, count, kind = "dini"))]
fn zero_table(nu: f64, count: usize, kind: &str) -> PyResult<PyZeroTable> {
    let t = dini::zero_table(order(nu)?, self::kind(kind)?, count).map_err(to_py)?;
    Ok(PyZeroTable(t))
}

#[pyclass(name = "RayleighEnclosure", frozen)]
struct PyRayleighEnclosure(dini::RayleighEnclosure);

#[pymethods]
impl PyRayleighEnclosure {
    #[getter]
    fn nu(&self) -> f64 {
        self.0.order.nu()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.0.m
    }

    #[getter]
    fn lower(&self) -> f64 {
        self.0.lower
    }

    #[getter]
    fn upper(&self) -> f64 {
        self.0.upper
    }

    #[getter]
    fn n_used(&self) -> usize {
        self.0.n_used
    }

    fn width(&self) -> f64 {
        self.0.width()
    }

    fn midpoint(&self) -> f64 {
        self.0.midpoint()
    }

    fn __contains__(&self, v: f64) -> bool {
        self.0.contains(v)
    }

    fn __repr__(&self) -> String {
        format!(
            "RayleighEnclosure(nu={}, m={}, lower={:e}, upper={:e})",
            self.nu(),
            self.0.m,
            self.0.lower,
            self.0.upper
        )
    }
}

/// Encloses η_2m = Σ α_n^{−2m} in an interval of width at most `width`.
#[pyfunction]
fn rayleigh_enclosure(nu: f64, m: u32, width: f64) -> PyResult<PyRayleighEnclosure> {
    let e = dini::rayleigh_enclosure(order(nu)?, m, width).map_err(to_py)?;
    Ok(PyRayleighEnclosure(e))
}

#[pyclass(name = "PropertyReport", frozen)]
struct PyPropertyReport(dini::PropertyReport);

#[pymethods]
impl PyPropertyReport {
    #[getter]
    fn name(&self) -> &str {
        &self.0.name
    }

    /// "PASS", "FAIL" or "PASS_WITH_NOTES".
    #[getter]
    fn verdict(&self) -> String {
        verdict_name(self.0.verdict)
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.passed()
    }

    #[getter]
    fn min_margin(&self) -> Option<f64> {
        self.0.min_margin
    }

    #[getter]
    fn params(&self) -> BTreeMap<String, f64> {
        self.0.params.clone()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.0.notes.clone()
    }

    /// Violations as (label, point, lhs, rhs).
    #[getter]
    fn violations(&self) -> Vec<(String, f64, f64, f64)> {
        self.0
            .violations
            .iter()
            .map(|v| (v.label.clone(), v.point, v.lhs, v.rhs))
            .collect()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        dini::PropertyReport::from_json(s)
            .map(PyPropertyReport)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("PropertyReport(name='{}', verdict='{}')", self.0.name, self.verdict())
    }
}

fn verdict_name(v: dini::Verdict) -> String {
    match v {
        dini::Verdict::Pass => "PASS",
        dini::Verdict::Fail => "FAIL",
        dini::Verdict::PassWithNotes => "PASS_WITH_NOTES",
    }
    .to_string()
}

fn report(r: dini::Result<dini::PropertyReport>) -> PyResult<PyPropertyReport> {
    r.map(PyPropertyReport).map_err(to_py)
}

fn grid(min: f64, max: f64, points: usize) -> PyResult<GridSpec> {
    if !(min.is_finite() && max.is_finite() && min <= max) || points < 2 {
        return Err(PyValueError::new_err(format!(
            "grid needs finite min <= max and points >= 2, got [{min}, {max}] with {points} points"
        )));
    }
    Ok(GridSpec::new("python grid", min, max, points))
}

/// η_2 closed form inside its enclosure and η_2, …, η_{2 m_max} positive.
#[pyfunction]
#[pyo3(signature = (nu, m_max = 6))]
fn eta_check(nu: f64, m_max: u32) -> PyResult<PyPropertyReport> {
    report(suite::eta_check(order(nu)?, m_max))
}

/// Absolute monotonicity of `target` ("f", "g_ratio" or "q") on [min, max].
#[pyfunction]
#[pyo3(signature = (target, mu, nu, min, max, points = 20, m_max = 6))]
fn abs_monotone(
    target: &str,
    mu: f64,
    nu: f64,
    min: f64,
    max: f64,
    points: usize,
    m_max: u32,
) -> PyResult<PyPropertyReport> {
    let t: MonotoneTarget = target.parse().map_err(to_py)?;
    report(abs_monotone_report(t, order(mu)?, order(nu)?, &grid(min, max, points)?, m_max))
}

/// Exponential upper bounds for d_ν and J_ν on [min, max] ⊂ (0, α_1).
#[pyfunction]
#[pyo3(signature = (nu, min, max, points = 20))]
fn exponential_bound(nu: f64, min: f64, max: f64, points: usize) -> PyResult<PyPropertyReport> {
    report(bound_check(order(nu)?, &grid(min, max, points)?))
}

/// x d_ν′/d_ν < ν on [min, max] ⊂ (0, α_1).
#[pyfunction]
#[pyo3(signature = (nu, min, max, points = 20))]
fn logderiv_bound(nu: f64, min: f64, max: f64, points: usize) -> PyResult<PyPropertyReport> {
    report(logderiv_bound_check(order(nu)?, &grid(min, max, points)?))
}

/// Log-concavity of `target` ("dini" or "g_prime") on a positivity component.
#[pyfunction]
#[pyo3(signature = (target, nu, component = 0, points = 20))]
fn log_concavity(target: &str, nu: f64, component: usize, points: usize) -> PyResult<PyPropertyReport> {
    let t: ConcavityTarget = target.parse().map_err(to_py)?;
    report(log_concavity_check(t, order(nu)?, component, points))
}

/// The van der Corput inequality for g_ν′ at a, b in one positivity component.
#[pyfunction]
fn corput(nu: f64, a: f64, b: f64) -> PyResult<PyPropertyReport> {
    report(corput_check(order(nu)?, a, b))
}

/// The ν = −1/2 instance of the van der Corput inequality.
#[pyfunction]
fn trig_case(a: f64, b: f64) -> PyResult<PyPropertyReport> {
    report(trig_case_check(a, b))
}

/// Growth of d_μ/d_ν in x and the two-sided bound for μ ≥ ν on [min, max].
#[pyfunction]
#[pyo3(signature = (nu, mu, min, max, points = 20))]
fn nu_monotone(nu: f64, mu: f64, min: f64, max: f64, points: usize) -> PyResult<PyPropertyReport> {
    report(nu_monotone_check(order(nu)?, order(mu)?, &grid(min, max, points)?))
}

/// Runs every check and returns the reports keyed by identifier.
#[pyfunction]
#[pyo3(signature = (nu_grid = None, mu_offsets = None, grid_points = None, pairs = None, seed = None))]
fn report_suite(
    nu_grid: Option<Vec<f64>>,
    mu_offsets: Option<Vec<f64>>,
    grid_points: Option<usize>,
    pairs: Option<usize>,
    seed: Option<u64>,
) -> PyResult<Vec<(String, PyPropertyReport)>> {
    let mut cfg = SuiteConfig::default();
    if let Some(v) = nu_grid {
        cfg.nu_grid = v;
    }
    if let Some(v) = mu_offsets {
        cfg.mu_offsets = v;
    }
    if let Some(p) = grid_points {
        cfg.grid_points = p;
    }
    if let Some(p) = pairs {
        cfg.corput_pairs = p;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    let suite = suite::report_suite(&cfg).map_err(to_py)?;
    Ok(suite
        .entries
        .into_iter()
        .map(|(k, r)| (k, PyPropertyReport(r)))
        .collect())
}

#[pymodule]
fn dini_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyZeroTable>()?;
    m.add_class::<PyRayleighEnclosure>()?;
    m.add_class::<PyPropertyReport>()?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j_prime, m)?)?;
    m.add_function(wrap_pyfunction!(dini_value, m)?)?;
    m.add_function(wrap_pyfunction!(dini_prime, m)?)?;
    m.add_function(wrap_pyfunction!(g_pair, m)?)?;
    m.add_function(wrap_pyfunction!(dini_zero, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_zero, m)?)?;
    m.add_function(wrap_pyfunction!(zero_table, m)?)?;
    m.add_function(wrap_pyfunction!(eta2_exact, m)?)?;
    m.add_function(wrap_pyfunction!(rayleigh_enclosure, m)?)?;
    m.add_function(wrap_pyfunction!(weierstrass_product, m)?)?;
    m.add_function(wrap_pyfunction!(logderiv_series, m)?)?;
    m.add_function(wrap_pyfunction!(logderiv_power_series, m)?)?;
    m.add_function(wrap_pyfunction!(figure_data, m)?)?;
    m.add_function(wrap_pyfunction!(eta_check, m)?)?;
    m.add_function(wrap_pyfunction!(abs_monotone, m)?)?;
    m.add_function(wrap_pyfunction!(exponential_bound, m)?)?;
    m.add_function(wrap_pyfunction!(logderiv_bound, m)?)?;
    m.add_function(wrap_pyfunction!(log_concavity, m)?)?;
    m.add_function(wrap_pyfunction!(corput, m)?)?;
    m.add_function(wrap_pyfunction!(trig_case, m)?)?;
    m.add_function(wrap_pyfunction!(nu_monotone, m)?)?;
    m.add_function(wrap_pyfunction!(report_suite, m)?)?;
    Ok(())
}
