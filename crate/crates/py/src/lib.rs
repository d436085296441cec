//! Python bindings: network presets, closed-form probabilities and Monte Carlo estimates.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use swipt_mpe::analytic::{self, CoverageThresholds, QuadratureOptions};
use swipt_mpe::cli::{default_thresholds, Scenario, ScenarioName};
use swipt_mpe::model::{AntennaPattern, NetworkParams, RectennaModel};
use swipt_mpe::montecarlo::{self, McSettings, ProbabilityEstimate};
use swipt_mpe::special_fn::ComplexValue;
use swipt_mpe::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Convergence { .. } | Error::ProbabilityExcursion { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Network and receiver parameters. Powers are in watts, angles in radians.
#[pyclass(name = "Network", get_all, set_all, skip_from_py_object)]
#[derive(Clone)]
struct PyNetwork {
    lambda: f64,
    p_los: f64,
    alpha: f64,
    mu: u32,
    d0: f64,
    p_t: f64,
    omega: f64,
    main_gain: f64,
    side_gain: f64,
    n0: f64,
    n_c: f64,
    rho: f64,
}

impl PyNetwork {
    fn wrap(p: NetworkParams) -> Self {
        PyNetwork {
            lambda: p.lambda,
            p_los: p.p_los,
            alpha: p.alpha,
            mu: p.mu,
            d0: p.d0,
            p_t: p.p_t,
            omega: p.antenna.omega,
            main_gain: p.antenna.main,
            side_gain: p.antenna.side,
            n0: p.n0,
            n_c: p.n_c,
            rho: p.rho,
        }
    }

    fn params(&self) -> PyResult<NetworkParams> {
        let p = NetworkParams {
            lambda: self.lambda,
            p_los: self.p_los,
            alpha: self.alpha,
            mu: self.mu,
            d0: self.d0,
            p_t: self.p_t,
            antenna: AntennaPattern {
                omega: self.omega,
                main: self.main_gain,
                side: self.side_gain,
            },
            n0: self.n0,
            n_c: self.n_c,
            rho: self.rho,
            rectenna: RectennaModel::default(),
        };
        p.validate().map_err(to_py)?;
        Ok(p)
    }
}

#[pymethods]
impl PyNetwork {
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        let name: ScenarioName = name.parse().map_err(to_py)?;
        Ok(Self::wrap(Scenario::preset(name).params))
    }

    #[staticmethod]
    fn mmwave() -> Self {
        Self::wrap(Scenario::mmwave().params)
    }

    #[staticmethod]
    fn uhf() -> Self {
        Self::wrap(Scenario::uhf().params)
    }

    fn validate(&self) -> PyResult<()> {
        self.params().map(|_| ())
    }

    fn copy(&self) -> Self {
        self.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "Network(lambda={}, p_los={}, alpha={}, mu={}, d0={}, p_t={}, omega={}, \
             main_gain={}, side_gain={}, n0={}, n_c={}, rho={})",
            self.lambda, self.p_los, self.alpha, self.mu, self.d0, self.p_t, self.omega,
            self.main_gain, self.side_gain, self.n0, self.n_c, self.rho
        )
    }
}

/// Thresholds τ (MPE), γ (SINR) and ε (harvested energy).
#[pyclass(name = "Thresholds", skip_from_py_object)]
#[derive(Clone)]
struct PyThresholds {
    inner: CoverageThresholds,
}

#[pymethods]
impl PyThresholds {
    #[new]
    #[pyo3(signature = (tau=None, gamma=None, eps=None))]
    fn new(tau: Option<f64>, gamma: Option<f64>, eps: Option<f64>) -> Self {
        let d = default_thresholds();
        PyThresholds {
            inner: CoverageThresholds {
                tau: tau.unwrap_or(d.tau),
                gamma: gamma.unwrap_or(d.gamma),
                eps: eps.unwrap_or(d.eps),
            },
        }
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.inner.tau
    }
    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.gamma
    }
    #[getter]
    fn eps(&self) -> f64 {
        self.inner.eps
    }

    fn __repr__(&self) -> String {
        let t = &self.inner;
        format!("Thresholds(tau={}, gamma={}, eps={})", t.tau, t.gamma, t.eps)
    }
}

fn opts() -> QuadratureOptions {
    QuadratureOptions::default()
}

#[pyfunction]
fn mpe_prob(py: Python<'_>, tau: f64, net: &PyNetwork) -> PyResult<f64> {
    let p = net.params()?;
    py.detach(|| analytic::mpe_prob(tau, &p, &opts())).map_err(to_py)
}

#[pyfunction]
fn mpe_prob_asymptotic(py: Python<'_>, tau: f64, net: &PyNetwork) -> PyResult<f64> {
    let p = net.params()?;
    py.detach(|| analytic::mpe_prob_asymptotic(tau, &p, &opts())).map_err(to_py)
}

#[pyfunction]
fn info_coverage(py: Python<'_>, gamma: f64, net: &PyNetwork) -> PyResult<f64> {
    let p = net.params()?;
    py.detach(|| analytic::info_coverage(gamma, &p, &opts())).map_err(to_py)
}

#[pyfunction]
fn energy_coverage(py: Python<'_>, eps: f64, net: &PyNetwork) -> PyResult<f64> {
    let p = net.params()?;
    py.detach(|| analytic::energy_coverage(eps, &p, &opts())).map_err(to_py)
}

#[pyfunction]
fn joint_coverage(py: Python<'_>, th: &PyThresholds, net: &PyNetwork) -> PyResult<f64> {
    let (t, p) = (th.inner, net.params()?);
    py.detach(|| analytic::joint_coverage(&t, &p, &opts())).map_err(to_py)
}

/// Product approximation p_s · p_J.
#[pyfunction]
fn joint_with_mpe(py: Python<'_>, th: &PyThresholds, net: &PyNetwork) -> PyResult<f64> {
    let (t, p) = (th.inner, net.params()?);
    py.detach(|| analytic::joint_with_mpe(&t, &p, &opts())).map_err(to_py)
}

/// Joint coverage with no LOS interferers (p_los is ignored).
#[pyfunction]
fn no_interference_joint(th: &PyThresholds, net: &PyNetwork) -> PyResult<f64> {
    analytic::no_interference_joint(&th.inner, &net.params()?).map_err(to_py)
}

#[pyfunction]
fn optimal_power(th: &PyThresholds, net: &PyNetwork) -> PyResult<f64> {
    analytic::optimal_power(&th.inner, &net.params()?).map_err(to_py)
}

/// Interference CF of one PPP, returned as a Python complex.
#[pyfunction]
#[pyo3(signature = (t, lam, p, a_exp, mu=1))]
fn interference_cf(t: f64, lam: f64, p: f64, a_exp: f64, mu: u32) -> PyResult<ComplexValue> {
    analytic::interference_cf(t, lam, p, a_exp, mu).map_err(to_py)
}

fn estimate_dict<'py>(py: Python<'py>, e: &ProbabilityEstimate) -> PyResult<Bound<'py, PyAny>> {
    let d = PyDict::new(py);
    d.set_item("value", e.value)?;
    d.set_item("ci_half_width", e.ci_half_width)?;
    d.set_item("trials", e.trials)?;
    Ok(d.into_any())
}

/// Monte Carlo estimates of all five probabilities, keyed by metric name.
#[pyfunction]
#[pyo3(signature = (th, net, trials=100_000, seed=2024))]
fn simulate<'py>(
    py: Python<'py>,
    th: &PyThresholds,
    net: &PyNetwork,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let s = McSettings { trials, seed, ..McSettings::default() };
    let (t, p) = (th.inner, net.params()?);
    let est = py.detach(|| montecarlo::estimate(&p, &t, &s)).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("p_s", estimate_dict(py, &est.mpe)?)?;
    out.set_item("p_o", estimate_dict(py, &est.info)?)?;
    out.set_item("p_e", estimate_dict(py, &est.energy)?)?;
    out.set_item("p_J", estimate_dict(py, &est.joint)?)?;
    out.set_item("joint_mpe", estimate_dict(py, &est.joint_with_mpe)?)?;
    Ok(out.into_any())
}

#[pymodule]
fn swipt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNetwork>()?;
    m.add_class::<PyThresholds>()?;
    m.add_function(wrap_pyfunction!(mpe_prob, m)?)?;
    m.add_function(wrap_pyfunction!(mpe_prob_asymptotic, m)?)?;
    m.add_function(wrap_pyfunction!(info_coverage, m)?)?;
    m.add_function(wrap_pyfunction!(energy_coverage, m)?)?;
    m.add_function(wrap_pyfunction!(joint_coverage, m)?)?;
    m.add_function(wrap_pyfunction!(joint_with_mpe, m)?)?;
    m.add_function(wrap_pyfunction!(no_interference_joint, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_power, m)?)?;
    m.add_function(wrap_pyfunction!(interference_cf, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
