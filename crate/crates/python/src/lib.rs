//! Python bindings for `bohr-core`.

use bohr_core::functionals::{self, QuadraticWeight};
use bohr_core::radii::{self, RadiusProblem};
use bohr_core::series::{self, RationalFunction};
use bohr_core::verify::{self, CheckConfig, Lambda, MajorizationMode};
use bohr_core::{Error, PowerSeries, WeightSequence};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

struct PyErrWrap(Error);

impl From<PyErrWrap> for PyErr {
    fn from(e: PyErrWrap) -> Self {
        match e.0 {
            Error::Tooling(_) | Error::Io(_) => PyRuntimeError::new_err(e.0.to_string()),
            other => PyValueError::new_err(other.to_string()),
        }
    }
}

fn wrap<T>(r: bohr_core::Result<T>) -> PyResult<T> {
    r.map_err(|e| PyErrWrap(e).into())
}

/// A weight sequence `φ_n(r)`.
#[pyclass(name = "Weights", module = "bohr", frozen)]
struct PyWeights(WeightSequence);

#[pymethods]
impl PyWeights {
    #[staticmethod]
    fn geometric() -> Self {
        Self(WeightSequence::geometric())
    }

    #[staticmethod]
    fn power(alpha: f64) -> PyResult<Self> {
        wrap(WeightSequence::power(alpha)).map(Self)
    }

    #[staticmethod]
    fn truncated_geometric(n: usize) -> PyResult<Self> {
        wrap(WeightSequence::truncated_geometric(n)).map(Self)
    }

    #[staticmethod]
    #[pyo3(signature = (b, growth_cap=None))]
    fn custom(b: Vec<f64>, growth_cap: Option<f64>) -> PyResult<Self> {
        wrap(WeightSequence::custom(b, growth_cap)).map(Self)
    }

    /// Parses `geometric`, `power:<alpha>`, `truncated:<n>` or a JSON descriptor.
    #[staticmethod]
    fn parse(descriptor: &str) -> PyResult<Self> {
        wrap(bohr_core::cli::parse_weights(descriptor)).map(Self)
    }

    fn weight_at(&self, k: usize, r: f64) -> PyResult<f64> {
        wrap(self.0.weight_at(k, r))
    }

    /// `(Φ_n(r), error bound)`.
    fn tail_sum(&self, n: usize, r: f64) -> PyResult<(f64, f64)> {
        let t = wrap(self.0.tail_sum(n, r))?;
        Ok((t.value, t.error_bound))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Weights({})", self.0)
    }
}

/// A truncated power series; coefficients past `order` are unknown.
#[pyclass(name = "Series", module = "bohr", frozen)]
struct PySeries(PowerSeries);

#[pymethods]
impl PySeries {
    #[new]
    #[pyo3(signature = (coeffs, bounded_by_one=false, schwarz=false))]
    fn new(coeffs: Vec<Complex64>, bounded_by_one: bool, schwarz: bool) -> PyResult<Self> {
        let mut f = wrap(PowerSeries::new(coeffs))?;
        if bounded_by_one || schwarz {
            f = wrap(f.with_bounded_by_one())?;
        }
        if schwarz {
            f = wrap(f.with_schwarz())?;
        }
        Ok(Self(f))
    }

    #[staticmethod]
    #[pyo3(signature = (a, order=series::DEFAULT_ORDER))]
    fn mobius(a: f64, order: usize) -> PyResult<Self> {
        wrap(series::mobius(a, order)).map(Self)
    }

    #[staticmethod]
    #[pyo3(signature = (zeros, rotation=Complex64::new(1.0, 0.0), order=series::DEFAULT_ORDER))]
    fn blaschke(zeros: Vec<Complex64>, rotation: Complex64, order: usize) -> PyResult<Self> {
        wrap(series::blaschke(&zeros, rotation, order)).map(Self)
    }

    /// Coefficients of `g∘ω` for the Blaschke product `g` and a Schwarz inner product `z·B`.
    #[staticmethod]
    #[pyo3(signature = (zeros, rotation, inner_zeros, inner_rotation, order=series::DEFAULT_ORDER))]
    fn subordinate(
        zeros: Vec<Complex64>,
        rotation: Complex64,
        inner_zeros: Vec<Complex64>,
        inner_rotation: Complex64,
        order: usize,
    ) -> PyResult<Self> {
        let inner = wrap(RationalFunction::blaschke(&inner_zeros, inner_rotation))?.mul_z();
        let f = wrap(RationalFunction::compose_blaschke(&zeros, rotation, &inner))?;
        Ok(Self(f.expand(order, bohr_core::SeriesTags::BOUNDED)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        wrap(PowerSeries::from_json(text)).map(Self)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn coeffs(&self) -> Vec<Complex64> {
        self.0.coeffs().to_vec()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn bounded_by_one(&self) -> bool {
        self.0.is_bounded_by_one()
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        self.0.eval_at(z)
    }

    fn derivative(&self) -> Self {
        Self(self.0.derivative())
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(self.0.cauchy_product(&other.0))
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(self.0.add(&other.0))
    }

    fn compose(&self, omega: &Self) -> PyResult<Self> {
        wrap(self.0.compose(&omega.0)).map(Self)
    }

    fn __len__(&self) -> usize {
        self.0.order() + 1
    }

    fn __repr__(&self) -> String {
        format!("Series(order={}, bounded_by_one={})", self.0.order(), self.0.is_bounded_by_one())
    }
}

fn pair(v: bohr_core::FunctionalValue) -> (f64, f64) {
    (v.value, v.tail_bound)
}

/// `(Σ_{n≥N} |a_n| φ_n(r), tail bound)`.
#[pyfunction]
#[pyo3(signature = (f, w, r, n=0))]
fn majorant(f: &PySeries, w: &PyWeights, r: f64, n: usize) -> PyResult<(f64, f64)> {
    wrap(functionals::majorant(&f.0, &w.0, n, r)).map(pair)
}

#[pyfunction]
fn bohr_functional(f: &PySeries, w: &PyWeights, p: f64, r: f64) -> PyResult<(f64, f64)> {
    wrap(functionals::bohr_functional(&f.0, &w.0, p, r)).map(pair)
}

#[pyfunction]
fn refined_functional(f: &PySeries, w: &PyWeights, p: f64, r: f64) -> PyResult<(f64, f64)> {
    wrap(functionals::refined_functional(&f.0, &w.0, p, r)).map(pair)
}

#[pyfunction]
fn derivative_majorant(f: &PySeries, w: &PyWeights, r: f64) -> PyResult<(f64, f64)> {
    wrap(functionals::derivative_majorant(&f.0, &w.0, r)).map(pair)
}

#[pyfunction]
fn quadratic_weighted_sum(f: &PySeries, psi: &str, r: f64) -> PyResult<(f64, f64)> {
    let psi = wrap(QuadraticWeight::parse(psi))?;
    wrap(functionals::quadratic_weighted_sum(&f.0, psi, r)).map(pair)
}

#[pyfunction]
fn bombieri_bound(r: f64) -> PyResult<f64> {
    wrap(functionals::bombieri_bound(r))
}

/// Minimal positive root of the named radius equation.
#[pyfunction]
#[pyo3(signature = (equation="general", weights=None, p=1.0, alpha=None, n=None, big_k=1.0))]
fn radius(
    equation: &str,
    weights: Option<&PyWeights>,
    p: f64,
    alpha: Option<f64>,
    n: Option<usize>,
    big_k: f64,
) -> PyResult<f64> {
    let w = weights.map(|w| w.0.clone()).unwrap_or_else(WeightSequence::geometric);
    let missing = |what: &str| PyValueError::new_err(format!("equation {equation:?} needs {what}"));
    let problem = match equation {
        "general" => RadiusProblem::General { w, p },
        "corollary" => RadiusProblem::Corollary { n: n.ok_or_else(|| missing("n"))?, p },
        "power" => RadiusProblem::PowerAlpha { alpha: alpha.ok_or_else(|| missing("alpha"))?, p },
        "harmonic" => {
            let k = wrap(radii::dilatation(big_k))?;
            return wrap(radii::radius_harmonic(&w, p, k));
        }
        "schwarz-derivative" => RadiusProblem::SchwarzDerivative { w },
        "odd" => RadiusProblem::Odd { w },
        other => return Err(PyValueError::new_err(format!("unknown equation {other:?}"))),
    };
    wrap(radii::solve(&problem, radii::DEFAULT_TOL)).map(|s| s.radius)
}

/// Runs a verification check and returns its JSON report.
#[pyfunction]
#[pyo3(signature = (check, weights=None, p=1.0, samples=1000, seed=42, order=256, eps=0.05, big_k=1.0, psi="geometric", lam=None, mode="subordination"))]
#[allow(clippy::too_many_arguments)]
fn run_check(
    py: Python<'_>,
    check: &str,
    weights: Option<&PyWeights>,
    p: f64,
    samples: usize,
    seed: u64,
    order: usize,
    eps: f64,
    big_k: f64,
    psi: &str,
    lam: Option<f64>,
    mode: &str,
) -> PyResult<String> {
    let w = weights.map(|w| w.0.clone()).unwrap_or_else(WeightSequence::geometric);
    let cfg = CheckConfig {
        samples,
        seed,
        order,
        ..Default::default()
    };
    let psi = wrap(QuadraticWeight::parse(psi))?;
    let lambda = lam.map(Lambda::Constant).unwrap_or(Lambda::Carlson);
    let mode = match mode {
        "subordination" => MajorizationMode::Subordination,
        "modulus" => MajorizationMode::Modulus,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let check = check.to_string();
    let report = py.detach(move || match check.as_str() {
        "theorem1" => verify::check_theorem1(&w, p, &cfg),
        "sharpness" => verify::probe_sharpness(&w, p, eps, &cfg),
        "quasi" => verify::check_quasi_majorant(&w, &cfg),
        "weighted-quasi" => verify::check_weighted_quasi(&w, psi, lambda, &cfg),
        "goluzin" => verify::check_goluzin(psi, &cfg),
        "harmonic" => verify::check_harmonic(&w, p, big_k, &cfg),
        "derivative" => verify::check_derivative_bohr(&w, &cfg),
        "derivative-majorization" => verify::check_derivative_majorization(&w, mode, &cfg),
        "odd" => verify::check_odd_majorant(&w, &cfg),
        "bombieri" => verify::check_bombieri(&cfg),
        "carlson" => verify::check_carlson(&cfg),
        "table1" => verify::check_table1(Some(p)),
        other => Err(Error::Input(format!("unknown check {other:?}"))),
    });
    wrap(report).map(|r| r.to_json())
}

#[pymodule]
fn bohr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeights>()?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(majorant, m)?)?;
    m.add_function(wrap_pyfunction!(bohr_functional, m)?)?;
    m.add_function(wrap_pyfunction!(refined_functional, m)?)?;
    m.add_function(wrap_pyfunction!(derivative_majorant, m)?)?;
    m.add_function(wrap_pyfunction!(quadratic_weighted_sum, m)?)?;
    m.add_function(wrap_pyfunction!(bombieri_bound, m)?)?;
    m.add_function(wrap_pyfunction!(radius, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    Ok(())
}
