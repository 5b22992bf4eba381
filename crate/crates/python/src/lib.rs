//! Python bindings: a `Quaternion` class over float or exact rational
//! scalars, plus the commutator, similarity, exponential and harness
//! entry points. Structured results come back as plain dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use quatcomm_core::commutator as comm;
use quatcomm_core::exponential as expo;
use quatcomm_core::similarity as sim;
use quatcomm_core::{
    AnyQuaternion, AnyScalar, AnyTuple, ClaimId, Error, HarnessConfig, Mode, Permutation, Quaternion as Q,
    Rational, Scalar,
};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mode_arg(mode: &str) -> PyResult<Mode> {
    mode.parse().map_err(err)
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn scalar<'py>(py: Python<'py>, s: &AnyScalar) -> PyResult<Bound<'py, PyAny>> {
    match s {
        AnyScalar::Float(x) => Ok(x.into_pyobject(py)?.into_any()),
        AnyScalar::Exact(x) => py
            .import("fractions")?
            .getattr("Fraction")?
            .call1((x.to_string(),)),
    }
}

fn exact_coefficient(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    // ints, Fractions and strings like "3/4" all print as exact literals
    let text = value.str()?.to_string();
    let q = quatcomm_core::parse::<Rational>(&text).map_err(err)?;
    if !q.im.norm_sq().is_zero() {
        return Err(PyValueError::new_err(format!("not a real number: {text}")));
    }
    Ok(q.re)
}

/// A quaternion `w + xi + yj + zk` in float or exact mode.
#[pyclass(name = "Quaternion", module = "quatcomm", frozen, from_py_object)]
#[derive(Clone)]
struct PyQuaternion {
    inner: AnyQuaternion,
}

impl From<AnyQuaternion> for PyQuaternion {
    fn from(inner: AnyQuaternion) -> Self {
        Self { inner }
    }
}

impl From<Q<f64>> for PyQuaternion {
    fn from(q: Q<f64>) -> Self {
        AnyQuaternion::Float(q).into()
    }
}

impl From<Q<Rational>> for PyQuaternion {
    fn from(q: Q<Rational>) -> Self {
        AnyQuaternion::Exact(q).into()
    }
}

#[pymethods]
impl PyQuaternion {
    #[new]
    #[pyo3(signature = (w=0.0, x=0.0, y=0.0, z=0.0))]
    fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Q::from_components([w, x, y, z]).into()
    }

    /// Exact quaternion from ints, `fractions.Fraction`s or strings.
    #[staticmethod]
    #[pyo3(signature = (w=None, x=None, y=None, z=None))]
    fn exact(
        w: Option<Bound<'_, PyAny>>,
        x: Option<Bound<'_, PyAny>>,
        y: Option<Bound<'_, PyAny>>,
        z: Option<Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let mut c = [w, x, y, z].into_iter().map(|v| match v {
            Some(v) => exact_coefficient(&v),
            None => Ok(<Rational as Scalar>::zero()),
        });
        let mut next = || c.next().expect("four components");
        Ok(Q::from_components([next()?, next()?, next()?, next()?]).into())
    }

    #[staticmethod]
    #[pyo3(signature = (literal, mode="float"))]
    fn parse(literal: &str, mode: &str) -> PyResult<Self> {
        quatcomm_core::parse_quaternion(literal, mode_arg(mode)?)
            .map(Into::into)
            .map_err(err)
    }

    #[getter]
    fn mode(&self) -> String {
        self.inner.mode().to_string()
    }

    /// `(w, x, y, z)` as floats, or as `Fraction`s in exact mode.
    #[getter]
    fn components<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.components().iter().map(|c| scalar(py, c)).collect()
    }

    #[getter]
    fn re<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        scalar(py, &self.inner.re())
    }

    fn conj(&self) -> Self {
        self.inner.conj().into()
    }

    fn norm_sq<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        scalar(py, &self.inner.norm_sq())
    }

    /// Norm; exact mode only succeeds when the norm is rational.
    fn norm<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        scalar(py, &self.inner.norm().map_err(err)?)
    }

    fn inverse(&self) -> PyResult<Self> {
        self.inner.inverse().map(Into::into).map_err(err)
    }

    fn to_float(&self) -> Self {
        self.inner.to_float().into()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.inner.add(&other.inner).map(Into::into).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.inner.sub(&other.inner).map(Into::into).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.inner.mul(&other.inner).map(Into::into).map_err(err)
    }

    fn __neg__(&self) -> Self {
        self.inner.neg().into()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Quaternion.parse('{}', mode='{}')", self.inner, self.inner.mode())
    }
}

fn tuple(qs: Vec<PyQuaternion>) -> PyResult<AnyTuple> {
    AnyTuple::new(qs.into_iter().map(|q| q.inner).collect()).map_err(err)
}

fn permutation(order: Option<Vec<usize>>, n: usize) -> PyResult<Permutation> {
    match order {
        Some(order) => Permutation::from_one_based(&order).map_err(err),
        None => Ok(Permutation::identity(n)),
    }
}

fn pair(a: &PyQuaternion, b: &PyQuaternion) -> PyResult<AnyTuple> {
    tuple(vec![a.clone(), b.clone()])
}

/// `ab - ba`.
#[pyfunction]
fn commutator(a: &PyQuaternion, b: &PyQuaternion) -> PyResult<PyQuaternion> {
    Ok(match pair(a, b)? {
        AnyTuple::Float(v) => comm::commutator(&v[0], &v[1]).into(),
        AnyTuple::Exact(v) => comm::commutator(&v[0], &v[1]).into(),
    })
}

/// Right-nested commutator of `qs` in the order given by the 1-based
/// permutation `order` (identity by default).
#[pyfunction]
#[pyo3(signature = (qs, order=None))]
fn nested_commutator(qs: Vec<PyQuaternion>, order: Option<Vec<usize>>) -> PyResult<PyQuaternion> {
    let sigma = permutation(order, qs.len())?;
    match tuple(qs)? {
        AnyTuple::Float(v) => comm::nested_commutator(&v, &sigma).map(Into::into),
        AnyTuple::Exact(v) => comm::nested_commutator(&v, &sigma).map(Into::into),
    }
    .map_err(err)
}

/// Closed form `2^(n-1) · (v₁ × (v₂ × … × vₙ))` of the nested commutator.
#[pyfunction]
#[pyo3(signature = (qs, order=None))]
fn flat_formula(qs: Vec<PyQuaternion>, order: Option<Vec<usize>>) -> PyResult<PyQuaternion> {
    let sigma = permutation(order, qs.len())?;
    match tuple(qs)? {
        AnyTuple::Float(v) => comm::flat_formula(&v, &sigma).map(Into::into),
        AnyTuple::Exact(v) => comm::flat_formula(&v, &sigma).map(Into::into),
    }
    .map_err(err)
}

/// Product of `qs` taken in the 1-based `order`.
#[pyfunction]
#[pyo3(signature = (qs, order=None))]
fn multiproduct(qs: Vec<PyQuaternion>, order: Option<Vec<usize>>) -> PyResult<PyQuaternion> {
    let sigma = permutation(order, qs.len())?;
    match tuple(qs)? {
        AnyTuple::Float(v) => sim::multiproduct(&v, &sigma).map(Into::into),
        AnyTuple::Exact(v) => sim::multiproduct(&v, &sigma).map(Into::into),
    }
    .map_err(err)
}

/// Exact check of the sign claim over all orderings of `qs`.
#[pyfunction]
fn verify_sign_claim<'py>(py: Python<'py>, qs: Vec<PyQuaternion>) -> PyResult<Bound<'py, PyAny>> {
    match tuple(qs)? {
        AnyTuple::Exact(v) => to_dict(py, &comm::verify_sign_claim(&v).map_err(err)?),
        AnyTuple::Float(v) => to_dict(py, &comm::verify_sign_claim(&v).map_err(err)?),
    }
}

#[pyfunction]
fn is_similar(p: &PyQuaternion, q: &PyQuaternion) -> PyResult<bool> {
    Ok(match pair(p, q)? {
        AnyTuple::Float(v) => sim::is_similar(&v[0], &v[1]),
        AnyTuple::Exact(v) => sim::is_similar(&v[0], &v[1]),
    })
}

/// Nonzero `s` with `s⁻¹ p s = q`.
#[pyfunction]
fn similarity_witness(p: &PyQuaternion, q: &PyQuaternion) -> PyResult<PyQuaternion> {
    match pair(p, q)? {
        AnyTuple::Float(v) => sim::similarity_witness(&v[0], &v[1]).map(Into::into),
        AnyTuple::Exact(v) => sim::similarity_witness(&v[0], &v[1]).map(Into::into),
    }
    .map_err(err)
}

/// `s⁻¹ p s`.
#[pyfunction]
fn conjugate_by(p: &PyQuaternion, s: &PyQuaternion) -> PyResult<PyQuaternion> {
    match pair(p, s)? {
        AnyTuple::Float(v) => sim::conjugate_by(&v[0], &v[1]).map(Into::into),
        AnyTuple::Exact(v) => sim::conjugate_by(&v[0], &v[1]).map(Into::into),
    }
    .map_err(err)
}

/// Similarity classes of all `n!` multiproducts of `qs`.
#[pyfunction]
fn class_partition<'py>(py: Python<'py>, qs: Vec<PyQuaternion>) -> PyResult<Bound<'py, PyAny>> {
    match tuple(qs)? {
        AnyTuple::Float(v) => to_dict(py, &sim::enumerate_class_partition(&v).map_err(err)?),
        AnyTuple::Exact(v) => to_dict(py, &sim::enumerate_class_partition(&v).map_err(err)?),
    }
}

/// `(a × b) · c` of the imaginary parts.
#[pyfunction]
fn triple_det<'py>(py: Python<'py>, a: &PyQuaternion, b: &PyQuaternion, c: &PyQuaternion) -> PyResult<Bound<'py, PyAny>> {
    let det = match tuple(vec![a.clone(), b.clone(), c.clone()])? {
        AnyTuple::Float(v) => AnyScalar::Float(sim::triple_det(&v[0], &v[1], &v[2])),
        AnyTuple::Exact(v) => AnyScalar::Exact(sim::triple_det(&v[0], &v[1], &v[2])),
    };
    scalar(py, &det)
}

fn float_arg(q: &PyQuaternion, op: &'static str) -> PyResult<Q<f64>> {
    q.inner.require_float(op).cloned().map_err(err)
}

#[pyfunction]
fn qexp(q: &PyQuaternion) -> PyResult<PyQuaternion> {
    Ok(expo::qexp(&float_arg(q, "qexp")?).into())
}

#[pyfunction]
#[pyo3(signature = (q, terms=expo::SERIES_TERMS))]
fn qexp_series(q: &PyQuaternion, terms: usize) -> PyResult<PyQuaternion> {
    Ok(expo::qexp_series(&float_arg(q, "qexp_series")?, terms).into())
}

/// Derivative of `exp(ψ(x))` from the jet `(ψ, ψ')`.
#[pyfunction]
fn qexp_derivative(psi: &PyQuaternion, psi_prime: &PyQuaternion) -> PyResult<PyQuaternion> {
    let jet = expo::JetPair::new(float_arg(psi, "qexp_derivative")?, float_arg(psi_prime, "qexp_derivative")?);
    Ok(expo::qexp_derivative(&jet).into())
}

#[pyfunction]
fn polar_decompose<'py>(py: Python<'py>, q: &PyQuaternion) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &expo::polar_decompose(&float_arg(q, "polar_decompose")?))
}

/// Names accepted by `run_harness`.
#[pyfunction]
fn claims() -> Vec<&'static str> {
    ClaimId::ALL.iter().map(ClaimId::as_str).collect()
}

/// Runs a claim harness and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (claim, trials=100, seed=0, mode=None, n=None, bound=9))]
fn run_harness<'py>(
    py: Python<'py>,
    claim: &str,
    trials: usize,
    seed: u64,
    mode: Option<&str>,
    n: Option<usize>,
    bound: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let claim: ClaimId = claim.parse().map_err(err)?;
    let mut config = HarnessConfig::new(claim, trials, seed).with_bound(bound);
    if let Some(mode) = mode {
        config = config.with_mode(mode_arg(mode)?);
    }
    if let Some(n) = n {
        config = config.with_n(n);
    }
    let report = py.detach(|| quatcomm_core::run_harness(&config)).map_err(err)?;
    to_dict(py, &report)
}

#[pymodule]
fn quatcomm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuaternion>()?;
    m.add_function(wrap_pyfunction!(commutator, m)?)?;
    m.add_function(wrap_pyfunction!(nested_commutator, m)?)?;
    m.add_function(wrap_pyfunction!(flat_formula, m)?)?;
    m.add_function(wrap_pyfunction!(multiproduct, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sign_claim, m)?)?;
    m.add_function(wrap_pyfunction!(is_similar, m)?)?;
    m.add_function(wrap_pyfunction!(similarity_witness, m)?)?;
    m.add_function(wrap_pyfunction!(conjugate_by, m)?)?;
    m.add_function(wrap_pyfunction!(class_partition, m)?)?;
    m.add_function(wrap_pyfunction!(triple_det, m)?)?;
    m.add_function(wrap_pyfunction!(qexp, m)?)?;
    m.add_function(wrap_pyfunction!(qexp_series, m)?)?;
    m.add_function(wrap_pyfunction!(qexp_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(polar_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(claims, m)?)?;
    m.add_function(wrap_pyfunction!(run_harness, m)?)?;
    Ok(())
}
