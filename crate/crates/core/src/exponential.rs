//! Quaternionic exponential and the derivative of `x ↦ exp(ψ(x))`.
//!
//! Float mode only. With `ψ = f + I g` (`f` real, `g = |im ψ|`, `I` a unit
//! pure quaternion), `exp ψ = e^f (cos g + I sin g)` and
//!
//! ```text
//! (exp ψ)' = ψ' exp ψ − I' (g exp ψ − e^f sin g)
//! ```
//!
//! where `I'` comes straight from the jet `(ψ, ψ')`. The naive rule
//! `(exp ψ)' = ψ' exp ψ` only holds when `ψ` and `ψ'` commute.

use serde::Serialize;

use crate::quaternion::{Quaternion, Vector3};
use crate::report::serialize_display;

type Q = Quaternion<f64>;

/// Below this imaginary magnitude the polar axis is undefined.
pub const POLAR_EPS: f64 = 1e-12;
/// Below this imaginary magnitude the closed-form derivative hands over to
/// the series, since `I'` carries a `1/g` factor.
pub const DERIVATIVE_SWITCH: f64 = 1e-6;
pub const SERIES_TERMS: usize = 40;
pub const DERIVATIVE_SERIES_TERMS: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarForm {
    pub f: f64,
    pub g: f64,
    #[serde(serialize_with = "serialize_display")]
    pub axis: Q,
    pub degenerate: bool,
}

impl PolarForm {
    pub fn reconstruct(&self) -> Q {
        Q::real(self.f) + self.axis.scale(&self.g)
    }
}

pub fn polar_decompose(q: &Q) -> PolarForm {
    polar_decompose_with(q, POLAR_EPS)
}

pub fn polar_decompose_with(q: &Q, eps: f64) -> PolarForm {
    let g = q.im.norm_sq().sqrt();
    if g < eps {
        return PolarForm {
            f: q.re,
            g,
            axis: Q::i(),
            degenerate: true,
        };
    }
    PolarForm {
        f: q.re,
        g,
        axis: Q::pure(q.im.scale(&g.recip())),
        degenerate: false,
    }
}

/// `e^f (cos g + I sin g)`.
pub fn qexp(q: &Q) -> Q {
    let p = polar_decompose(q);
    let ef = p.f.exp();
    if p.degenerate {
        return Q::real(ef);
    }
    Q::from_parts(ef * p.g.cos(), p.axis.im.scale(&(ef * p.g.sin())))
}

/// `Σ_{n < terms} qⁿ / n!`.
pub fn qexp_series(q: &Q, terms: usize) -> Q {
    let mut term = Q::one();
    let mut sum = Q::zero();
    for n in 0..terms {
        if n > 0 {
            term = term.mul(q).scale(&(n as f64).recip());
        }
        sum = sum + term.clone();
    }
    sum
}

/// Value and first derivative of a quaternion-valued path at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JetPair {
    #[serde(serialize_with = "serialize_display")]
    pub value: Q,
    #[serde(serialize_with = "serialize_display")]
    pub derivative: Q,
}

impl JetPair {
    pub fn new(value: Q, derivative: Q) -> Self {
        Self { value, derivative }
    }

    pub fn g(&self) -> f64 {
        self.value.im.norm_sq().sqrt()
    }

    /// `g' = (v · v') / g` with `v = im ψ`.
    pub fn g_prime(&self) -> f64 {
        self.value.im.dot(&self.derivative.im) / self.g()
    }

    /// `I' = v'/g − v (v·v') / g³`; `None` when `g` is degenerate.
    pub fn axis_derivative(&self) -> Option<Q> {
        let g = self.g();
        if g < POLAR_EPS {
            return None;
        }
        let (v, dv) = (&self.value.im, &self.derivative.im);
        let proj = v.dot(dv) / (g * g * g);
        Some(Q::pure(dv.scale(&g.recip()) - v.scale(&proj)))
    }
}

/// `(exp ψ)'` in closed form.
pub fn qexp_derivative(jet: &JetPair) -> Q {
    let g = jet.g();
    if g < DERIVATIVE_SWITCH {
        return degenerate_derivative(jet);
    }
    let p = polar_decompose(&jet.value);
    let axis_prime = jet.axis_derivative().expect("g above switch");
    let e = qexp(&jet.value);
    let bracket = e.scale(&g) - Q::real(p.f.exp() * g.sin());
    jet.derivative.mul(&e) - axis_prime.mul(&bracket)
}

/// Near the real axis: `exp ψ = e^f exp(v)` with `v = im ψ` small, so
/// `(exp ψ)' = f' exp ψ + e^f (exp v)'` and the series for `(exp v)'`
/// converges in a handful of terms.
fn degenerate_derivative(jet: &JetPair) -> Q {
    let f = jet.value.re;
    let df = jet.derivative.re;
    let vjet = JetPair::new(Q::pure(jet.value.im.clone()), Q::pure(jet.derivative.im.clone()));
    qexp(&jet.value).scale(&df) + qexp_derivative_series(&vjet, DERIVATIVE_SERIES_TERMS).scale(&f.exp())
}

/// `Σ_{1 ≤ n < terms} (1/n!) Σ_k ψᵏ ψ' ψ^{n−1−k}`, the term-by-term
/// derivative of the exponential series; needs no commutation assumption.
pub fn qexp_derivative_series(jet: &JetPair, terms: usize) -> Q {
    let (psi, dpsi) = (&jet.value, &jet.derivative);
    // power = ψⁿ/n!, deriv = (ψⁿ)'/n!
    let mut power = Q::one();
    let mut deriv = Q::zero();
    let mut sum = Q::zero();
    for n in 1..terms {
        let inv = (n as f64).recip();
        deriv = (deriv.mul(psi) + power.mul(dpsi)).scale(&inv);
        power = power.mul(psi).scale(&inv);
        sum = sum + deriv.clone();
    }
    sum
}

/// `ψ' exp ψ`, the rule that fails for non-commuting `ψ`, `ψ'`.
pub fn naive_derivative(jet: &JetPair) -> Q {
    jet.derivative.mul(&qexp(&jet.value))
}

/// `ab + ba`.
pub fn anticommutator(a: &Q, b: &Q) -> Q {
    a.mul(b) + b.mul(a)
}

/// `[f(x + h) − f(x − h)] / 2h`.
pub fn central_difference(f: impl Fn(f64) -> Q, x: f64, h: f64) -> Q {
    (f(x + h) - f(x - h)).scale(&(2.0 * h).recip())
}

/// `ψ(x) = Σ cₙ xⁿ` with quaternion coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialPath {
    pub coeffs: Vec<Q>,
}

impl PolynomialPath {
    pub fn new(coeffs: Vec<Q>) -> Self {
        Self { coeffs }
    }

    pub fn eval(&self, x: f64) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc.scale(&x) + c.clone())
    }

    pub fn derivative(&self, x: f64) -> Q {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Q::zero(), |acc, (n, c)| acc.scale(&x) + c.scale(&(n as f64)))
    }

    pub fn jet(&self, x: f64) -> JetPair {
        JetPair::new(self.eval(x), self.derivative(x))
    }

    /// `exp(ψ(x))`.
    pub fn exp_at(&self, x: f64) -> Q {
        qexp(&self.eval(x))
    }
}

/// `ψ(x) = x·i + x²·j`: `ψ` and `ψ'` do not commute away from the origin.
pub fn noncommuting_witness_path() -> PolynomialPath {
    PolynomialPath::new(vec![Q::zero(), Q::i(), Q::j()])
}

pub fn pure(x: f64, y: f64, z: f64) -> Q {
    Q::pure(Vector3::new(x, y, z))
}
