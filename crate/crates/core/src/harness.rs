//! Randomized, seeded verification of algebraic claims.
//!
//! Each trial draws its inputs from its own ChaCha stream keyed by
//! `(seed, trial index)`, so reports are reproducible bit for bit no matter
//! how trials are scheduled. Every fifth trial uses a constructed special
//! case (dependent, planar or pure inputs) so that measure-zero branches are
//! always exercised.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::commutator::{flat_formula, nested_commutator, verify_sign_claim, SignVerdict};
use crate::error::{Error, Result};
use crate::exponential::{
    anticommutator, central_difference, polar_decompose, qexp_derivative, qexp_derivative_series,
    JetPair, PolynomialPath, DERIVATIVE_SERIES_TERMS,
};
use crate::literal::{parse, LiteralScalar};
use crate::permutation::Permutation;
use crate::quaternion::{Quaternion, Vector3};
use crate::scalar::{Mode, Rational, Scalar, Tolerance};
use crate::similarity::{
    class_count_bound, conjugate_by, dependence_coefficients, enumerate_class_partition, is_similar_with,
    multiproduct, product_swap_witness, quad_criterion, quad_re_difference_direct, quad_re_difference_formula,
    similarity_witness_with, triple_det, triple_re_difference,
};

/// Relative tolerance for the Float-mode norm identities.
pub const NORM_REL_TOL: f64 = 1e-12;
/// Closed-form vs series derivative agreement.
pub const DERIVATIVE_SERIES_TOL: f64 = 1e-9;
/// Allowed window for the finite-difference error ratio between
/// `h = 1e-3` and `h = 1e-4`; second order gives 100.
pub const FD_RATIO_WINDOW: (f64, f64) = (50.0, 200.0);
pub const ANTICOMMUTATION_TOL: f64 = 1e-10;
/// Paths are rescaled so that `|ψ(x)|` stays within this bound.
pub const JET_NORM_BOUND: f64 = 2.0;
/// Minimum `g = |im ψ|` for sampled jets.
pub const JET_MIN_G: f64 = 0.1;
/// Every `CONSTRUCTED_CADENCE`-th trial is a constructed special case.
pub const CONSTRUCTED_CADENCE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    NormIdentities,
    CyclicSimilarity,
    ClassCount,
    Lemma3,
    Lemma4,
    Case4Formula,
    MulticomSign,
    ExpDerivative,
    Anticommutation,
}

impl ClaimId {
    pub const ALL: [ClaimId; 9] = [
        ClaimId::NormIdentities,
        ClaimId::CyclicSimilarity,
        ClaimId::ClassCount,
        ClaimId::Lemma3,
        ClaimId::Lemma4,
        ClaimId::Case4Formula,
        ClaimId::MulticomSign,
        ClaimId::ExpDerivative,
        ClaimId::Anticommutation,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimId::NormIdentities => "norm-identities",
            ClaimId::CyclicSimilarity => "cyclic-similarity",
            ClaimId::ClassCount => "class-count",
            ClaimId::Lemma3 => "lemma3",
            ClaimId::Lemma4 => "lemma4",
            ClaimId::Case4Formula => "case4-formula",
            ClaimId::MulticomSign => "multicom-sign",
            ClaimId::ExpDerivative => "exp-derivative",
            ClaimId::Anticommutation => "anticommutation",
        }
    }

    /// Supported tuple sizes (polynomial degree for the exponential claims)
    /// and the default.
    pub fn n_range(&self) -> (usize, usize, usize) {
        match self {
            ClaimId::NormIdentities => (2, 2, 2),
            ClaimId::CyclicSimilarity => (2, 8, 4),
            ClaimId::ClassCount => (1, 8, 3),
            ClaimId::Lemma3 => (3, 3, 3),
            ClaimId::Lemma4 | ClaimId::Case4Formula => (4, 4, 4),
            ClaimId::MulticomSign => (2, 8, 3),
            ClaimId::ExpDerivative | ClaimId::Anticommutation => (1, 6, 3),
        }
    }

    pub fn supports(&self, mode: Mode) -> bool {
        match self {
            ClaimId::NormIdentities | ClaimId::CyclicSimilarity | ClaimId::ClassCount | ClaimId::Case4Formula => {
                true
            }
            ClaimId::Lemma3 | ClaimId::Lemma4 | ClaimId::MulticomSign => mode == Mode::Exact,
            ClaimId::ExpDerivative | ClaimId::Anticommutation => mode == Mode::Float,
        }
    }

    pub fn default_mode(&self) -> Mode {
        match self {
            ClaimId::ExpDerivative | ClaimId::Anticommutation => Mode::Float,
            _ => Mode::Exact,
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown claim `{s}`")))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessConfig {
    pub claim: ClaimId,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    pub n: usize,
    /// Exact mode draws numerators from `[-bound, bound]` and denominators
    /// from `[1, bound]`.
    pub bound: u32,
}

impl HarnessConfig {
    pub fn new(claim: ClaimId, trials: usize, seed: u64) -> Self {
        Self {
            claim,
            trials,
            seed,
            mode: claim.default_mode(),
            n: claim.n_range().2,
            bound: 9,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_bound(mut self, bound: u32) -> Self {
        self.bound = bound;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Usage("trial count must be at least 1".into()));
        }
        let (lo, hi, _) = self.claim.n_range();
        if self.n < lo || self.n > hi {
            return Err(Error::Usage(format!(
                "{} supports n in {lo}..={hi}, got {}",
                self.claim, self.n
            )));
        }
        if !self.claim.supports(self.mode) {
            return Err(Error::Usage(format!(
                "{} does not run in {} mode",
                self.claim, self.mode
            )));
        }
        if self.bound == 0 {
            return Err(Error::Usage("coefficient bound must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Confirmed,
    Refuted,
    Mixed,
    /// Every trial was degenerate; nothing was tested.
    Degenerate,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Confirmed | Verdict::Degenerate => 0,
            Verdict::Refuted | Verdict::Mixed => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Degenerate,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Degenerate => "degenerate",
        })
    }
}

/// Result of checking one claim instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub outcome: Outcome,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
    #[serde(skip)]
    pub tags: Vec<String>,
}

impl Check {
    fn new(ok: bool, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Self {
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            detail: String::new(),
            tags: Vec::new(),
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    fn tag(mut self, t: impl Into<String>) -> Self {
        self.tags.push(t.into());
        self
    }

    fn degenerate(mut self) -> Self {
        self.outcome = Outcome::Degenerate;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    /// Input literals, in the report's scalar mode.
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

/// One CSV row per trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    pub outcome: Outcome,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarnessReport {
    pub claim: ClaimId,
    pub mode: Mode,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub verdict: Verdict,
    pub passed: usize,
    pub failed: usize,
    pub degenerate: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Tallies of per-trial observations: class counts for partition
    /// claims, sign relations, span dimensions, error-ratio buckets.
    pub histogram: BTreeMap<String, u64>,
    #[serde(skip)]
    pub rows: Vec<TrialRow>,
}

impl HarnessReport {
    /// Newline-terminated JSON document.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).map_err(|e| Error::Usage(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Usage(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}

/// The random stream for one trial.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Scalars the harness can sample.
pub trait Sample: LiteralScalar {
    fn draw(rng: &mut ChaCha8Rng, bound: u32) -> Self;
    fn from_f64(x: f64) -> Self;
}

impl Sample for f64 {
    fn draw(rng: &mut ChaCha8Rng, _bound: u32) -> Self {
        rng.sample(StandardNormal)
    }

    fn from_f64(x: f64) -> Self {
        x
    }
}

impl Sample for Rational {
    fn draw(rng: &mut ChaCha8Rng, bound: u32) -> Self {
        let b = bound as i64;
        let n = rng.random_range(-b..=b);
        let d = rng.random_range(1..=b);
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).expect("finite float")
    }
}

fn draw_vec<S: Sample>(rng: &mut ChaCha8Rng, bound: u32) -> Vector3<S> {
    Vector3::new(S::draw(rng, bound), S::draw(rng, bound), S::draw(rng, bound))
}

fn draw_quat<S: Sample>(rng: &mut ChaCha8Rng, bound: u32) -> Quaternion<S> {
    Quaternion::from_parts(S::draw(rng, bound), draw_vec(rng, bound))
}

fn draw_tuple<S: Sample>(rng: &mut ChaCha8Rng, bound: u32, n: usize) -> Vec<Quaternion<S>> {
    (0..n).map(|_| draw_quat(rng, bound)).collect()
}

/// Tuple whose imaginary parts all lie in the plane spanned by two random
/// vectors.
pub fn draw_planar<S: Sample>(rng: &mut ChaCha8Rng, bound: u32, n: usize) -> Vec<Quaternion<S>> {
    let u: Vector3<S> = draw_vec(rng, bound);
    let w: Vector3<S> = draw_vec(rng, bound);
    (0..n)
        .map(|_| {
            let (a, b) = (S::draw(rng, bound), S::draw(rng, bound));
            Quaternion::from_parts(S::draw(rng, bound), u.scale(&a) + w.scale(&b))
        })
        .collect()
}

fn make_pure<S: Scalar>(qs: Vec<Quaternion<S>>) -> Vec<Quaternion<S>> {
    qs.into_iter().map(|q| Quaternion::pure(q.im)).collect()
}

/// Draws the inputs for one trial. The last entries of the returned vector
/// may be auxiliary parameters (a real shift `t`, an evaluation point `x`)
/// encoded as real quaternions.
pub fn sample<S: Sample>(config: &HarnessConfig, trial: usize) -> Vec<Quaternion<S>> {
    let mut rng = trial_rng(config.seed, trial);
    let rng = &mut rng;
    let (n, bound) = (config.n, config.bound);
    let constructed = trial % CONSTRUCTED_CADENCE == CONSTRUCTED_CADENCE - 1;
    let kind = trial / CONSTRUCTED_CADENCE;
    match config.claim {
        ClaimId::NormIdentities => {
            let p: Quaternion<S> = draw_quat(rng, bound);
            let q = if constructed { p.conj() } else { draw_quat(rng, bound) };
            vec![p, q]
        }
        ClaimId::CyclicSimilarity => {
            let mut qs = draw_tuple(rng, bound, n);
            if constructed {
                // a repeated factor and a real factor
                qs[n - 1] = qs[0].clone();
                qs[0] = Quaternion::real(S::draw(rng, bound));
            }
            qs.push(Quaternion::real(S::draw(rng, bound)));
            qs
        }
        ClaimId::ClassCount => {
            if constructed {
                draw_planar(rng, bound, n)
            } else {
                draw_tuple(rng, bound, n)
            }
        }
        ClaimId::Lemma3 => {
            let mut qs = draw_tuple(rng, bound, 3);
            if constructed {
                let (al, be) = (S::draw(rng, bound), S::draw(rng, bound));
                qs[2].im = qs[0].im.scale(&al) + qs[1].im.scale(&be);
            }
            qs
        }
        ClaimId::Lemma4 | ClaimId::Case4Formula => {
            if !constructed {
                return draw_tuple(rng, bound, 4);
            }
            match kind % 3 {
                0 => draw_planar(rng, bound, 4),
                1 => make_pure(draw_tuple(rng, bound, 4)),
                _ => {
                    let mut qs: Vec<Quaternion<S>> = draw_tuple(rng, bound, 4);
                    // choose d₀ so that a₀α − b₀β + c₀γ − d₀δ = 0
                    if let Ok(dc) = dependence_coefficients(&qs[0], &qs[1], &qs[2], &qs[3]) {
                        if dc.spans_space() && !dc.delta.is_zero() {
                            let rest = qs[0].re.clone() * dc.alpha.clone() - qs[1].re.clone() * dc.beta.clone()
                                + qs[2].re.clone() * dc.gamma.clone();
                            qs[3].re = rest.try_div(&dc.delta).expect("nonzero delta");
                        }
                    }
                    qs
                }
            }
        }
        ClaimId::MulticomSign => {
            let mut qs = draw_tuple(rng, bound, n);
            if constructed {
                let k = kind % n;
                qs[k] = Quaternion::real(S::draw(rng, bound));
            }
            qs
        }
        ClaimId::ExpDerivative | ClaimId::Anticommutation => sample_path(rng, n)
            .into_iter()
            .map(|q| q.map(|c| S::from_f64(*c)))
            .collect(),
    }
}

/// Coefficients of a random polynomial path followed by the evaluation
/// point `x`. The path is rescaled so `|ψ(x)| ≤ JET_NORM_BOUND`, and
/// resampled until `|im ψ(x)| ≥ JET_MIN_G`.
fn sample_path(rng: &mut ChaCha8Rng, degree: usize) -> Vec<Quaternion<f64>> {
    loop {
        let coeffs: Vec<Quaternion<f64>> = (0..=degree).map(|_| draw_quat(rng, 0)).collect();
        let x: f64 = rng.random_range(-1.0..1.0);
        let path = PolynomialPath::new(coeffs);
        let value = path.eval(x);
        let norm = value.norm_sq().sqrt();
        let scale = if norm > JET_NORM_BOUND { JET_NORM_BOUND / norm } else { 1.0 };
        let mut coeffs: Vec<_> = path.coeffs.iter().map(|c| c.scale(&scale)).collect();
        let path = PolynomialPath::new(coeffs.clone());
        if path.eval(x).im.norm_sq().sqrt() >= JET_MIN_G {
            coeffs.push(Quaternion::real(x));
            return coeffs;
        }
    }
}

fn fmt_tuple<S: Scalar>(qs: &[Quaternion<S>]) -> Vec<String> {
    qs.iter().map(ToString::to_string).collect()
}

/// Evaluates `claim` on one set of inputs as produced by [`sample`].
pub fn check<S: Scalar>(config: &HarnessConfig, inputs: &[Quaternion<S>]) -> Result<Check> {
    let tol = Tolerance::default();
    Ok(match config.claim {
        ClaimId::NormIdentities => check_norms(&inputs[0], &inputs[1]),
        ClaimId::CyclicSimilarity => {
            let (qs, t) = inputs.split_at(inputs.len() - 1);
            check_cyclic(qs, &t[0].re, &tol)?
        }
        ClaimId::ClassCount => check_classes(inputs)?,
        ClaimId::Lemma3 => check_lemma3(&inputs[0], &inputs[1], &inputs[2]),
        ClaimId::Lemma4 => check_lemma4(&inputs[0], &inputs[1], &inputs[2], &inputs[3])?,
        ClaimId::Case4Formula => check_case4(&inputs[0], &inputs[1], &inputs[2], &inputs[3], &tol),
        ClaimId::MulticomSign => check_sign(inputs)?,
        ClaimId::ExpDerivative | ClaimId::Anticommutation => {
            let floats: Vec<Quaternion<f64>> = inputs.iter().map(Quaternion::to_f64).collect();
            let (coeffs, x) = floats.split_at(floats.len() - 1);
            let path = PolynomialPath::new(coeffs.to_vec());
            if config.claim == ClaimId::ExpDerivative {
                check_exp_derivative(&path, x[0].re)
            } else {
                check_anticommutation(&path.jet(x[0].re))
            }
        }
    })
}

fn check_norms<S: Scalar>(p: &Quaternion<S>, q: &Quaternion<S>) -> Check {
    let (pq, qp) = (p.mul(q), q.mul(p));
    let one = Quaternion::one();
    if S::MODE == Mode::Exact {
        let (a, b, c) = (pq.norm_sq(), qp.norm_sq(), p.norm_sq() * q.norm_sq());
        let (d, e) = ((one.clone() - pq).norm_sq(), (one - qp).norm_sq());
        let ok = a == b && b == c && d == e;
        return Check::new(ok, format!("|pq|²={a}, |qp|²={b}, |1-pq|²={d}"), format!("|p|²|q|²={c}, |1-qp|²={e}"));
    }
    let f = |x: S| x.to_f64().sqrt();
    let (a, b, c) = (f(pq.norm_sq()), f(qp.norm_sq()), f(p.norm_sq()) * f(q.norm_sq()));
    let (d, e) = (f((one.clone() - pq).norm_sq()), f((one - qp).norm_sq()));
    let tol = Tolerance::new(NORM_REL_TOL, 0.0);
    let ok = tol.allows(a - c, c) && tol.allows(b - c, c) && tol.allows(d - e, c.max(1.0));
    Check::new(ok, format!("|pq|={a}, |qp|={b}, |1-pq|={d}"), format!("|p||q|={c}, |1-qp|={e}"))
}

fn check_cyclic<S: Scalar>(qs: &[Quaternion<S>], t: &S, tol: &Tolerance) -> Result<Check> {
    let n = qs.len();
    let base = multiproduct(qs, &Permutation::identity(n))?;
    let shift = Quaternion::real(t.clone());
    let base_shifted = (base.clone() - shift.clone()).norm_sq();
    for k in 1..n {
        let rotated = multiproduct(qs, &Permutation::rotation(n, k))?;
        if !is_similar_with(&base, &rotated, tol) {
            return Ok(Check::new(false, &base, &rotated).detail(format!("rotation {k} not similar")));
        }
        let rot_shifted = (rotated.clone() - shift.clone()).norm_sq();
        if !rot_shifted.near(&base_shifted, tol) {
            return Ok(Check::new(false, &base_shifted, &rot_shifted)
                .detail(format!("rotation {k} changes |P - t|²")));
        }
        let s = similarity_witness_with(&base, &rotated, tol)?;
        if !conjugate_by(&base, &s)?.approx_eq(&rotated, tol) {
            return Ok(Check::new(false, &base, &rotated).detail(format!("witness {s} fails for rotation {k}")));
        }
    }
    if n == 2 {
        let (a, b) = (&qs[0], &qs[1]);
        let s = product_swap_witness(a, b);
        let swapped = conjugate_by(&a.mul(b), &s)?;
        if !swapped.approx_eq(&b.mul(a), tol) {
            return Ok(Check::new(false, swapped, b.mul(a)).detail("s = b⁻¹ does not swap the product"));
        }
    }
    Ok(Check::new(true, &base, format!("{} rotations similar", n - 1)))
}

fn check_classes<S: Scalar>(qs: &[Quaternion<S>]) -> Result<Check> {
    let n = qs.len();
    let part = enumerate_class_partition(qs)?;
    let bound = class_count_bound(n);
    let count = part.class_count();
    // Each class must be closed under rotation of the permutation word.
    for class in &part.classes {
        for m in &class.members {
            for k in 1..n {
                let rotated = m.permutation.rotate_word(k);
                if !class.members.iter().any(|o| o.permutation == rotated) {
                    return Ok(Check::new(false, format!("{} in its class", m.permutation), format!("{rotated} elsewhere"))
                        .detail("cyclic rotation left its class")
                        .tag(format!("classes={count}")));
                }
            }
        }
    }
    let sizes = part
        .class_sizes()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("+");
    Ok(Check::new(count <= bound, format!("classes={count}"), format!("bound={bound}"))
        .detail(format!("sizes {sizes}"))
        .tag(format!("classes={count}")))
}

fn check_lemma3<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>, c: &Quaternion<S>) -> Check {
    let det = triple_det(a, b, c);
    let diff = triple_re_difference(a, b, c);
    let similar = is_similar_with(&a.mul(b).mul(c), &a.mul(c).mul(b), &Tolerance::default());
    let four = S::from_i64(4);
    let square_ok = diff.clone() * diff.clone() == four * det.clone() * det.clone();
    let equivalence = similar == det.is_zero();
    let two_det = S::from_i64(2) * det.clone();
    let sign = if det.is_zero() {
        "det=0"
    } else if diff == -two_det.clone() {
        "sign=-2det"
    } else if diff == two_det {
        "sign=+2det"
    } else {
        "sign=other"
    };
    Check::new(
        equivalence && square_ok,
        format!("re(abc)-re(acb)={diff}, similar={similar}"),
        format!("det={det}"),
    )
    .detail(sign)
    .tag(sign)
}

fn check_lemma4<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>, c: &Quaternion<S>, d: &Quaternion<S>) -> Result<Check> {
    let abcd = a.mul(b).mul(c).mul(d);
    let adcb = a.mul(d).mul(c).mul(b);
    let similar = is_similar_with(&abcd, &adcb, &Tolerance::default());
    let dc = dependence_coefficients(a, b, c, d)?;
    if !dc.spans_space() {
        let direct = quad_re_difference_direct(a, b, c, d);
        return Ok(Check::new(similar && direct.is_zero(), format!("re-difference={direct}"), "0")
            .detail(format!("span dim {}", 4 - dc.nullity))
            .tag("span<3"));
    }
    let crit = quad_criterion(a, b, c, d, &dc)?;
    let ok = crit.is_zero() == similar;
    Ok(Check::new(ok, format!("criterion={crit}"), format!("similar={similar}"))
        .detail(format!("α,β,γ,δ = {}, {}, {}, {}", dc.alpha, dc.beta, dc.gamma, dc.delta))
        .tag(if similar { "span=3 similar" } else { "span=3 not-similar" }))
}

fn check_case4<S: Scalar>(
    a: &Quaternion<S>,
    b: &Quaternion<S>,
    c: &Quaternion<S>,
    d: &Quaternion<S>,
    tol: &Tolerance,
) -> Check {
    let formula = quad_re_difference_formula(a, b, c, d);
    let direct = quad_re_difference_direct(a, b, c, d);
    let scale = [a, b, c, d].iter().map(|q| q.magnitude()).product::<f64>();
    let planar = triple_det(a, b, c).is_zero()
        && triple_det(a, b, d).is_zero()
        && triple_det(a, c, d).is_zero()
        && triple_det(b, c, d).is_zero();
    let mut check = Check::new(formula.near_scaled(&direct, scale, tol), &formula, &direct);
    if planar && S::MODE == Mode::Exact {
        check = check.tag(if direct.is_zero() { "planar direct=0" } else { "planar direct≠0" });
        if !direct.is_zero() {
            check.outcome = Outcome::Fail;
            check = check.detail("planar quadruple with nonzero re-difference");
        }
    }
    check
}

fn check_sign<S: Scalar>(qs: &[Quaternion<S>]) -> Result<Check> {
    let report = verify_sign_claim(qs)?;
    let id = Permutation::identity(qs.len());
    // the two routes must agree everywhere, independent of the verdict
    for sigma in Permutation::all(qs.len()) {
        if nested_commutator(qs, &sigma)? != flat_formula(qs, &sigma)? {
            return Ok(Check::new(false, "nested", "flat").detail(format!("routes disagree at {sigma}")));
        }
    }
    let check = match report.verdict {
        SignVerdict::Confirmed => Check::new(true, &report.reference, "all ±").tag("CONFIRMED"),
        SignVerdict::Degenerate => Check::new(true, &report.reference, "all zero").degenerate().tag("DEGENERATE"),
        SignVerdict::Refuted => {
            let (sigma, value) = &report.witnesses[0];
            Check::new(false, format!("C({id})={}", report.reference), format!("C({sigma})={value}"))
                .detail(format!("{} of {} permutations not ± reference", report.witnesses.len(), (1..=qs.len()).product::<usize>()))
                .tag("REFUTED")
        }
    };
    Ok(check)
}

/// Error of a central difference with step `h` against `exact`.
pub fn fd_error(path: &PolynomialPath, x: f64, h: f64, exact: &Quaternion<f64>) -> f64 {
    central_difference(|t| path.exp_at(t), x, h).distance(exact)
}

fn check_exp_derivative(path: &PolynomialPath, x: f64) -> Check {
    let jet = path.jet(x);
    let closed = qexp_derivative(&jet);
    let series = qexp_derivative_series(&jet, DERIVATIVE_SERIES_TERMS);
    let series_err = closed.distance(&series);
    let (e3, e4) = (fd_error(path, x, 1e-3, &closed), fd_error(path, x, 1e-4, &closed));
    let ratio = e3 / e4;
    let ok = series_err <= DERIVATIVE_SERIES_TOL && ratio >= FD_RATIO_WINDOW.0 && ratio <= FD_RATIO_WINDOW.1;
    let bucket = (ratio / 10.0).round() * 10.0;
    Check::new(ok, &closed, &series)
        .detail(format!("series err {series_err:.3e}, fd err {e3:.3e} / {e4:.3e} = {ratio:.2}"))
        .tag(format!("fd-ratio≈{bucket}"))
}

fn check_anticommutation(jet: &JetPair) -> Check {
    let Some(di) = jet.axis_derivative() else {
        return Check::new(true, "g=0", "").degenerate();
    };
    let i = polar_decompose(&jet.value).axis;
    let anti = anticommutator(&i, &di);
    let size = anti.norm_sq().sqrt();
    Check::new(size <= ANTICOMMUTATION_TOL, format!("|II'+I'I|={size:e}"), format!("≤{ANTICOMMUTATION_TOL:e}"))
}

fn run_typed<S: Sample>(config: &HarnessConfig) -> Result<HarnessReport> {
    let checked = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let inputs = sample::<S>(config, t);
            check(config, &inputs).map(|c| (t, inputs, c))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut histogram = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut rows = Vec::with_capacity(checked.len());
    let (mut passed, mut failed, mut degenerate) = (0, 0, 0);
    for (trial, inputs, c) in checked {
        match c.outcome {
            Outcome::Pass => passed += 1,
            Outcome::Fail => failed += 1,
            Outcome::Degenerate => degenerate += 1,
        }
        for tag in &c.tags {
            *histogram.entry(tag.clone()).or_insert(0) += 1;
        }
        let literals = fmt_tuple(&inputs);
        if c.outcome == Outcome::Fail {
            counterexamples.push(Counterexample {
                trial,
                inputs: literals.clone(),
                lhs: c.lhs.clone(),
                rhs: c.rhs.clone(),
                detail: c.detail.clone(),
            });
        }
        rows.push(TrialRow {
            trial,
            outcome: c.outcome,
            inputs: literals.join(";"),
            lhs: c.lhs,
            rhs: c.rhs,
            detail: c.detail,
        });
    }
    let verdict = match (passed, failed) {
        (0, 0) => Verdict::Degenerate,
        (_, 0) => Verdict::Confirmed,
        (0, _) => Verdict::Refuted,
        _ => Verdict::Mixed,
    };
    Ok(HarnessReport {
        claim: config.claim,
        mode: config.mode,
        n: config.n,
        seed: config.seed,
        trials: config.trials,
        verdict,
        passed,
        failed,
        degenerate,
        counterexamples,
        histogram,
        rows,
    })
}

pub fn run_harness(config: &HarnessConfig) -> Result<HarnessReport> {
    config.validate()?;
    match config.mode {
        Mode::Float => run_typed::<f64>(config),
        Mode::Exact => run_typed::<Rational>(config),
    }
}

/// Re-evaluates a counterexample from its serialized inputs.
pub fn replay(report: &HarnessReport, cex: &Counterexample) -> Result<Check> {
    let config = HarnessConfig {
        claim: report.claim,
        trials: 1,
        seed: report.seed,
        mode: report.mode,
        n: report.n,
        bound: 9,
    };
    match report.mode {
        Mode::Float => {
            let inputs = cex.inputs.iter().map(|s| parse::<f64>(s)).collect::<Result<Vec<_>>>()?;
            check(&config, &inputs)
        }
        Mode::Exact => {
            let inputs = cex.inputs.iter().map(|s| parse::<Rational>(s)).collect::<Result<Vec<_>>>()?;
            check(&config, &inputs)
        }
    }
}
