//! Pairwise and right-nested commutators.
//!
//! Two independent routes are kept side by side: [`nested_commutator`]
//! multiplies quaternions, [`flat_formula`] only uses iterated cross
//! products. They must agree exactly for every permutation.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::quaternion::{Quaternion, Vector3};
use crate::scalar::{Mode, Scalar};

/// `ab − ba`, by multiplication.
pub fn commutator<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    a.mul(b) - b.mul(a)
}

/// `2 h·(a × b)`, the cross-product route to the same value.
pub fn commutator_by_cross<S: Scalar>(a: &Quaternion<S>, b: &Quaternion<S>) -> Quaternion<S> {
    Quaternion::pure(a.im.cross(&b.im).scale(&S::from_i64(2)))
}

fn check_arity<S>(qs: &[Quaternion<S>], sigma: &Permutation, op: &'static str) -> Result<()> {
    if qs.len() < 2 {
        return Err(Error::Arity {
            op,
            min: 2,
            got: qs.len(),
        });
    }
    if sigma.len() != qs.len() {
        return Err(Error::InvalidPermutation(format!(
            "permutation of size {} applied to {} operands",
            sigma.len(),
            qs.len()
        )));
    }
    Ok(())
}

/// `[q_σ(1), [q_σ(2), …, [q_σ(n−1), q_σ(n)]…]]`.
pub fn nested_commutator<S: Scalar>(
    qs: &[Quaternion<S>],
    sigma: &Permutation,
) -> Result<Quaternion<S>> {
    check_arity(qs, sigma, "nested_commutator")?;
    let ordered = sigma.arrange(qs)?;
    let (last, rest) = ordered.split_last().expect("n >= 2");
    Ok(rest
        .iter()
        .rev()
        .fold((*last).clone(), |acc, q| commutator(q, &acc)))
}

/// `2^(n−1) h·(v_σ(1) × (v_σ(2) × (⋯ × v_σ(n))))`.
///
/// The permutation reorders the operands; no separate sign factor is applied.
pub fn flat_formula<S: Scalar>(qs: &[Quaternion<S>], sigma: &Permutation) -> Result<Quaternion<S>> {
    check_arity(qs, sigma, "flat_formula")?;
    let ordered = sigma.arrange(qs)?;
    let (last, rest) = ordered.split_last().expect("n >= 2");
    let chain: Vector3<S> = rest
        .iter()
        .rev()
        .fold(last.im.clone(), |acc, q| q.im.cross(&acc));
    let power = (1..qs.len()).fold(S::one(), |p, _| p * S::from_i64(2));
    Ok(Quaternion::pure(chain.scale(&power)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SignVerdict {
    Confirmed,
    Refuted,
    Degenerate,
}

/// Outcome of checking whether all multicommutators of a tuple agree up to
/// sign with the identity-order one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound = "")]
pub struct SignClaimReport<S: Scalar> {
    pub verdict: SignVerdict,
    #[serde(serialize_with = "crate::report::serialize_display")]
    pub reference: Quaternion<S>,
    /// Permutations whose multicommutator is neither `reference` nor its
    /// negation, in lexicographic order.
    #[serde(serialize_with = "crate::report::serialize_pairs")]
    pub witnesses: Vec<(Permutation, Quaternion<S>)>,
}

/// Evaluates every right-nested multicommutator of `qs` and tests that each
/// equals `±` the identity-order value. Exact mode only.
pub fn verify_sign_claim<S: Scalar>(qs: &[Quaternion<S>]) -> Result<SignClaimReport<S>> {
    if S::MODE != Mode::Exact {
        return Err(Error::ModeUnsupported {
            op: "verify_sign_claim",
            mode: S::MODE,
        });
    }
    if qs.len() < 2 {
        return Err(Error::Arity {
            op: "verify_sign_claim",
            min: 2,
            got: qs.len(),
        });
    }
    let perms: Vec<Permutation> = Permutation::all(qs.len()).collect();
    let values = perms
        .par_iter()
        .map(|p| nested_commutator(qs, p))
        .collect::<Result<Vec<_>>>()?;

    let reference = values[0].clone();
    let negated = -reference.clone();
    let witnesses: Vec<_> = perms
        .into_iter()
        .zip(values.iter())
        .filter(|(_, v)| **v != reference && **v != negated)
        .map(|(p, v)| (p, v.clone()))
        .collect();

    let verdict = if values.iter().all(Quaternion::is_zero) {
        SignVerdict::Degenerate
    } else if witnesses.is_empty() {
        SignVerdict::Confirmed
    } else {
        SignVerdict::Refuted
    };
    Ok(SignClaimReport {
        verdict,
        reference,
        witnesses,
    })
}
