//! Quaternion commutation toolkit.
//!
//! Products, commutators, similarity classes of multiproducts and the
//! derivative of the quaternionic exponential, over `f64` or exact
//! rationals, together with a seeded harness that checks algebraic claims
//! and reports counterexamples.

pub mod cli;
pub mod commutator;
pub mod dynamic;
pub mod error;
pub mod exponential;
pub mod harness;
pub mod literal;
pub mod permutation;
pub mod quaternion;
pub mod report;
pub mod scalar;
pub mod similarity;

pub use commutator::{
    commutator, commutator_by_cross, flat_formula, nested_commutator, verify_sign_claim, SignClaimReport,
    SignVerdict,
};
pub use dynamic::{AnyQuaternion, AnyScalar, AnyTuple};
pub use error::{Error, Result};
pub use exponential::{
    polar_decompose, qexp, qexp_derivative, qexp_derivative_series, qexp_series, JetPair, PolarForm,
};
pub use harness::{run_harness, ClaimId, HarnessConfig, HarnessReport, Verdict};
pub use literal::{parse, parse_quaternion};
pub use permutation::Permutation;
pub use quaternion::{Quaternion, Vector3};
pub use scalar::{ratio, Mode, Rational, Scalar, Tolerance};
pub use similarity::{
    dependence_coefficients, enumerate_class_partition, is_similar, multiproduct, quad_criterion,
    quad_re_difference_formula, similarity_witness, triple_re_difference, triple_similar_criterion, ClassPartition,
    DependenceCoefficients, SimilarityKey,
};
