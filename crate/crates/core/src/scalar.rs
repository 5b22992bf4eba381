//! Scalar backends.
//!
//! Every algebraic routine in the crate is generic over [`Scalar`]. Two
//! backends exist: `f64` (IEEE-754 double) and [`Rational`], an
//! arbitrary-precision rational kept in lowest terms with a positive
//! denominator. Mixing the two is impossible at the type level; the dynamic
//! [`crate::AnyQuaternion`] wrapper reports it as [`Error::MixedModes`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Exact,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Float => "float",
            Mode::Exact => "exact",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" => Ok(Mode::Float),
            "exact" => Ok(Mode::Exact),
            other => Err(Error::Usage(format!("unknown mode `{other}`"))),
        }
    }
}

/// Float-mode comparison tolerance.
///
/// Two values `a`, `b` are equal when
/// `|a - b| <= max(abs, rel * max(|a|, |b|))`. Exact mode ignores it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub const fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    /// Tolerance for values whose natural scale is `scale` rather than their
    /// own magnitude.
    pub fn allows(&self, diff: f64, scale: f64) -> bool {
        diff.abs() <= self.abs.max(self.rel * scale.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(1e-9, 1e-12)
    }
}

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;

    /// Division; fails on an exactly zero divisor.
    fn try_div(&self, rhs: &Self) -> Result<Self>;

    /// Square root. Exact mode only succeeds on perfect squares.
    fn try_sqrt(&self) -> Result<Self>;

    /// Equality under `tol` in Float mode, exact equality otherwise.
    fn near(&self, other: &Self, tol: &Tolerance) -> bool;

    /// Like [`Scalar::near`] but the relative part scales with `scale`
    /// instead of the operands.
    fn near_scaled(&self, other: &Self, scale: f64, tol: &Tolerance) -> bool;

    fn is_near_zero(&self, tol: &Tolerance) -> bool {
        self.near(&Self::zero(), tol)
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        if *rhs == 0.0 {
            return Err(Error::DivisionByZero("scalar division"));
        }
        Ok(self / rhs)
    }

    fn try_sqrt(&self) -> Result<Self> {
        if *self < 0.0 {
            return Err(Error::Precondition(format!("square root of {self}")));
        }
        Ok(self.sqrt())
    }

    fn near(&self, other: &Self, tol: &Tolerance) -> bool {
        tol.allows(self - other, self.abs().max(other.abs()))
    }

    fn near_scaled(&self, other: &Self, scale: f64, tol: &Tolerance) -> bool {
        tol.allows(self - other, scale)
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            return Err(Error::DivisionByZero("scalar division"));
        }
        Ok(self / rhs)
    }

    fn try_sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Precondition(format!("square root of {self}")));
        }
        let (n, d) = (self.numer(), self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Ok(Rational::new(rn, rd))
        } else {
            Err(Error::ModeUnsupported {
                op: "square root of a non-square rational",
                mode: Mode::Exact,
            })
        }
    }

    fn near(&self, other: &Self, _tol: &Tolerance) -> bool {
        self == other
    }

    fn near_scaled(&self, other: &Self, _scale: f64, _tol: &Tolerance) -> bool {
        self == other
    }
}

/// Builds a rational from a numerator/denominator pair.
///
/// Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}
