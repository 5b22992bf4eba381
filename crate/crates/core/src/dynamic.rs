//! Runtime-tagged quaternions for callers that pick the scalar mode at run
//! time (the literal parser, the command line, the Python bindings).

use std::fmt;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::scalar::{Mode, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum AnyScalar {
    Float(f64),
    Exact(Rational),
}

impl AnyScalar {
    pub fn mode(&self) -> Mode {
        match self {
            AnyScalar::Float(_) => Mode::Float,
            AnyScalar::Exact(_) => Mode::Exact,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            AnyScalar::Float(x) => *x,
            AnyScalar::Exact(x) => x.to_f64(),
        }
    }
}

impl fmt::Display for AnyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyScalar::Float(x) => write!(f, "{x}"),
            AnyScalar::Exact(x) => write!(f, "{x}"),
        }
    }
}

// Exact values are heap-backed anyway; boxing them would only add a hop.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum AnyQuaternion {
    Float(Quaternion<f64>),
    Exact(Quaternion<Rational>),
}

impl From<Quaternion<f64>> for AnyQuaternion {
    fn from(q: Quaternion<f64>) -> Self {
        AnyQuaternion::Float(q)
    }
}

impl From<Quaternion<Rational>> for AnyQuaternion {
    fn from(q: Quaternion<Rational>) -> Self {
        AnyQuaternion::Exact(q)
    }
}

macro_rules! unary {
    ($self:expr, $q:ident => $body:expr) => {
        match $self {
            AnyQuaternion::Float($q) => AnyQuaternion::Float($body),
            AnyQuaternion::Exact($q) => AnyQuaternion::Exact($body),
        }
    };
}

impl AnyQuaternion {
    pub fn mode(&self) -> Mode {
        match self {
            AnyQuaternion::Float(_) => Mode::Float,
            AnyQuaternion::Exact(_) => Mode::Exact,
        }
    }

    pub fn as_float(&self) -> Result<&Quaternion<f64>> {
        match self {
            AnyQuaternion::Float(q) => Ok(q),
            AnyQuaternion::Exact(_) => Err(Error::MixedModes {
                left: Mode::Exact,
                right: Mode::Float,
            }),
        }
    }

    pub fn as_exact(&self) -> Result<&Quaternion<Rational>> {
        match self {
            AnyQuaternion::Exact(q) => Ok(q),
            AnyQuaternion::Float(_) => Err(Error::MixedModes {
                left: Mode::Float,
                right: Mode::Exact,
            }),
        }
    }

    /// Requires Float mode, reporting `op` as unsupported otherwise.
    pub fn require_float(&self, op: &'static str) -> Result<&Quaternion<f64>> {
        match self {
            AnyQuaternion::Float(q) => Ok(q),
            AnyQuaternion::Exact(_) => Err(Error::ModeUnsupported {
                op,
                mode: Mode::Exact,
            }),
        }
    }

    pub fn to_float(&self) -> Quaternion<f64> {
        match self {
            AnyQuaternion::Float(q) => q.clone(),
            AnyQuaternion::Exact(q) => q.to_f64(),
        }
    }

    pub fn components(&self) -> [AnyScalar; 4] {
        match self {
            AnyQuaternion::Float(q) => q.components().map(AnyScalar::Float),
            AnyQuaternion::Exact(q) => q.components().map(AnyScalar::Exact),
        }
    }

    pub fn re(&self) -> AnyScalar {
        match self {
            AnyQuaternion::Float(q) => AnyScalar::Float(q.re),
            AnyQuaternion::Exact(q) => AnyScalar::Exact(q.re.clone()),
        }
    }

    pub fn conj(&self) -> Self {
        unary!(self, q => q.conj())
    }

    pub fn neg(&self) -> Self {
        unary!(self, q => -q.clone())
    }

    pub fn norm_sq(&self) -> AnyScalar {
        match self {
            AnyQuaternion::Float(q) => AnyScalar::Float(q.norm_sq()),
            AnyQuaternion::Exact(q) => AnyScalar::Exact(q.norm_sq()),
        }
    }

    pub fn norm(&self) -> Result<AnyScalar> {
        Ok(match self {
            AnyQuaternion::Float(q) => AnyScalar::Float(q.norm()?),
            AnyQuaternion::Exact(q) => AnyScalar::Exact(q.norm()?),
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(match self {
            AnyQuaternion::Float(q) => AnyQuaternion::Float(q.inverse()?),
            AnyQuaternion::Exact(q) => AnyQuaternion::Exact(q.inverse()?),
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AnyQuaternion::Float(q) => q.is_zero(),
            AnyQuaternion::Exact(q) => q.is_zero(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.mul(b), |a, b| a.mul(b))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone(), |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone(), |a, b| a.clone() - b.clone())
    }

    fn zip_with(
        &self,
        other: &Self,
        float: impl Fn(&Quaternion<f64>, &Quaternion<f64>) -> Quaternion<f64>,
        exact: impl Fn(&Quaternion<Rational>, &Quaternion<Rational>) -> Quaternion<Rational>,
    ) -> Result<Self> {
        match (self, other) {
            (AnyQuaternion::Float(a), AnyQuaternion::Float(b)) => Ok(AnyQuaternion::Float(float(a, b))),
            (AnyQuaternion::Exact(a), AnyQuaternion::Exact(b)) => Ok(AnyQuaternion::Exact(exact(a, b))),
            (a, b) => Err(Error::MixedModes {
                left: a.mode(),
                right: b.mode(),
            }),
        }
    }
}

impl fmt::Display for AnyQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyQuaternion::Float(q) => q.fmt(f),
            AnyQuaternion::Exact(q) => q.fmt(f),
        }
    }
}

/// A tuple of quaternions sharing one scalar mode.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyTuple {
    Float(Vec<Quaternion<f64>>),
    Exact(Vec<Quaternion<Rational>>),
}

impl AnyTuple {
    pub fn new(items: Vec<AnyQuaternion>) -> Result<Self> {
        let Some(first) = items.first() else {
            return Err(Error::Arity {
                op: "tuple",
                min: 1,
                got: 0,
            });
        };
        let mode = first.mode();
        let mut floats = Vec::new();
        let mut exacts = Vec::new();
        for q in items {
            match q {
                AnyQuaternion::Float(q) if mode == Mode::Float => floats.push(q),
                AnyQuaternion::Exact(q) if mode == Mode::Exact => exacts.push(q),
                other => {
                    return Err(Error::MixedModes {
                        left: mode,
                        right: other.mode(),
                    })
                }
            }
        }
        Ok(match mode {
            Mode::Float => AnyTuple::Float(floats),
            Mode::Exact => AnyTuple::Exact(exacts),
        })
    }

    pub fn mode(&self) -> Mode {
        match self {
            AnyTuple::Float(_) => Mode::Float,
            AnyTuple::Exact(_) => Mode::Exact,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyTuple::Float(v) => v.len(),
            AnyTuple::Exact(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
