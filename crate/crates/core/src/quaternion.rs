use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};

/// A vector in 3-space; the imaginary part of a quaternion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector3<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Vector3<S> {
    pub fn new(x: S, y: S, z: S) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero())
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone() + self.z.clone() * o.z.clone()
    }

    pub fn cross(&self, o: &Self) -> Self {
        Self::new(
            self.y.clone() * o.z.clone() - self.z.clone() * o.y.clone(),
            self.z.clone() * o.x.clone() - self.x.clone() * o.z.clone(),
            self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone(),
        )
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s.clone(),
        )
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn components(&self) -> [S; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn from_components([x, y, z]: [S; 3]) -> Self {
        Self::new(x, y, z)
    }

    /// Scalar triple product `(a × b) · c`.
    pub fn triple(a: &Self, b: &Self, c: &Self) -> S {
        a.cross(b).dot(c)
    }
}

impl<S: Scalar> Add for Vector3<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<S: Scalar> Sub for Vector3<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<S: Scalar> Neg for Vector3<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// `re + i·im.x + j·im.y + k·im.z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quaternion<S> {
    pub re: S,
    pub im: Vector3<S>,
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(re: S, x: S, y: S, z: S) -> Self {
        Self {
            re,
            im: Vector3::new(x, y, z),
        }
    }

    pub fn from_parts(re: S, im: Vector3<S>) -> Self {
        Self { re, im }
    }

    pub fn real(re: S) -> Self {
        Self::from_parts(re, Vector3::zero())
    }

    pub fn pure(im: Vector3<S>) -> Self {
        Self::from_parts(S::zero(), im)
    }

    pub fn zero() -> Self {
        Self::real(S::zero())
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn i() -> Self {
        Self::new(S::zero(), S::one(), S::zero(), S::zero())
    }

    pub fn j() -> Self {
        Self::new(S::zero(), S::zero(), S::one(), S::zero())
    }

    pub fn k() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::one())
    }

    pub fn components(&self) -> [S; 4] {
        [
            self.re.clone(),
            self.im.x.clone(),
            self.im.y.clone(),
            self.im.z.clone(),
        ]
    }

    pub fn from_components([w, x, y, z]: [S; 4]) -> Self {
        Self::new(w, x, y, z)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `(a₀b₀ − a·b) + h·(a₀b + b₀a + a×b)`.
    pub fn mul(&self, b: &Self) -> Self {
        let a = self;
        let re = a.re.clone() * b.re.clone() - a.im.dot(&b.im);
        let im = b.im.scale(&a.re) + a.im.scale(&b.re) + a.im.cross(&b.im);
        Self::from_parts(re, im)
    }

    pub fn conj(&self) -> Self {
        Self::from_parts(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sq(&self) -> S {
        self.re.clone() * self.re.clone() + self.im.norm_sq()
    }

    /// `|q|`. In Exact mode this only succeeds on perfect squares.
    pub fn norm(&self) -> Result<S> {
        self.norm_sq().try_sqrt()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero("quaternion inverse"));
        }
        let c = self.conj();
        Ok(Self::from_components(
            c.components().map(|x| x.try_div(&n).expect("nonzero norm")),
        ))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_parts(self.re.clone() * s.clone(), self.im.scale(s))
    }

    /// Largest absolute component, as `f64`; the magnitude used for
    /// relative Float-mode comparisons.
    pub fn magnitude(&self) -> f64 {
        self.components()
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        let scale = self.magnitude().max(other.magnitude());
        self.components()
            .iter()
            .zip(other.components().iter())
            .all(|(a, b)| a.near_scaled(b, scale, tol))
    }

    /// Euclidean distance `|self − other|` as `f64`.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.clone() - other.clone()).norm_sq().to_f64().sqrt()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Quaternion<T> {
        Quaternion::from_components(self.components().each_ref().map(f))
    }

    pub fn to_f64(&self) -> Quaternion<f64> {
        self.map(|c| c.to_f64())
    }
}

impl<S: Scalar> Add for Quaternion<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::from_parts(self.re + o.re, self.im + o.im)
    }
}

impl<S: Scalar> Sub for Quaternion<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::from_parts(self.re - o.re, self.im - o.im)
    }
}

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_parts(-self.re, -self.im)
    }
}

impl<S: Scalar> Mul for Quaternion<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Quaternion::mul(&self, &o)
    }
}

impl<'a, S: Scalar> Mul<&'a Quaternion<S>> for &'a Quaternion<S> {
    type Output = Quaternion<S>;
    fn mul(self, o: &'a Quaternion<S>) -> Quaternion<S> {
        Quaternion::mul(self, o)
    }
}

/// Canonical literal form, e.g. `1+2i-3j+1/2k`. Parses back to the same
/// value with [`crate::literal::parse`].
impl<S: Scalar> fmt::Display for Quaternion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, unit) in self.components().iter().zip(["", "i", "j", "k"]) {
            if c.is_zero() {
                continue;
            }
            let negative = *c < S::zero();
            let mag = c.abs_val();
            if negative {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            if unit.is_empty() || mag != S::one() {
                write!(f, "{mag}")?;
            }
            f.write_str(unit)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
