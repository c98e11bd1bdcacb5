//! Coefficient rings.
//!
//! Every series and realization is generic over a [`Scalar`]: a (possibly
//! non-commutative) division ring with a conjugation and a size functional.
//! Implemented for `f64`, [`Rational`] (exact), `Complex64` and
//! [`Quaternion`](crate::fueter::Quaternion).

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers with arbitrary precision.
pub type Rational = BigRational;

/// Value type of squared sizes and weighted norms: `f64` for floating
/// rings, [`Rational`] for the exact ring.
pub trait Magnitude: Clone + Debug + PartialOrd + Add<Output = Self> + Mul<Output = Self> + Send + Sync {
    fn zero() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
}

impl Magnitude for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Magnitude for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

/// Coefficient ring contract.
///
/// Multiplication need not commute. `from_rational` embeds the rationals
/// into the center of the ring, so rational scalings commute with
/// everything.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Magnitude: Magnitude;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    fn conj(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// `|x|²`, exact where the ring is exact.
    fn norm_sqr(&self) -> Self::Magnitude;
    /// `|x|` as a float; used for pivoting and tolerances.
    fn abs(&self) -> f64;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    ToPrimitive::to_f64(r).unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Scalar for f64 {
    type Magnitude = f64;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / *self)
    }
    fn norm_sqr(&self) -> f64 {
        self * self
    }
    fn abs(&self) -> f64 {
        f64::abs(*self)
    }
}

impl Scalar for Rational {
    type Magnitude = Rational;

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn norm_sqr(&self) -> Rational {
        self * self
    }
    fn abs(&self) -> f64 {
        rational_to_f64(&Signed::abs(self))
    }
}

impl Scalar for Complex64 {
    type Magnitude = f64;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        (!Scalar::is_zero(self)).then(|| Complex64::inv(self))
    }
    fn norm_sqr(&self) -> f64 {
        Complex64::norm_sqr(self)
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
}

/// Exact rational from a ratio of small integers.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
