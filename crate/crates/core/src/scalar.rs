//! The two arithmetic modes of the crate: exact rationals and complex floats.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Complex double precision number.
pub type Complex = Complex64;

/// Default comparison tolerance for float mode.
pub const DEFAULT_EPS: f64 = 1e-10;

/// A field element in one of the two arithmetic modes.
///
/// Exact mode never rounds. Float mode compares through an explicit tolerance
/// (`approx_eq`); `is_zero` is always a literal test so that polynomial
/// trimming behaves identically in both modes.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` for exact rational arithmetic.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Nearest representable value; exact mode converts the double exactly.
    fn from_f64(v: f64) -> Self;
    fn is_zero(&self) -> bool;
    /// Modulus as a double, used for pivoting and residual norms.
    fn abs(&self) -> f64;
    fn to_complex(&self) -> Complex;

    /// The `k`-th deterministic sample point. Float mode spreads points over a
    /// circle of the given radius by golden-angle steps; exact mode uses the
    /// rationals `k + 1/7`, which miss the integer and half-integer poles
    /// produced by integer data.
    fn sample_point(k: usize, radius: f64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Integer power, negative exponents allowed for nonzero `self`.
    fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Equality in exact mode, `|a - b| <= eps * max(1, |a|, |b|)` in float mode.
    fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            let scale = 1f64.max(self.abs()).max(other.abs());
            (self.clone() - other.clone()).abs() <= eps * scale
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).unwrap_or_else(Zero::zero)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> f64 {
        rational_to_f64(&Signed::abs(self))
    }
    fn to_complex(&self) -> Complex {
        Complex::new(rational_to_f64(self), 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn sample_point(k: usize, _radius: f64) -> Self {
        Rational::new(BigInt::from(7 * k as i64 + 1), BigInt::from(7))
    }
}

impl Scalar for Complex {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(v as f64, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex::new(rational_to_f64(r), 0.0)
    }
    fn from_f64(v: f64) -> Self {
        Complex::new(v, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> Complex {
        *self
    }
    fn sample_point(k: usize, radius: f64) -> Self {
        const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;
        Complex::from_polar(radius, 0.3 + GOLDEN_ANGLE * k as f64)
    }
}

/// Nearest double to a rational, robust to numerators beyond `f64` range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // scale both parts down to keep the quotient finite
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// Convenience constructor for `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// Convenience constructor for an integer rational.
pub fn int(v: i64) -> Rational {
    Rational::from_i64(v)
}
