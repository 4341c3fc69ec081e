use alloc::vec::Vec;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rational function `num / den` in `u`.
///
/// In exact mode the pair is kept reduced with a monic denominator.
#[derive(Clone, Debug)]
pub struct RatFun<S> {
    num: Poly<S>,
    den: Poly<S>,
}

impl<S: Scalar> RatFun<S> {
    pub fn new(num: Poly<S>, den: Poly<S>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut r = RatFun { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: Poly<S>) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(c: S) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        if S::EXACT {
            let g = self.num.gcd(&self.den);
            if g.degree() != Some(0) {
                self.num = self.num.div_rem(&g).0;
                self.den = self.den.div_rem(&g).0;
            }
            let lead = self.den.leading();
            if !lead.is_one() {
                let inv = S::one() / lead;
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    pub fn num(&self) -> &Poly<S> {
        &self.num
    }

    pub fn den(&self) -> &Poly<S> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, u: &S) -> Result<S> {
        let d = self.den.eval(u);
        if d.is_zero() {
            return Err(Error::Pole(alloc::format!("{u:?}")));
        }
        Ok(self.num.eval(u) / d)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add(&other.num), self.den.clone());
        }
        Self::new(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFun { num: self.num.scale(&-S::one()), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by the zero rational function");
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    /// `r(u - k)`.
    pub fn shift_int(&self, k: i64) -> Self {
        Self::new(self.num.shift_int(k), self.den.shift_int(k))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> RatFun<T> {
        RatFun::new(self.num.map(f), self.den.map(f))
    }

    /// Deterministic sample points `101, 103, 105, ...` avoiding poles of `self`
    /// and `other`, `count` of them.
    fn sample_points(&self, other: &Self, count: usize) -> Vec<S> {
        let mut pts = Vec::with_capacity(count);
        let mut u = 101i64;
        while pts.len() < count {
            let x = S::from_i64(u);
            if !self.den.eval(&x).is_zero() && !other.den.eval(&x).is_zero() {
                pts.push(x);
            }
            u += 2;
        }
        pts
    }

    /// Exact mode: cross-multiplication. Float mode: relative agreement at
    /// `deg + 1` sample points.
    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        if S::EXACT {
            return self.num.mul(&other.den) == other.num.mul(&self.den);
        }
        let deg = [&self.num, &self.den, &other.num, &other.den]
            .iter()
            .map(|p| p.degree().unwrap_or(0))
            .max()
            .unwrap_or(0);
        self.sample_points(other, 2 * deg + 1).iter().all(|u| {
            let a = self.num.eval(u) / self.den.eval(u);
            let b = other.num.eval(u) / other.den.eval(u);
            a.approx_eq(&b, eps)
        })
    }

    /// Float mode zero test at sample points, exact test otherwise.
    pub fn is_negligible(&self, eps: f64) -> bool {
        if S::EXACT {
            return self.is_zero();
        }
        let scale = self.den.coeffs().iter().map(|c| c.abs()).fold(0.0, f64::max);
        self.num.coeffs().iter().all(|c| c.abs() <= eps * scale.max(1.0))
    }
}

impl<S: Scalar> PartialEq for RatFun<S> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}
