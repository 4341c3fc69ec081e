use alloc::vec;
use alloc::vec::Vec;
use core::ops::Neg;

use crate::combinat::binomial;
use crate::scalar::Scalar;

/// Univariate polynomial in `u`, coefficients in ascending degree.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has no
/// coefficients and `degree()` is `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `u`.
    pub fn var() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    /// `u - root`.
    pub fn linear(root: S) -> Self {
        Self::new(vec![-root, S::one()])
    }

    pub fn monomial(c: S, deg: usize) -> Self {
        let mut coeffs = vec![S::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    /// `prod (u - r)` over the given roots.
    pub fn from_roots(roots: &[S]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| acc.mul(&Self::linear(r.clone())))
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `u^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, u: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * u.clone() + c.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(S::one() / self.leading()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `p(u - c)`, i.e. the action of `tau^c` for integer `c`.
    pub fn shift(&self, c: &S) -> Self {
        self.compose_affine(&S::one(), &(-c.clone()))
    }

    /// `p(a u + b)`.
    pub fn compose_affine(&self, a: &S, b: &S) -> Self {
        let lin = Self::new(vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(&lin).add(&Self::constant(c.clone())))
    }

    /// Integer shift `p(u - k)` via the binomial expansion.
    pub fn shift_int(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let d = self.coeffs.len();
        let mut out = vec![S::zero(); d];
        // (u - k)^m = sum_j binom(m, j) u^j (-k)^(m - j)
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut pw = S::one();
            let negk = S::from_i64(-k);
            for j in (0..=m).rev() {
                let term = c.clone() * S::from_i64(binomial(m as i64, j as i64)) * pw.clone();
                out[j] = out[j].clone() + term;
                pw = pw * negk.clone();
            }
        }
        Self::new(out)
    }

    /// Euclidean division, `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![S::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dj.clone();
                }
            }
            rem[k + dd] = S::zero();
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (exact mode).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * S::from_i64(k as i64)).collect())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Coefficientwise closeness: `max |a_k - b_k| <= eps * max(1, max |b_k|)`.
    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        if S::EXACT {
            return self == other;
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let scale = other.coeffs.iter().map(|c| c.abs()).fold(1.0, f64::max);
        (0..n).all(|k| (self.coeff(k) - other.coeff(k)).abs() <= eps * scale)
    }
}

impl<S: Scalar> Neg for Poly<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&-S::one())
    }
}

/// Elementary symmetric functions `(a_1..a_n)` of `b`, normalized by
/// `prod (u - b_s) = u^n + sum (-1)^j a_j u^(n-j)`.
pub fn elementary_symmetric<S: Scalar>(b: &[S]) -> Vec<S> {
    let mut e = vec![S::one()];
    for x in b {
        let mut next = e.clone();
        next.push(S::zero());
        for j in 1..next.len() {
            next[j] = next[j].clone() + e[j - 1].clone() * x.clone();
        }
        e = next;
    }
    e.into_iter().skip(1).collect()
}
