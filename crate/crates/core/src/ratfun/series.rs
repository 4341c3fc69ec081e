use alloc::vec;
use alloc::vec::Vec;

use super::poly::Poly;
use super::rational_function::RatFun;
use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Truncated expansion `c_0 + c_1 u^-1 + ... + c_S u^-S` at `u = infinity`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesUinv<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> SeriesUinv<S> {
    /// Series of the given order with all coefficients zero.
    pub fn zero(order: usize) -> Self {
        SeriesUinv { coeffs: vec![S::zero(); order + 1] }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least the constant term");
        SeriesUinv { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `u^-s`.
    pub fn coeff(&self, s: usize) -> &S {
        &self.coeffs[s]
    }

    /// Long-division expansion of `r`, truncated at `u^-order`.
    pub fn from_ratfun(r: &RatFun<S>, order: usize) -> Result<Self> {
        expand_quotient(r.num(), r.den(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        SeriesUinv { coeffs: (0..=order).map(|s| self.coeffs[s].clone() + other.coeffs[s].clone()).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        SeriesUinv { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|s| (0..=s).fold(S::zero(), |acc, i| acc + self.coeffs[i].clone() * other.coeffs[s - i].clone()))
            .collect();
        SeriesUinv { coeffs }
    }

    /// Drops coefficients beyond `order`.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncation never extends a series");
        SeriesUinv { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SeriesUinv<T> {
        SeriesUinv { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

/// Reciprocal-free long division of `num / den` at infinity.
pub fn expand_quotient<S: Scalar>(num: &Poly<S>, den: &Poly<S>, order: usize) -> Result<SeriesUinv<S>> {
    let m = den.degree().expect("zero denominator");
    if let Some(dn) = num.degree() {
        if dn > m {
            return Err(Error::PoleAtInfinity { num: dn, den: m });
        }
    }
    let lead = den.leading();
    let mut c: Vec<S> = Vec::with_capacity(order + 1);
    for j in 0..=order {
        // coefficient of u^(m - j) in num = sum_{s <= j} d_{m - j + s} c_s
        let mut acc = if j <= m { num.coeff(m - j) } else { S::zero() };
        for (s, cs) in c.iter().enumerate() {
            let k = m as i64 - j as i64 + s as i64;
            if k >= 0 {
                let d = den.coeff(k as usize);
                if !d.is_zero() {
                    acc = acc - d * cs.clone();
                }
            }
        }
        c.push(acc / lead.clone());
    }
    Ok(SeriesUinv { coeffs: c })
}

/// Types supporting the integer linear combinations used by the basis change.
pub trait IntLinear: Clone {
    fn zero_like(&self) -> Self;
    fn add_scaled(&mut self, other: &Self, c: i64);
}

impl<S: Scalar> IntLinear for SeriesUinv<S> {
    fn zero_like(&self) -> Self {
        Self::zero(self.order())
    }
    fn add_scaled(&mut self, other: &Self, c: i64) {
        if c == 0 {
            return;
        }
        let k = S::from_i64(c);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.clone() + b.clone() * k.clone();
        }
    }
}

/// Rewrites `1 + sum (-1)^k B_k tau^k` (input `(B_0 = 1, B_1, .., B_N)`) as
/// `tau^N sum (-1)^k C_k (tau^-1 - 1)^(N-k)`, returning `(C_0, .., C_N)`.
///
/// Solves `B_m = sum_{k<=m} binom(N-k, N-m) C_k` by binomial inversion:
/// `C_m = sum_{k<=m} (-1)^(m-k) binom(N-k, N-m) B_k`.
pub fn tau_basis_change<T: IntLinear>(b: &[T]) -> Vec<T> {
    let n = b.len() as i64 - 1;
    (0..b.len())
        .map(|m| {
            let mut c = b[0].zero_like();
            for (k, bk) in b.iter().enumerate().take(m + 1) {
                let sign = if (m - k) % 2 == 0 { 1 } else { -1 };
                c.add_scaled(bk, sign * binomial(n - k as i64, n - m as i64));
            }
            c
        })
        .collect()
}

/// Inverse of [`tau_basis_change`]: `B_m = sum_{k<=m} binom(N-k, N-m) C_k`.
pub fn tau_basis_restore<T: IntLinear>(c: &[T]) -> Vec<T> {
    let n = c.len() as i64 - 1;
    (0..c.len())
        .map(|m| {
            let mut b = c[0].zero_like();
            for (k, ck) in c.iter().enumerate().take(m + 1) {
                b.add_scaled(ck, binomial(n - k as i64, n - m as i64));
            }
            b
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn rf(num: &[i64], den: &[i64]) -> RatFun<Rational> {
        RatFun::new(Poly::new(num.iter().map(|&x| int(x)).collect()), Poly::new(den.iter().map(|&x| int(x)).collect()))
    }

    fn coeffs(s: &SeriesUinv<Rational>) -> Vec<Rational> {
        s.coeffs().to_vec()
    }

    #[test]
    fn series_examples() {
        let s = SeriesUinv::from_ratfun(&rf(&[1, 1], &[0, 1]), 3).unwrap();
        assert_eq!(coeffs(&s), vec![int(1), int(1), int(0), int(0)]);
        let b = int(7);
        let geo = SeriesUinv::from_ratfun(&RatFun::new(Poly::one(), Poly::linear(b.clone())), 2).unwrap();
        assert_eq!(coeffs(&geo), vec![int(0), int(1), b]);
        let f2 = SeriesUinv::from_ratfun(&rf(&[2, 2], &[0, 1]), 1).unwrap();
        assert_eq!(coeffs(&f2), vec![int(2), int(2)]);
    }

    #[test]
    fn pole_at_infinity_is_rejected() {
        assert_eq!(
            SeriesUinv::from_ratfun(&rf(&[0, 0, 1], &[1, 1]), 2),
            Err(Error::PoleAtInfinity { num: 2, den: 1 })
        );
    }

    #[test]
    fn basis_change_small_cases() {
        let s = |v: i64| SeriesUinv::constant(int(v), 0);
        let n1 = tau_basis_change(&[s(1), s(5)]);
        assert_eq!(n1[1], s(4));
        let n2 = tau_basis_change(&[s(1), s(7), s(3)]);
        assert_eq!(n2[1], s(5));
        assert_eq!(n2[2], s(1 - 7 + 3));
        for n in 1..6 {
            let b: Vec<_> = (0..=n).map(|k| s(binomial(n, k))).collect();
            let c = tau_basis_change(&b);
            assert_eq!(c[0], s(1));
            assert!(c[1..].iter().all(|x| *x == s(0)));
            assert_eq!(tau_basis_restore(&c), b);
        }
    }
}
