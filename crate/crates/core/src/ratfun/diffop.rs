use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::poly::Poly;
use super::quasiexp::{QuasiExp, QuasiExpRat};
use super::rational_function::RatFun;
use crate::combinat::signed_permutations;
use crate::scalar::Scalar;

/// Difference operator `sum_k c_k(u) tau^k` with `(tau f)(u) = f(u - 1)`.
///
/// Coefficients sit to the left of the shift, so composition follows
/// `c(u) tau^a * d(u) tau^b = c(u) d(u - a) tau^(a + b)`.
#[derive(Clone, Debug)]
pub struct DiffOp<S> {
    terms: BTreeMap<i64, RatFun<S>>,
}

impl<S: Scalar> DiffOp<S> {
    pub fn zero() -> Self {
        DiffOp { terms: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::term(0, RatFun::one())
    }

    /// `tau^k`.
    pub fn tau(k: i64) -> Self {
        Self::term(k, RatFun::one())
    }

    /// `c(u) tau^k`.
    pub fn term(k: i64, c: RatFun<S>) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        DiffOp { terms }
    }

    /// Multiplication by a function of `u`.
    pub fn function(c: RatFun<S>) -> Self {
        Self::term(0, c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, RatFun<S>)>) -> Self {
        terms.into_iter().fold(Self::zero(), |acc, (k, c)| acc.add(&Self::term(k, c)))
    }

    pub fn coeff(&self, k: i64) -> RatFun<S> {
        self.terms.get(&k).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatFun<S>)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest power of `tau` with a nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let sum = match terms.get(k) {
                Some(a) => a.add(c),
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(k);
            } else {
                terms.insert(*k, sum);
            }
        }
        DiffOp { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, r)| (*k, r.scale(c))))
    }

    /// `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out = out.add(&Self::term(a + b, c.mul(&d.shift_int(*a))));
            }
        }
        out
    }

    /// Applies the operator to `base^u p(u)`, returning `base^u r(u)`.
    pub fn apply(&self, f: &QuasiExp<S>) -> QuasiExpRat<S> {
        let mut value = RatFun::zero();
        for (k, c) in &self.terms {
            let shifted = f.shifted(*k).poly;
            value = value.add(&c.mul(&RatFun::from_poly(shifted)));
        }
        QuasiExpRat { base: f.base.clone(), value }
    }

    /// Whether the operator kills `f`: exactly in exact mode, coefficientwise
    /// within `eps` in float mode.
    pub fn annihilates(&self, f: &QuasiExp<S>, eps: f64) -> bool {
        self.apply(f).value.is_negligible(eps)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> DiffOp<T> {
        DiffOp::from_terms(self.terms.iter().map(|(k, c)| (*k, c.map(f))))
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        let keys: alloc::collections::BTreeSet<i64> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.into_iter().all(|k| self.coeff(k).approx_eq(&other.coeff(k), eps))
    }
}

impl<S: Scalar> PartialEq for DiffOp<S> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

/// Row determinant `sum_sigma sgn(sigma) a_{1 sigma(1)} ... a_{N sigma(N)}`
/// with the factors composed left to right in row order.
pub fn rdet<S: Scalar>(m: &[Vec<DiffOp<S>>]) -> DiffOp<S> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "row determinant of a non-square matrix");
    let mut out = DiffOp::zero();
    for (perm, sign) in signed_permutations(n) {
        let mut term = DiffOp::function(RatFun::constant(S::from_i64(sign)));
        for (i, &j) in perm.iter().enumerate() {
            term = term.compose(&m[i][j]);
            if term.is_zero() {
                break;
            }
        }
        out = out.add(&term);
    }
    out
}

/// `prod_a (1 - x_a(u) tau)` with the factors composed left to right.
pub fn product_of_first_order<S: Scalar>(factors: &[RatFun<S>]) -> DiffOp<S> {
    factors.iter().fold(DiffOp::identity(), |acc, x| {
        acc.compose(&DiffOp::identity().sub(&DiffOp::term(1, x.clone())))
    })
}

/// Multiplies a polynomial by a rational function into a `DiffOp` coefficient.
pub fn poly_fun<S: Scalar>(p: Poly<S>) -> DiffOp<S> {
    DiffOp::function(RatFun::from_poly(p))
}
