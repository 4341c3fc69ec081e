use alloc::vec::Vec;

use super::poly::Poly;
use super::rational_function::RatFun;
use crate::combinat::signed_permutations;
use crate::scalar::Scalar;

/// `base^u * poly(u)`; a plain polynomial when `base = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiExp<S> {
    pub base: S,
    pub poly: Poly<S>,
}

impl<S: Scalar> QuasiExp<S> {
    pub fn new(base: S, poly: Poly<S>) -> Self {
        assert!(!base.is_zero(), "quasi-exponential with zero base");
        QuasiExp { base, poly }
    }

    pub fn polynomial(poly: Poly<S>) -> Self {
        Self::new(S::one(), poly)
    }

    pub fn exponential(base: S) -> Self {
        Self::new(base, Poly::one())
    }

    /// `f(u - k) = base^u * (base^-k p(u - k))`.
    pub fn shifted(&self, k: i64) -> Self {
        QuasiExp { base: self.base.clone(), poly: self.poly.shift_int(k).scale(&self.base.powi(-k)) }
    }
}

/// `base^u * value(u)` with a rational-function factor, the image of a
/// quasi-exponential under a difference operator.
#[derive(Clone, Debug)]
pub struct QuasiExpRat<S> {
    pub base: S,
    pub value: RatFun<S>,
}

impl<S: Scalar> PartialEq for QuasiExpRat<S> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.value == other.value
    }
}

/// A discrete Wronskian `base_product^(u + shift_exponent) * poly(u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiExpWronskian<S> {
    pub base_product: S,
    pub shift_exponent: i64,
    pub poly: Poly<S>,
}

/// Leibniz expansion of a square matrix of polynomials.
pub fn poly_determinant<S: Scalar>(rows: &[Vec<Poly<S>>]) -> Poly<S> {
    let n = rows.len();
    let mut det = Poly::zero();
    for (perm, sign) in signed_permutations(n) {
        let mut term = Poly::constant(S::from_i64(sign));
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(&rows[i][j]);
            if term.is_zero() {
                break;
            }
        }
        det = det.add(&term);
    }
    det
}

/// `det(g_i(u - j + 1))_{i,j = 1..N}` for quasi-exponentials `g_i`.
///
/// The common factor `prod base_i^u` is pulled out of each row, so the result
/// carries `shift_exponent = 0` and all constants live in `poly`.
pub fn discrete_wronskian<S: Scalar>(fs: &[QuasiExp<S>]) -> QuasiExpWronskian<S> {
    let n = fs.len();
    let rows: Vec<Vec<Poly<S>>> = fs.iter().map(|f| (0..n).map(|j| f.shifted(j as i64).poly).collect()).collect();
    let base_product = fs.iter().fold(S::one(), |acc, f| acc * f.base.clone());
    QuasiExpWronskian { base_product, shift_exponent: 0, poly: poly_determinant(&rows) }
}
