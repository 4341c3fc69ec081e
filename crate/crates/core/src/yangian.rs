//! The Yangian `Y(gl_N)` acting on `V(b) = C^N(b_1) ⊗ .. ⊗ C^N(b_n)`.
//!
//! `T_{i,j}(u) = L_{i,j}(u) / prod_a (u - b_a)` where
//! `L(u) = (u - b_n + P^{(0,n)}) .. (u - b_1 + P^{(0,1)})`. Operators are kept
//! as matrix polynomials in `u` over a scalar denominator, so every identity
//! in `u` (and in a second variable `v`) reduces to coefficient comparisons.

use alloc::vec;
use alloc::vec::Vec;

use crate::combinat::{binomial, signed_permutations};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ratfun::{IntLinear, Poly, RatFun, tau_basis_change};
use crate::scalar::Scalar;
use crate::tensorrep::{singular_basis, TensorSpace, WeightSpace};

/// Polynomial `sum_m A_m u^m` with matrix coefficients of a fixed shape.
#[derive(Clone, Debug, PartialEq)]
pub struct MatPoly<S> {
    rows: usize,
    cols: usize,
    coeffs: Vec<Matrix<S>>,
}

impl<S: Scalar> MatPoly<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatPoly { rows, cols, coeffs: Vec::new() }
    }

    pub fn new(rows: usize, cols: usize, mut coeffs: Vec<Matrix<S>>) -> Self {
        assert!(coeffs.iter().all(|m| m.rows() == rows && m.cols() == cols), "coefficient shape mismatch");
        while coeffs.last().is_some_and(|m| m.is_zero()) {
            coeffs.pop();
        }
        MatPoly { rows, cols, coeffs }
    }

    pub fn constant(m: Matrix<S>) -> Self {
        Self::new(m.rows(), m.cols(), vec![m])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coeffs(&self) -> &[Matrix<S>] {
        &self.coeffs
    }

    /// Coefficient of `u^k`, the zero matrix beyond the degree.
    pub fn coeff(&self, k: usize) -> Matrix<S> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Matrix::zeros(self.rows, self.cols))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.rows, self.cols, (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.rows, self.cols, (0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.rows, self.cols, self.coeffs.iter().map(|m| m.scale(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.rows, other.cols);
        }
        let mut out = vec![Matrix::zeros(self.rows, other.cols); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                out[a + b] = out[a + b].add(&x.mul(y));
            }
        }
        Self::new(self.rows, other.cols, out)
    }

    /// Multiplication by a scalar polynomial in `u`.
    pub fn mul_poly(&self, p: &Poly<S>) -> Self {
        if self.is_zero() || p.is_zero() {
            return Self::zero(self.rows, self.cols);
        }
        let mut out = vec![Matrix::zeros(self.rows, self.cols); self.coeffs.len() + p.coeffs().len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out[a + b] = out[a + b].add(&x.scale(c));
                }
            }
        }
        Self::new(self.rows, self.cols, out)
    }

    /// `A(u - k)`.
    pub fn shift_int(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let d = self.coeffs.len();
        let negk = S::from_i64(-k);
        let out = (0..d)
            .map(|j| {
                let mut acc = Matrix::zeros(self.rows, self.cols);
                let mut pw = S::one();
                for m in j..d {
                    let c = S::from_i64(binomial(m as i64, j as i64)) * pw.clone();
                    acc = acc.add(&self.coeffs[m].scale(&c));
                    pw = pw * negk.clone();
                }
                acc
            })
            .collect();
        Self::new(self.rows, self.cols, out)
    }

    pub fn eval(&self, u: &S) -> Matrix<S> {
        self.coeffs.iter().rev().fold(Matrix::zeros(self.rows, self.cols), |acc, m| acc.scale(u).add(m))
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::new(rows.len(), cols.len(), self.coeffs.iter().map(|m| m.select(rows, cols)).collect())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> MatPoly<T> {
        MatPoly::new(self.rows, self.cols, self.coeffs.iter().map(|m| m.map(f)).collect())
    }

    /// Row `r` of the result is row `src[r]` of `self` (zero for `None`).
    fn gather_rows(&self, src: &[Option<usize>]) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|m| {
                let mut out = Matrix::zeros(src.len(), self.cols);
                for (r, s) in src.iter().enumerate() {
                    if let Some(s) = s {
                        for c in 0..self.cols {
                            out[(r, c)] = m[(*s, c)].clone();
                        }
                    }
                }
                out
            })
            .collect();
        Self::new(src.len(), self.cols, coeffs)
    }
}

/// An operator-valued rational function `num(u) / den(u)` with a scalar
/// denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorRatFun<S> {
    pub num: MatPoly<S>,
    pub den: Poly<S>,
}

impl<S: Scalar> OperatorRatFun<S> {
    pub fn eval(&self, u: &S) -> Result<Matrix<S>> {
        let d = self.den.eval(u);
        if d.is_zero() {
            return Err(Error::Pole(alloc::format!("{u:?}")));
        }
        Ok(self.num.eval(u).scale(&(S::one() / d)))
    }

    /// Expansion `sum_s X_s u^-s` at infinity, `s = 0..=order`.
    pub fn series(&self, order: usize) -> Result<Vec<Matrix<S>>> {
        let m = self.den.degree().expect("zero denominator");
        if let Some(dn) = self.num.degree() {
            if dn > m {
                return Err(Error::PoleAtInfinity { num: dn, den: m });
            }
        }
        let inv = S::one() / self.den.leading();
        let mut c: Vec<Matrix<S>> = Vec::with_capacity(order + 1);
        for j in 0..=order {
            let mut acc = if j <= m { self.num.coeff(m - j) } else { Matrix::zeros(self.num.rows, self.num.cols) };
            for (s, cs) in c.iter().enumerate() {
                let k = m as i64 - j as i64 + s as i64;
                if k >= 0 {
                    let d = self.den.coeff(k as usize);
                    if !d.is_zero() {
                        acc = acc.sub(&cs.scale(&d));
                    }
                }
            }
            c.push(acc.scale(&inv));
        }
        Ok(c)
    }

    /// Restricts an operator given on columns `ws.full_index` (rows on the full
    /// space) to a square operator on `V_λ`, failing if anything leaks out.
    pub fn restrict_rows(&self, ws: &WeightSpace, eps: f64) -> Result<Self> {
        assert_eq!(self.num.cols, ws.dim(), "operator columns must be the weight basis");
        let mut inside = vec![false; self.num.rows];
        for &i in &ws.full_index {
            inside[i] = true;
        }
        let scale = self.num.coeffs.iter().map(|m| m.max_abs()).fold(1.0, f64::max);
        for m in &self.num.coeffs {
            for (r, _) in inside.iter().enumerate().filter(|(_, x)| !**x) {
                let leak = m.row(r).iter().map(|x| x.abs()).fold(0.0, f64::max);
                if (S::EXACT && leak > 0.0) || leak > eps * scale {
                    return Err(Error::WeightLeak(leak));
                }
            }
        }
        let cols: Vec<usize> = (0..ws.dim()).collect();
        Ok(OperatorRatFun { num: self.num.select(&ws.full_index, &cols), den: self.den.clone() })
    }

    /// The operator on an invariant subspace spanned by the columns of `basis`:
    /// returns `X(u)` with `A(u) basis = basis X(u)`.
    pub fn restrict_to_subspace(&self, basis: &Matrix<S>, eps: f64) -> Result<Self> {
        let m = basis.cols();
        let (_, pivots) = basis.transpose().rref(eps);
        if pivots.len() < m {
            return Err(Error::RankDeficient(m - pivots.len()));
        }
        let all: Vec<usize> = (0..m).collect();
        let square = basis.select(&pivots, &all);
        let mut coeffs = Vec::with_capacity(self.num.coeffs.len());
        for a in &self.num.coeffs {
            let image = a.mul(basis);
            let x = square.solve_matrix(&image.select(&pivots, &all), eps)?;
            let defect = basis.mul(&x).sub(&image).max_abs();
            if (S::EXACT && defect > 0.0) || defect > libm::sqrt(eps) * image.max_abs().max(1.0) {
                return Err(Error::WeightLeak(defect));
            }
            coeffs.push(x);
        }
        Ok(OperatorRatFun { num: MatPoly::new(m, m, coeffs), den: self.den.clone() })
    }

    /// Exact test of `self == r(u) * Id`.
    pub fn equals_scalar(&self, r: &RatFun<S>) -> bool {
        let id = MatPoly::constant(Matrix::identity(self.num.rows));
        self.num.mul_poly(r.den()) == id.mul_poly(&r.num().mul(&self.den))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> OperatorRatFun<T> {
        OperatorRatFun { num: self.num.map(f), den: self.den.map(f) }
    }
}

/// `N` and the evaluation points `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationData<S> {
    pub n_colours: usize,
    pub b: Vec<S>,
}

impl<S: Scalar> EvaluationData<S> {
    pub fn new(n_colours: usize, b: Vec<S>) -> Self {
        EvaluationData { n_colours, b }
    }

    /// Default test points `b_s = 2 (s - 1)`.
    pub fn generic(n_colours: usize, n: usize) -> Self {
        Self::new(n_colours, (0..n).map(|s| S::from_i64(2 * s as i64)).collect())
    }

    pub fn space(&self) -> TensorSpace {
        TensorSpace::new(self.n_colours, self.b.len())
    }

    /// `b_i != b_j + 1` for `i > j`.
    pub fn ordered_for_identification(&self) -> bool {
        let n = self.b.len();
        (0..n).all(|i| (0..i).all(|j| self.b[i] != self.b[j].clone() + S::one()))
    }

    /// `b_i != b_j + 1` for all `i != j`.
    pub fn irreducible(&self) -> bool {
        let n = self.b.len();
        (0..n).all(|i| (0..n).all(|j| i == j || self.b[i] != self.b[j].clone() + S::one()))
    }
}

/// `V(b)` with the blocks `L_{i,j}(u)` of the monodromy matrix.
#[derive(Clone, Debug)]
pub struct YangianModule<S> {
    pub ev: EvaluationData<S>,
    pub space: TensorSpace,
    l: Vec<Vec<MatPoly<S>>>,
}

impl<S: Scalar> YangianModule<S> {
    pub fn new(ev: EvaluationData<S>) -> Self {
        let space = ev.space();
        let d = space.dim();
        let n_col = ev.n_colours;
        let mut l: Vec<Vec<MatPoly<S>>> = (0..n_col)
            .map(|i| {
                (0..n_col)
                    .map(|j| if i == j { MatPoly::constant(Matrix::identity(d)) } else { MatPoly::zero(d, d) })
                    .collect()
            })
            .collect();
        // L <- (u - b_a + P^{(0,a)}) L, slot by slot; block (i,k) of the factor
        // is (u - b_a) δ_{ik} + e_{k,i} acting on slot a.
        for (a, b) in ev.b.iter().enumerate() {
            let lin = Poly::linear(b.clone());
            let mut next = Vec::with_capacity(n_col);
            for i in 0..n_col {
                let mut row = Vec::with_capacity(n_col);
                for j in 0..n_col {
                    let mut acc = l[i][j].mul_poly(&lin);
                    for (k, lk) in l.iter().enumerate() {
                        if !lk[j].is_zero() {
                            acc = acc.add(&lk[j].gather_rows(&slot_unit_rows(&space, a, k, i)));
                        }
                    }
                    row.push(acc);
                }
                next.push(row);
            }
            l = next;
        }
        YangianModule { ev, space, l }
    }

    pub fn n_colours(&self) -> usize {
        self.ev.n_colours
    }

    pub fn n_slots(&self) -> usize {
        self.ev.b.len()
    }

    /// `L_{i,j}(u)`, 0-based indices.
    pub fn l_entry(&self, i: usize, j: usize) -> &MatPoly<S> {
        &self.l[i][j]
    }

    /// `prod_a (u - b_a)`.
    pub fn base_den(&self) -> Poly<S> {
        Poly::from_roots(&self.ev.b)
    }

    /// `T_{i,j}(u)` on the full space.
    pub fn t_entry(&self, i: usize, j: usize) -> OperatorRatFun<S> {
        OperatorRatFun { num: self.l[i][j].clone(), den: self.base_den() }
    }

    /// `prod_{m < k} prod_a (u - m - b_a)`, the denominator of a `k`-minor.
    pub fn minor_den(&self, k: usize) -> Poly<S> {
        let base = self.base_den();
        (0..k).fold(Poly::one(), |acc, m| acc.mul(&base.shift_int(m as i64)))
    }

    /// Numerator of `M_{rows,cols}(u)`, optionally on a subset of columns of
    /// the full space (the result then maps those columns into `V`).
    fn minor_num(&self, rows: &[usize], cols: &[usize], columns: Option<&[usize]>) -> MatPoly<S> {
        let k = rows.len();
        let d = self.space.dim();
        let shifted: Vec<Vec<Vec<MatPoly<S>>>> = (0..k)
            .map(|m| self.l.iter().map(|row| row.iter().map(|e| e.shift_int(m as i64)).collect()).collect())
            .collect();
        let width = columns.map_or(d, |c| c.len());
        let all: Vec<usize> = (0..d).collect();
        let mut out = MatPoly::zero(d, width);
        for (perm, sign) in signed_permutations(k) {
            // rightmost factor first, restricted to the requested columns
            let last = k - 1;
            let mut term = {
                let e = &shifted[last][rows[last]][cols[perm[last]]];
                match columns {
                    Some(c) => e.select(&all, c),
                    None => e.clone(),
                }
            };
            for m in (0..last).rev() {
                if term.is_zero() {
                    break;
                }
                term = shifted[m][rows[m]][cols[perm[m]]].mul(&term);
            }
            out = if sign > 0 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }

    /// Quantum minor `M_{rows,cols}(u)` on the full space.
    pub fn quantum_minor(&self, rows: &[usize], cols: &[usize]) -> Result<OperatorRatFun<S>> {
        check_minor_indices(rows, cols, self.n_colours())?;
        Ok(OperatorRatFun { num: self.minor_num(rows, cols, None), den: self.minor_den(rows.len()) })
    }

    /// `qdet T(u)`.
    pub fn quantum_determinant(&self) -> OperatorRatFun<S> {
        let all: Vec<usize> = (0..self.n_colours()).collect();
        self.quantum_minor(&all, &all).expect("full index set")
    }

    /// `B_k^q(u)` on the full space (`columns = None`) or on the given columns.
    pub fn transfer_matrix_on(&self, k: usize, q: &[S], columns: Option<&[usize]>) -> OperatorRatFun<S> {
        assert!(k >= 1 && k <= self.n_colours(), "transfer matrix index out of range");
        let d = self.space.dim();
        let width = columns.map_or(d, |c| c.len());
        let mut num = MatPoly::zero(d, width);
        for rows in subsets(self.n_colours(), k) {
            let weight = rows.iter().fold(S::one(), |acc, &i| acc * q[i].clone());
            if weight.is_zero() {
                continue;
            }
            num = num.add(&self.minor_num(&rows, &rows, columns).scale(&weight));
        }
        OperatorRatFun { num, den: self.minor_den(k) }
    }

    pub fn transfer_matrix(&self, k: usize, q: &[S]) -> OperatorRatFun<S> {
        self.transfer_matrix_on(k, q, None)
    }

    /// `B_k^q(u)` restricted to `V(b)_λ`.
    pub fn transfer_on_weight(&self, k: usize, q: &[S], ws: &WeightSpace, eps: f64) -> Result<OperatorRatFun<S>> {
        check_q(q, self.n_colours())?;
        self.transfer_matrix_on(k, q, Some(&ws.full_index)).restrict_rows(ws, eps)
    }

    /// Largest entry of
    /// `(u-v)[L_ij(u), L_kl(v)] - L_kj(v) L_il(u) + L_kj(u) L_il(v)`
    /// over all coefficients of `u^a v^c`; zero iff the Yangian relation holds.
    pub fn relation_defect(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let (lij, lkl, lkj, lil) = (&self.l[i][j], &self.l[k][l], &self.l[k][j], &self.l[i][l]);
        let top = self.n_slots() + 1;
        let mut worst = 0.0f64;
        for a in 0..=top {
            for c in 0..=top {
                let mut lhs = Matrix::zeros(self.space.dim(), self.space.dim());
                if a > 0 {
                    lhs = lhs.add(&lij.coeff(a - 1).commutator(&lkl.coeff(c)));
                }
                if c > 0 {
                    lhs = lhs.sub(&lij.coeff(a).commutator(&lkl.coeff(c - 1)));
                }
                let rhs = lkj.coeff(c).mul(&lil.coeff(a)).sub(&lkj.coeff(a).mul(&lil.coeff(c)));
                worst = worst.max(lhs.sub(&rhs).max_abs());
            }
        }
        worst
    }

    /// Largest entry of `[M(u), L_kl(v)]` over all coefficient pairs, for the
    /// numerator `M` of an operator on the full space.
    pub fn commutator_with_l(&self, op: &OperatorRatFun<S>, k: usize, l: usize) -> f64 {
        let mut worst = 0.0f64;
        for a in op.num.coeffs() {
            for c in self.l[k][l].coeffs() {
                worst = worst.max(a.commutator(c).max_abs());
            }
        }
        worst
    }
}

/// Rows of `e_{k,i}` on one slot as a gather map.
fn slot_unit_rows(space: &TensorSpace, slot: usize, k: usize, i: usize) -> Vec<Option<usize>> {
    (0..space.dim())
        .map(|r| {
            let mut c = space.colours(r);
            if c[slot] != k {
                return None;
            }
            c[slot] = i;
            Some(space.index(&c))
        })
        .collect()
}

fn check_minor_indices(rows: &[usize], cols: &[usize], n: usize) -> Result<()> {
    let increasing = |s: &[usize]| s.windows(2).all(|w| w[0] < w[1]) && s.iter().all(|&x| x < n);
    if rows.len() != cols.len() || rows.is_empty() || !increasing(rows) || !increasing(cols) {
        return Err(Error::MinorShape { rows: rows.len(), cols: cols.len() });
    }
    Ok(())
}

fn check_q<S: Scalar>(q: &[S], n: usize) -> Result<()> {
    if q.len() != n {
        return Err(Error::Invalid(alloc::format!("expected {n} values of q, got {}", q.len())));
    }
    if q.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroQ);
    }
    Ok(())
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `q_1 .. q_N prod_s (u - b_s + 1) / (u - b_s)`, the value of `B_N^q(u)`.
pub fn scalar_transfer<S: Scalar>(q: &[S], b: &[S]) -> RatFun<S> {
    let qprod = q.iter().fold(S::one(), |acc, x| acc * x.clone());
    let shifted: Vec<S> = b.iter().map(|x| x.clone() - S::one()).collect();
    RatFun::new(Poly::from_roots(&shifted).scale(&qprod), Poly::from_roots(b))
}

/// Series of matrices, combined linearly by the `tau` basis change.
#[derive(Clone, Debug, PartialEq)]
pub struct MatSeries<S>(pub Vec<Matrix<S>>);

impl<S: Scalar> IntLinear for MatSeries<S> {
    fn zero_like(&self) -> Self {
        MatSeries(self.0.iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect())
    }
    fn add_scaled(&mut self, other: &Self, c: i64) {
        if c == 0 {
            return;
        }
        let k = S::from_i64(c);
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = a.add(&b.scale(&k));
        }
    }
}

/// Where the `q = 1` transfer matrices are restricted before rebasing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    Weight,
    Singular,
}

/// Table `C[k][s]`, `k = 0..=N`, `s = 0..=order`, of the coefficients of
/// `C_k(u)` on `V(b)_λ` or on `V(b)_λ^sing`, in the basis of that space
/// (the singular basis is the one returned by [`singular_basis`]).
pub fn c_coefficients<S: Scalar>(
    module: &YangianModule<S>,
    ws: &WeightSpace,
    order: usize,
    sector: Sector,
    eps: f64,
) -> Result<Vec<Vec<Matrix<S>>>> {
    let n_col = module.n_colours();
    let ones = vec![S::one(); n_col];
    let sing = match sector {
        Sector::Weight => None,
        Sector::Singular => {
            let cols: Vec<Vec<S>> =
                singular_basis(ws).iter().map(|v| v.iter().map(S::from_rational).collect()).collect();
            if cols.is_empty() {
                return Ok(vec![Vec::new(); n_col + 1]);
            }
            Some(Matrix::from_columns(&cols))
        }
    };
    let dim = sing.as_ref().map_or(ws.dim(), |m| m.cols());
    let mut b_series = vec![MatSeries(
        (0..=order).map(|s| if s == 0 { Matrix::identity(dim) } else { Matrix::zeros(dim, dim) }).collect(),
    )];
    for k in 1..=n_col {
        let mut op = module.transfer_on_weight(k, &ones, ws, eps)?;
        if let Some(basis) = &sing {
            op = op.restrict_to_subspace(basis, eps)?;
        }
        b_series.push(MatSeries(op.series(order)?));
    }
    Ok(tau_basis_change(&b_series).into_iter().map(|s| s.0).collect())
}
