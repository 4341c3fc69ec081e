//! The `S_n` action on `V`-valued polynomials in `z_1, .., z_n`, truncated
//! by total degree, its invariants, graded characters and evaluation at a
//! point. Everything here is exact.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::combinat::compositions;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Rational;
use crate::tensorrep::{enumerate_basis, TensorSpace};

/// Exponent vector of a monomial `z^α`.
pub type Monomial = Vec<u32>;

/// A basis of tensor vectors `v_I`, given by colour sequences, closed under
/// permutation of slots.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorBasis {
    pub n_colours: usize,
    pub n_slots: usize,
    pub seqs: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl VectorBasis {
    fn from_seqs(n_colours: usize, n_slots: usize, seqs: Vec<Vec<usize>>) -> Self {
        let index = seqs.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        VectorBasis { n_colours, n_slots, seqs, index }
    }

    /// Basis of the weight subspace `V_λ`.
    pub fn weight(n_colours: usize, lambda: &[usize]) -> Result<Self> {
        let n: usize = lambda.iter().sum();
        let ws = enumerate_basis(n_colours, n, lambda)?;
        Ok(Self::from_seqs(n_colours, n, ws.basis.into_iter().map(|i| i.colours).collect()))
    }

    /// Basis of the whole space `(C^N)^{⊗n}`.
    pub fn full(n_colours: usize, n_slots: usize) -> Self {
        let sp = TensorSpace::new(n_colours, n_slots);
        Self::from_seqs(n_colours, n_slots, (0..sp.dim()).map(|k| sp.colours(k)).collect())
    }

    pub fn dim(&self) -> usize {
        self.seqs.len()
    }

    pub fn position(&self, seq: &[usize]) -> Option<usize> {
        self.index.get(seq).copied()
    }

    /// `P^{(i,i+1)}` on coordinates.
    fn swap_slots(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for (k, seq) in self.seqs.iter().enumerate() {
            if v[k].is_zero() {
                continue;
            }
            let mut s = seq.clone();
            s.swap(i, i + 1);
            let target = self.position(&s).expect("basis closed under slot permutations");
            out[target] += &v[k];
        }
        out
    }
}

/// A `V`-valued polynomial: finitely many monomials with vector
/// coefficients in some [`VectorBasis`]. Zero coefficients are not stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TruncatedVPoly {
    pub terms: BTreeMap<Monomial, Vec<Rational>>,
}

impl TruncatedVPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `v`.
    pub fn constant(n_slots: usize, v: Vec<Rational>) -> Self {
        let mut f = Self::zero();
        f.add_term(vec![0; n_slots], &v, &Rational::one());
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.iter().sum::<u32>() as usize).max()
    }

    /// Adds `c * z^m ⊗ v`.
    pub fn add_term(&mut self, m: Monomial, v: &[Rational], c: &Rational) {
        if c.is_zero() || v.iter().all(Zero::is_zero) {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(|| vec![Rational::zero(); v.len()]);
        for (e, x) in entry.iter_mut().zip(v) {
            *e += c * x;
        }
        if entry.iter().all(Zero::is_zero) {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(m.clone(), v, &Rational::one());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v, c);
        }
        out
    }

    /// Multiplication by the polynomial `sum c_m z^m`.
    pub fn mul_poly(&self, p: &BTreeMap<Monomial, Rational>) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            for (pm, c) in p {
                let prod: Monomial = m.iter().zip(pm).map(|(a, b)| a + b).collect();
                out.add_term(prod, v, c);
            }
        }
        out
    }

    /// Applies a linear map on the vector coefficients.
    pub fn map_vectors(&self, f: impl Fn(&[Rational]) -> Vec<Rational>) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &f(v), &Rational::one());
        }
        out
    }
}

/// The elementary symmetric polynomial `σ_k(z_1, .., z_n)`.
pub fn elementary_polynomial(n: usize, k: usize) -> BTreeMap<Monomial, Rational> {
    compositions(n, k)
        .into_iter()
        .filter(|m| m.iter().all(|&e| e <= 1))
        .map(|m| (m, Rational::one()))
        .collect()
}

/// `(z^α - z^{s_i α}) / (z_i - z_{i+1})` as a list of monomials with signs.
fn divided_difference(alpha: &[u32], i: usize) -> Vec<(Monomial, i64)> {
    let (a, b) = (alpha[i], alpha[i + 1]);
    let (lo, hi, sign) = if a > b { (b, a, 1) } else { (a, b, -1) };
    // x^lo y^lo (x^(hi-lo) - y^(hi-lo)) / (x - y)
    (0..hi - lo)
        .map(|k| {
            let mut m = alpha.to_vec();
            m[i] = lo + k;
            m[i + 1] = lo + (hi - lo - 1 - k);
            (m, sign)
        })
        .collect()
}

/// `s_i f = P^{(i,i+1)} f^{s_i} + (f - f^{s_i}) / (z_i - z_{i+1})`, with
/// 0-based `i` swapping slots `i` and `i + 1`.
pub fn sn_act(basis: &VectorBasis, i: usize, f: &TruncatedVPoly) -> TruncatedVPoly {
    assert!(i + 1 < basis.n_slots, "s_{i} needs slots {i} and {}", i + 1);
    let one = Rational::one();
    let mut out = TruncatedVPoly::zero();
    for (alpha, v) in &f.terms {
        let mut swapped = alpha.clone();
        swapped.swap(i, i + 1);
        out.add_term(swapped, &basis.swap_slots(i, v), &one);
        for (m, sign) in divided_difference(alpha, i) {
            out.add_term(m, v, &Rational::from_integer(sign.into()));
        }
    }
    out
}

/// Elements of a [`VectorBasis`] tensored with all monomials of degree at
/// most `cutoff`, flattened as `monomial * dim + vector`.
#[derive(Clone, Debug)]
pub struct TruncatedSpace {
    pub basis: VectorBasis,
    pub cutoff: usize,
    pub monomials: Vec<Monomial>,
    mono_index: BTreeMap<Monomial, usize>,
}

impl TruncatedSpace {
    pub fn new(basis: VectorBasis, cutoff: usize) -> Self {
        let monomials: Vec<Monomial> = (0..=cutoff).flat_map(|d| compositions(basis.n_slots, d)).collect();
        let mono_index = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        TruncatedSpace { basis, cutoff, monomials, mono_index }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len() * self.basis.dim()
    }

    pub fn to_dense(&self, f: &TruncatedVPoly) -> Result<Vec<Rational>> {
        let d = self.basis.dim();
        let mut out = vec![Rational::zero(); self.dim()];
        for (m, v) in &f.terms {
            let k = *self
                .mono_index
                .get(m)
                .ok_or_else(|| Error::Invalid(format!("monomial {m:?} exceeds the cutoff {}", self.cutoff)))?;
            out[k * d..(k + 1) * d].clone_from_slice(v);
        }
        Ok(out)
    }

    pub fn from_dense(&self, x: &[Rational]) -> TruncatedVPoly {
        let d = self.basis.dim();
        let mut f = TruncatedVPoly::zero();
        for (k, m) in self.monomials.iter().enumerate() {
            f.add_term(m.clone(), &x[k * d..(k + 1) * d], &Rational::one());
        }
        f
    }

    fn unit(&self, col: usize) -> TruncatedVPoly {
        let d = self.basis.dim();
        let mut v = vec![Rational::zero(); d];
        v[col % d] = Rational::one();
        TruncatedVPoly::constant(0, Vec::new()).add(&{
            let mut f = TruncatedVPoly::zero();
            f.add_term(self.monomials[col / d].clone(), &v, &Rational::one());
            f
        })
    }

    /// Matrix of `s_i - 1` on the truncated space.
    fn sn_minus_identity(&self, i: usize) -> Matrix<Rational> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for col in 0..n {
            let image = self.to_dense(&sn_act(&self.basis, i, &self.unit(col))).expect("s_i keeps the degree filtration");
            for (row, x) in image.into_iter().enumerate() {
                m[(row, col)] = x;
            }
            m[(col, col)] -= Rational::one();
        }
        m
    }

    /// Rows of the raising operators `e_{i,j}`, `i < j`, landing in other
    /// weight spaces.
    fn raising_rows(&self) -> Matrix<Rational> {
        let d = self.basis.dim();
        let mut targets: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut entries = Vec::new();
        for (col_v, seq) in self.basis.seqs.iter().enumerate() {
            for i in 0..self.basis.n_colours {
                for j in i + 1..self.basis.n_colours {
                    for slot in 0..seq.len() {
                        if seq[slot] == j {
                            let mut t = seq.clone();
                            t[slot] = i;
                            let next = targets.len();
                            let row = *targets.entry(t).or_insert(next);
                            entries.push((row, col_v));
                        }
                    }
                }
            }
        }
        let n_targets = targets.len();
        let mut m = Matrix::zeros(n_targets * self.monomials.len(), self.dim());
        for k in 0..self.monomials.len() {
            for &(row, col_v) in &entries {
                m[(k * n_targets + row, k * d + col_v)] += Rational::one();
            }
        }
        m
    }

    fn invariant_constraints(&self, singular: bool) -> Matrix<Rational> {
        let mut m = Matrix::zeros(0, self.dim());
        for i in 0..self.basis.n_slots.saturating_sub(1) {
            m = m.vstack(&self.sn_minus_identity(i));
        }
        if singular {
            m = m.vstack(&self.raising_rows());
        }
        m
    }

    /// Basis of the `S_n`-invariants of degree at most the cutoff.
    pub fn invariant_basis(&self) -> Vec<TruncatedVPoly> {
        self.basis_of(false)
    }

    /// Basis of the invariants that are also killed by every `e_{i,j}`, `i < j`.
    pub fn singular_invariant_basis(&self) -> Vec<TruncatedVPoly> {
        self.basis_of(true)
    }

    fn basis_of(&self, singular: bool) -> Vec<TruncatedVPoly> {
        let m = self.invariant_constraints(singular);
        if m.rows() == 0 {
            return (0..self.dim()).map(|c| self.unit(c)).collect();
        }
        m.null_space(0.0).iter().map(|x| self.from_dense(x)).collect()
    }

    /// Dimension of the invariants (or singular invariants).
    pub fn invariant_dim(&self, singular: bool) -> usize {
        let m = self.invariant_constraints(singular);
        self.dim() - if m.rows() == 0 { 0 } else { m.rank(0.0) }
    }
}

/// Which subspace of the invariants a character describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacterMode {
    Weight,
    Singular,
}

/// `dim F_k / F_{k-1}` of the invariants in `V_λ ⊗ C[z]`, `k = 0..=cutoff`,
/// computed from null spaces on the truncated spaces.
pub fn graded_dimensions(n_colours: usize, lambda: &[usize], mode: CharacterMode, cutoff: usize) -> Result<Vec<usize>> {
    let basis = VectorBasis::weight(n_colours, lambda)?;
    let mut dims = Vec::with_capacity(cutoff + 1);
    let mut prev = 0;
    for k in 0..=cutoff {
        let total = TruncatedSpace::new(basis.clone(), k).invariant_dim(mode == CharacterMode::Singular);
        dims.push(total - prev);
        prev = total;
    }
    Ok(dims)
}

fn mul_one_minus(s: &mut [i64], e: usize) {
    for k in (e..s.len()).rev() {
        s[k] -= s[k - e];
    }
}

fn div_one_minus(s: &mut [i64], e: usize) {
    for k in e..s.len() {
        s[k] += s[k - e];
    }
}

/// Series coefficients up to `t^cutoff` of the closed-form characters:
/// `prod 1/(t)_{λ_i}` for the weight subspace and
/// `t^{sum (i-1) λ_i} prod_{i<j} (1 - t^{λ_i - λ_j + j - i}) / prod (t)_{λ_i + N - i}`
/// for the singular part.
pub fn graded_character(lambda: &[usize], mode: CharacterMode, cutoff: usize) -> Result<Vec<i64>> {
    let mut s = vec![0i64; cutoff + 1];
    let n = lambda.len();
    match mode {
        CharacterMode::Weight => {
            s[0] = 1;
            for &l in lambda {
                for j in 1..=l {
                    div_one_minus(&mut s, j);
                }
            }
        }
        CharacterMode::Singular => {
            if lambda.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Invalid(format!("{lambda:?} is not a partition")));
            }
            let shift: usize = lambda.iter().enumerate().map(|(i, &l)| i * l).sum();
            if shift <= cutoff {
                s[shift] = 1;
            }
            for i in 0..n {
                for j in i + 1..n {
                    mul_one_minus(&mut s, lambda[i] - lambda[j] + j - i);
                }
            }
            for (i, &l) in lambda.iter().enumerate() {
                for j in 1..=l + n - 1 - i {
                    div_one_minus(&mut s, j);
                }
            }
        }
    }
    Ok(s)
}

/// The value of `f` at `z = b`.
pub fn evaluate_at_b(f: &TruncatedVPoly, b: &[Rational], dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (m, v) in &f.terms {
        let mut c = Rational::one();
        for (bs, &e) in b.iter().zip(m) {
            for _ in 0..e {
                c *= bs;
            }
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += &c * x;
        }
    }
    out
}
