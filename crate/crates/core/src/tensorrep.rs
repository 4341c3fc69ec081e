//! Tensor powers `(C^N)^{⊗n}` of the vector representation of `gl_N`.
//!
//! Colours and tensor slots are 0-based. A basis vector `v_I` is stored as its
//! colour sequence `(i_1, .., i_n)`, and every basis is ordered
//! lexicographically in that sequence, so the index of a colour sequence in
//! the full space is its value as a base-`N` number.

use alloc::vec;
use alloc::vec::Vec;

use crate::combinat::multinomial;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar};

/// The full space `V = (C^N)^{⊗n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    pub n_colours: usize,
    pub n_slots: usize,
}

impl TensorSpace {
    pub fn new(n_colours: usize, n_slots: usize) -> Self {
        assert!(n_colours > 0, "gl_N needs N >= 1");
        TensorSpace { n_colours, n_slots }
    }

    pub fn dim(&self) -> usize {
        self.n_colours.pow(self.n_slots as u32)
    }

    pub fn index(&self, colours: &[usize]) -> usize {
        colours.iter().fold(0, |acc, &c| acc * self.n_colours + c)
    }

    pub fn colours(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.n_slots];
        for slot in (0..self.n_slots).rev() {
            out[slot] = index % self.n_colours;
            index /= self.n_colours;
        }
        out
    }

    /// `e_{i,j}` acting on one slot: `v_j -> v_i` there, everything else to 0.
    pub fn slot_unit(&self, slot: usize, i: usize, j: usize) -> Matrix<Rational> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for col in 0..d {
            let mut c = self.colours(col);
            if c[slot] == j {
                c[slot] = i;
                m[(self.index(&c), col)] = Rational::one();
            }
        }
        m
    }

    /// Total action `sum_s e_{i,j}^{(s)}` on the full space.
    pub fn gl_action(&self, i: usize, j: usize) -> Matrix<Rational> {
        let d = self.dim();
        let mut m: Matrix<Rational> = Matrix::zeros(d, d);
        for col in 0..d {
            let c = self.colours(col);
            for slot in 0..self.n_slots {
                if c[slot] == j {
                    let mut t = c.clone();
                    t[slot] = i;
                    let row = self.index(&t);
                    m[(row, col)] = m[(row, col)].clone() + Rational::one();
                }
            }
        }
        m
    }

    /// `P^{(a,b)}`, the swap of slots `a` and `b`.
    pub fn permutation(&self, a: usize, b: usize) -> Matrix<Rational> {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for col in 0..d {
            let mut c = self.colours(col);
            c.swap(a, b);
            m[(self.index(&c), col)] = Rational::one();
        }
        m
    }
}

/// A decomposition `I = (I_1, .., I_N)` of the slots, stored as colours.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IndexDecomposition {
    pub colours: Vec<usize>,
}

impl IndexDecomposition {
    /// The subsets `I_c = {s : i_s = c}` for `c = 0..N`.
    pub fn subsets(&self, n_colours: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n_colours];
        for (slot, &c) in self.colours.iter().enumerate() {
            out[c].push(slot);
        }
        out
    }
}

/// The weight subspace `V_λ` with its basis `{v_I : I ∈ I_λ}`.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub space: TensorSpace,
    pub lambda: Vec<usize>,
    pub basis: Vec<IndexDecomposition>,
    /// Position of each basis vector in the full space.
    pub full_index: Vec<usize>,
}

impl WeightSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, colours: &[usize]) -> Option<usize> {
        let idx = self.space.index(colours);
        self.full_index.binary_search(&idx).ok()
    }

    /// Embeds a coordinate vector of `V_λ` into the full space.
    pub fn embed<S: Scalar>(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.space.dim()];
        for (k, &idx) in self.full_index.iter().enumerate() {
            out[idx] = v[k].clone();
        }
        out
    }

    /// Coordinates of a full-space vector on this basis, with the largest
    /// modulus found outside the subspace.
    pub fn project<S: Scalar>(&self, v: &[S]) -> (Vec<S>, f64) {
        let inside: Vec<S> = self.full_index.iter().map(|&i| v[i].clone()).collect();
        let mut leak = 0.0f64;
        let mut k = 0;
        for (i, x) in v.iter().enumerate() {
            if k < self.full_index.len() && self.full_index[k] == i {
                k += 1;
            } else {
                leak = leak.max(x.abs());
            }
        }
        (inside, leak)
    }

    /// `e_{i,j}` restricted to `V_λ`, landing in the full space (columns on
    /// `V_λ`, rows on `V`).
    pub fn gl_action_from(&self, i: usize, j: usize) -> Matrix<Rational> {
        let full = self.space.gl_action(i, j);
        let rows: Vec<usize> = (0..self.space.dim()).collect();
        full.select(&rows, &self.full_index)
    }
}

/// Basis of `V_λ`, lexicographic in the colour sequence.
pub fn enumerate_basis(n_colours: usize, n_slots: usize, lambda: &[usize]) -> Result<WeightSpace> {
    let size: usize = lambda.iter().sum();
    if lambda.len() != n_colours || size != n_slots {
        return Err(Error::WeightSize { weight: lambda.to_vec(), size, expected: n_slots });
    }
    let space = TensorSpace::new(n_colours, n_slots);
    let mut basis = Vec::new();
    let mut full_index = Vec::new();
    let mut counts = vec![0usize; n_colours];
    let mut prefix = Vec::with_capacity(n_slots);
    fill(&space, lambda, &mut counts, &mut prefix, &mut basis, &mut full_index);
    debug_assert_eq!(basis.len() as u128, multinomial(lambda));
    Ok(WeightSpace { space, lambda: lambda.to_vec(), basis, full_index })
}

fn fill(
    space: &TensorSpace,
    lambda: &[usize],
    counts: &mut [usize],
    prefix: &mut Vec<usize>,
    basis: &mut Vec<IndexDecomposition>,
    full_index: &mut Vec<usize>,
) {
    if prefix.len() == space.n_slots {
        full_index.push(space.index(prefix));
        basis.push(IndexDecomposition { colours: prefix.clone() });
        return;
    }
    for c in 0..space.n_colours {
        if counts[c] < lambda[c] {
            counts[c] += 1;
            prefix.push(c);
            fill(space, lambda, counts, prefix, basis, full_index);
            prefix.pop();
            counts[c] -= 1;
        }
    }
}

/// Basis of `V_λ^sing`, the common kernel of the raising operators `e_{i,j}`,
/// `i < j`, in `V_λ` coordinates. Empty when there are no singular vectors.
pub fn singular_basis(ws: &WeightSpace) -> Vec<Vec<Rational>> {
    let n = ws.space.n_colours;
    let mut stacked = Matrix::zeros(0, ws.dim());
    for i in 0..n {
        for j in i + 1..n {
            stacked = stacked.vstack(&ws.gl_action_from(i, j));
        }
    }
    if stacked.rows() == 0 {
        return identity_columns(ws.dim());
    }
    stacked.null_space(0.0)
}

fn identity_columns(d: usize) -> Vec<Vec<Rational>> {
    (0..d)
        .map(|k| {
            let mut v = vec![Rational::zero(); d];
            v[k] = Rational::one();
            v
        })
        .collect()
}

/// `v_λ = sum_{I ∈ I_λ} v_I`: the all-ones vector in basis order.
pub fn cyclic_vector<S: Scalar>(ws: &WeightSpace) -> Vec<S> {
    vec![S::one(); ws.dim()]
}
