//! Bethe ansatz equations, weight functions, Bethe vectors, eigenvalue
//! functions, fundamental difference operators and their kernels.

mod solve;

pub use solve::{
    gaudin_solutions, homotopy_starts, solve_bae, track_start, BetheSolution, BetheSolutionSet, SolverOptions,
    Strategy,
};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::combinat::signed_permutations;
use crate::error::{Error, Result};
use crate::linalg::{norm, Matrix};
use crate::ratfun::{product_of_first_order, DiffOp, Poly, QuasiExp, RatFun};
use crate::scalar::Scalar;
use crate::tensorrep::{IndexDecomposition, WeightSpace};

/// Data of the Bethe ansatz equations: weight `λ`, twist `q`, evaluation
/// points `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetheProblem<S> {
    pub lambda: Vec<usize>,
    pub q: Vec<S>,
    pub b: Vec<S>,
}

impl<S: Scalar> BetheProblem<S> {
    pub fn new(lambda: Vec<usize>, q: Vec<S>, b: Vec<S>) -> Result<Self> {
        let size: usize = lambda.iter().sum();
        if size != b.len() {
            return Err(Error::WeightSize { weight: lambda, size, expected: b.len() });
        }
        if lambda.is_empty() || q.len() != lambda.len() {
            return Err(Error::Invalid(format!("need one q per colour, got {} for N = {}", q.len(), lambda.len())));
        }
        if q.iter().any(|x| x.is_zero()) {
            return Err(Error::ZeroQ);
        }
        Ok(BetheProblem { lambda, q, b })
    }

    pub fn n_colours(&self) -> usize {
        self.lambda.len()
    }

    pub fn n_slots(&self) -> usize {
        self.b.len()
    }

    /// `l_a = λ_{a+1} + .. + λ_N` for `a = 1..N-1`.
    pub fn block_sizes(&self) -> Vec<usize> {
        block_sizes(&self.lambda)
    }

    pub fn q_is_ones(&self) -> bool {
        self.q.iter().all(|x| x.is_one())
    }

    /// First pair of equal twist parameters, if any.
    pub fn repeated_q(&self) -> Option<(usize, usize)> {
        for i in 0..self.q.len() {
            for j in i + 1..self.q.len() {
                if self.q[i] == self.q[j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BetheProblem<T> {
        BetheProblem {
            lambda: self.lambda.clone(),
            q: self.q.iter().map(&f).collect(),
            b: self.b.iter().map(&f).collect(),
        }
    }
}

/// `l_a = λ_{a+1} + .. + λ_N` for `a = 1..N-1`.
pub fn block_sizes(lambda: &[usize]) -> Vec<usize> {
    (1..lambda.len()).map(|a| lambda[a..].iter().sum()).collect()
}

/// Bethe roots grouped in blocks `t^(1), .., t^(N-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetheRoots<S> {
    pub blocks: Vec<Vec<S>>,
}

impl<S: Scalar> BetheRoots<S> {
    pub fn new(blocks: Vec<Vec<S>>) -> Self {
        BetheRoots { blocks }
    }

    /// Empty blocks of the given sizes' count, for weights with no roots.
    pub fn empty(n_colours: usize) -> Self {
        BetheRoots { blocks: vec![Vec::new(); n_colours.saturating_sub(1)] }
    }

    pub fn from_flat(sizes: &[usize], x: &[S]) -> Self {
        let mut blocks = Vec::with_capacity(sizes.len());
        let mut off = 0;
        for &l in sizes {
            blocks.push(x[off..off + l].to_vec());
            off += l;
        }
        BetheRoots { blocks }
    }

    pub fn flat(&self) -> Vec<S> {
        self.blocks.iter().flatten().cloned().collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Smallest distance among roots of one block and between adjacent
    /// blocks; infinite when there are no such pairs.
    pub fn offdiag_margin(&self) -> f64 {
        let mut m = f64::INFINITY;
        for (a, block) in self.blocks.iter().enumerate() {
            for j in 0..block.len() {
                for k in j + 1..block.len() {
                    m = m.min((block[j].clone() - block[k].clone()).abs());
                }
                if let Some(next) = self.blocks.get(a + 1) {
                    for x in next {
                        m = m.min((block[j].clone() - x.clone()).abs());
                    }
                }
            }
        }
        m
    }

    pub fn is_off_diagonal(&self, delta: f64) -> bool {
        self.offdiag_margin() > delta
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BetheRoots<T> {
        BetheRoots { blocks: self.blocks.iter().map(|b| b.iter().map(&f).collect()).collect() }
    }
}

/// Roots of the block before `a` (1-based), with `t^(0) = b`.
fn previous_block<'a, S>(t: &'a BetheRoots<S>, b: &'a [S], a: usize) -> &'a [S] {
    if a == 1 {
        b
    } else {
        &t.blocks[a - 2]
    }
}

/// Roots of the block after `a` (1-based), empty for `a = N-1`.
fn next_block<S>(t: &BetheRoots<S>, a: usize) -> &[S] {
    t.blocks.get(a).map_or(&[], Vec::as_slice)
}

fn product<S: Scalar>(it: impl Iterator<Item = S>) -> S {
    it.fold(S::one(), |acc, x| acc * x)
}

/// Sides `(lhs, rhs)` of the denominator-free equation for `t^(a)_j`.
fn bae_sides<S: Scalar>(t: &BetheRoots<S>, prob: &BetheProblem<S>, a: usize, j: usize) -> (S, S) {
    let one = S::one();
    let block = &t.blocks[a - 1];
    let x = block[j].clone();
    let prev = previous_block(t, &prob.b, a);
    let next = next_block(t, a);
    let others = || block.iter().enumerate().filter(move |(k, _)| *k != j).map(|(_, y)| y.clone());
    let lhs = prob.q[a - 1].clone()
        * product(prev.iter().map(|p| x.clone() - p.clone() + one.clone()))
        * product(others().map(|y| x.clone() - y - one.clone()))
        * product(next.iter().map(|y| x.clone() - y.clone()));
    let rhs = prob.q[a].clone()
        * product(prev.iter().map(|p| x.clone() - p.clone()))
        * product(others().map(|y| x.clone() - y + one.clone()))
        * product(next.iter().map(|y| x.clone() - y.clone() - one.clone()));
    (lhs, rhs)
}

/// Left minus right side of every Bethe ansatz equation, cleared of
/// denominators, in block order.
pub fn bae_residual<S: Scalar>(t: &BetheRoots<S>, prob: &BetheProblem<S>) -> Vec<S> {
    let mut out = Vec::new();
    for (a, block) in t.blocks.iter().enumerate() {
        for j in 0..block.len() {
            let (l, r) = bae_sides(t, prob, a + 1, j);
            out.push(l - r);
        }
    }
    out
}

/// Largest `|lhs - rhs| / (|lhs| + |rhs|)` over the equations; zero when
/// there are none.
pub fn bae_relative_residual<S: Scalar>(t: &BetheRoots<S>, prob: &BetheProblem<S>) -> f64 {
    let mut worst = 0.0f64;
    for (a, block) in t.blocks.iter().enumerate() {
        for j in 0..block.len() {
            let (l, r) = bae_sides(t, prob, a + 1, j);
            let scale = l.abs() + r.abs();
            let d = (l - r).abs();
            let rel = if scale == 0.0 { 0.0 } else { d / scale };
            worst = if rel.is_nan() { f64::INFINITY } else { worst.max(rel) };
        }
    }
    worst
}

/// Closed-form solution for one slot of colour `k` (0-based):
/// `t^(i) = b_1 + sum_{j <= i} q_j / (q_{k+1} - q_j)`, `i = 1..k`.
pub fn solve_n1<S: Scalar>(k: usize, q: &[S], b1: &S) -> Result<BetheRoots<S>> {
    let n = q.len();
    if k >= n {
        return Err(Error::Invalid(format!("colour {k} out of range for N = {n}")));
    }
    let mut blocks = vec![Vec::new(); n - 1];
    let mut acc = b1.clone();
    for (i, block) in blocks.iter_mut().enumerate().take(k) {
        let d = q[k].clone() - q[i].clone();
        if d.is_zero() {
            return Err(Error::RepeatedQ { i, j: k });
        }
        acc = acc + q[i].clone() / d;
        block.push(acc.clone());
    }
    Ok(BetheRoots { blocks })
}

/// The sorted index lists `i^(a) = ∪_{c >= a} I_c` (0-based colours), for
/// `a = 0..N-1`; `i^(0)` lists every slot.
fn index_lists(colours: &[usize], n_colours: usize) -> Vec<Vec<usize>> {
    (0..n_colours).map(|a| (0..colours.len()).filter(|&s| colours[s] >= a).collect()).collect()
}

/// `U_I` at one ordering of the roots.
fn u_function<S: Scalar>(lists: &[Vec<usize>], t: &[Vec<S>], b: &[S]) -> Result<S> {
    let one = S::one();
    let mut acc = S::one();
    for a in 1..lists.len() {
        let prev: &[S] = if a == 1 { b } else { &t[a - 2] };
        let cur = &t[a - 1];
        for (j, x) in cur.iter().enumerate() {
            let ij = lists[a][j];
            for (jp, p) in prev.iter().enumerate() {
                let ip = lists[a - 1][jp];
                if ip < ij {
                    acc = acc * (x.clone() - p.clone() + one.clone());
                } else if ip > ij {
                    acc = acc * (x.clone() - p.clone());
                }
            }
            for y in &cur[j + 1..] {
                let d = x.clone() - y.clone();
                if d.is_zero() {
                    return Err(Error::DivisionByZero(format!("coinciding roots in block {a}")));
                }
                acc = acc * (d.clone() + one.clone()) / d;
            }
        }
    }
    Ok(acc)
}

/// `W_I(t; b)` together with the sum of moduli of its symmetrized terms,
/// the natural scale for judging cancellation.
pub fn weight_function_with_scale<S: Scalar>(
    index: &IndexDecomposition,
    t: &BetheRoots<S>,
    b: &[S],
) -> Result<(S, f64)> {
    let n_colours = t.blocks.len() + 1;
    // the explicit formula is written for the opposite tensor order
    let colours: Vec<usize> = index.colours.iter().rev().copied().collect();
    let b: Vec<S> = b.iter().rev().cloned().collect();
    let lists = index_lists(&colours, n_colours);
    for a in 1..n_colours {
        if lists[a].len() != t.blocks[a - 1].len() {
            return Err(Error::Invalid(format!(
                "block {a} has {} roots, the index decomposition needs {}",
                t.blocks[a - 1].len(),
                lists[a].len()
            )));
        }
    }
    let perms: Vec<Vec<(Vec<usize>, i64)>> = t.blocks.iter().map(|blk| signed_permutations(blk.len())).collect();
    let mut choice = vec![0usize; perms.len()];
    let mut total = S::zero();
    let mut scale = 0.0;
    loop {
        let permuted: Vec<Vec<S>> = t
            .blocks
            .iter()
            .zip(&choice)
            .zip(&perms)
            .map(|((blk, &c), ps)| ps[c].0.iter().map(|&i| blk[i].clone()).collect())
            .collect();
        let term = u_function(&lists, &permuted, &b)?;
        scale += term.abs();
        total = total + term;
        // odometer over the product of the block symmetric groups
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok((total, scale));
            }
            choice[pos] += 1;
            if choice[pos] < perms[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Weight function `W_I(t; b)`, symmetrized over each block of roots.
pub fn weight_function<S: Scalar>(index: &IndexDecomposition, t: &BetheRoots<S>, b: &[S]) -> Result<S> {
    weight_function_with_scale(index, t, b).map(|(w, _)| w)
}

/// Bethe vector `sum_I W_I(t, b) v_I` in the basis of `ws`, with the
/// cancellation scale `sum_I sum |terms|`.
pub fn bethe_vector_with_scale<S: Scalar>(ws: &WeightSpace, t: &BetheRoots<S>, b: &[S]) -> Result<(Vec<S>, f64)> {
    let mut v = Vec::with_capacity(ws.dim());
    let mut scale = 0.0;
    for index in &ws.basis {
        let (w, s) = weight_function_with_scale(index, t, b)?;
        v.push(w);
        scale += s;
    }
    Ok((v, scale))
}

/// Bethe vector `sum_I W_I(t, b) v_I` in the basis of `ws`.
pub fn bethe_vector<S: Scalar>(ws: &WeightSpace, t: &BetheRoots<S>, b: &[S]) -> Result<Vec<S>> {
    bethe_vector_with_scale(ws, t, b).map(|(v, _)| v)
}

/// Whether a Bethe vector is zero: exactly in exact mode, relative to its
/// cancellation scale in float mode.
pub fn is_zero_vector<S: Scalar>(v: &[S], scale: f64, eps: f64) -> bool {
    if S::EXACT {
        v.iter().all(|x| x.is_zero())
    } else {
        norm(v) <= eps * scale
    }
}

/// The functions `χ_1, .., χ_N` whose first-order factors build the
/// fundamental operator.
pub fn chi_functions<S: Scalar>(t: &BetheRoots<S>, prob: &BetheProblem<S>) -> Vec<RatFun<S>> {
    let n = prob.n_colours();
    let one = S::one();
    (1..=n)
        .map(|a| {
            let prev = previous_block(t, &prob.b, a);
            let cur: &[S] = if a < n { &t.blocks[a - 1] } else { &[] };
            let mut num_roots: Vec<S> = prev.iter().map(|p| p.clone() - one.clone()).collect();
            num_roots.extend(cur.iter().map(|x| x.clone() + one.clone()));
            let mut den_roots: Vec<S> = prev.to_vec();
            den_roots.extend(cur.iter().cloned());
            RatFun::new(Poly::from_roots(&num_roots).scale(&prob.q[a - 1]), Poly::from_roots(&den_roots))
        })
        .collect()
}

/// `c_k(u, t, b)`: the sum over `a_1 < .. < a_k` of
/// `χ_{a_1}(u) χ_{a_2}(u - 1) .. χ_{a_k}(u - k + 1)`.
pub fn eigenvalue_ck<S: Scalar>(k: usize, u: &S, t: &BetheRoots<S>, prob: &BetheProblem<S>) -> Result<S> {
    let chi = chi_functions(t, prob);
    let n = chi.len();
    // dp[a] sums the products over sequences ending at colour a (0 = empty)
    let mut dp = vec![S::zero(); n + 1];
    dp[0] = S::one();
    for m in 0..k {
        let at = u.clone() - S::from_i64(m as i64);
        let mut next = vec![S::zero(); n + 1];
        let mut prefix = S::zero();
        for a in 0..n {
            prefix = prefix + dp[a].clone();
            next[a + 1] = prefix.clone() * chi[a].eval(&at)?;
        }
        dp = next;
    }
    Ok(dp.into_iter().fold(S::zero(), |acc, x| acc + x))
}

/// `c_0(u), .., c_N(u)` at one point.
pub fn eigenvalues_at<S: Scalar>(u: &S, t: &BetheRoots<S>, prob: &BetheProblem<S>) -> Result<Vec<S>> {
    (0..=prob.n_colours()).map(|k| eigenvalue_ck(k, u, t, prob)).collect()
}

/// `(1 - χ_1(u) τ) .. (1 - χ_N(u) τ) = sum (-1)^k c_k(u) τ^k`.
pub fn fundamental_operator<S: Scalar>(t: &BetheRoots<S>, prob: &BetheProblem<S>) -> DiffOp<S> {
    product_of_first_order(&chi_functions(t, prob))
}

/// The rational functions `c_k(u)` read off an operator in the form
/// `sum (-1)^k c_k τ^k`.
pub fn operator_eigenvalues<S: Scalar>(d: &DiffOp<S>, n_colours: usize) -> Vec<RatFun<S>> {
    (0..=n_colours)
        .map(|k| {
            let c = d.coeff(k as i64);
            if k % 2 == 1 {
                c.neg()
            } else {
                c
            }
        })
        .collect()
}

/// Shape of the kernel sought by [`kernel_quasiexp`].
#[derive(Clone, Debug, PartialEq)]
pub enum KernelShape {
    /// `q_k^u p_k(u)` with `p_k` monic of degree `λ_k`, all `q_k` distinct.
    QuasiExp,
    /// Polynomials `f_k` monic of degree `d_k = λ_k + N - k` with the
    /// coefficients at the other exponents `d_i` set to zero.
    Polynomial,
}

impl KernelShape {
    pub fn for_problem<S: Scalar>(prob: &BetheProblem<S>) -> Result<Self> {
        if prob.q_is_ones() {
            if prob.lambda.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Invalid(format!("q = 1 needs a partition, got {:?}", prob.lambda)));
            }
            Ok(KernelShape::Polynomial)
        } else if let Some((i, j)) = prob.repeated_q() {
            Err(Error::RepeatedQ { i, j })
        } else {
            Ok(KernelShape::QuasiExp)
        }
    }
}

/// Degrees `d_k = λ_k + N - k` (1-based `k`) of the polynomial kernel.
pub fn exponent_set(lambda: &[usize]) -> Vec<usize> {
    let n = lambda.len();
    lambda.iter().enumerate().map(|(i, &l)| l + n - 1 - i).collect()
}

/// Fujiwara bound on the moduli of the poles of the operator coefficients,
/// plus one.
fn pole_radius<S: Scalar>(d: &DiffOp<S>) -> f64 {
    let mut r = 0.0f64;
    for (_, c) in d.terms() {
        let den = c.den();
        let lead = den.leading().abs();
        if let Some(deg) = den.degree() {
            for k in 0..deg {
                r = r.max(libm::pow(den.coeff(k).abs() / lead, 1.0 / (deg - k) as f64));
            }
        }
    }
    1.0 + 2.0 * r
}

/// Kernel of a difference operator of order `N` in the shape dictated by
/// `prob`: one monic element per colour, solved by matching coefficients of
/// the operator with cleared denominators, then checked for exact (or
/// relative) annihilation.
pub fn kernel_quasiexp<S: Scalar>(d: &DiffOp<S>, prob: &BetheProblem<S>, eps: f64) -> Result<Vec<QuasiExp<S>>> {
    let shape = KernelShape::for_problem(prob)?;
    let n = prob.n_colours();
    let exps = exponent_set(&prob.lambda);
    let radius = pole_radius(d);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (base, deg, free): (S, usize, Vec<usize>) = match shape {
            KernelShape::QuasiExp => (prob.q[k].clone(), prob.lambda[k], (0..prob.lambda[k]).collect()),
            KernelShape::Polynomial => {
                let deg = exps[k];
                (S::one(), deg, (0..deg).filter(|e| !exps.contains(e)).collect())
            }
        };
        out.push(solve_kernel_element(d, base, deg, &free, radius, eps)?);
    }
    Ok(out)
}

fn solve_kernel_element<S: Scalar>(
    d: &DiffOp<S>,
    base: S,
    deg: usize,
    free: &[usize],
    radius: f64,
    eps: f64,
) -> Result<QuasiExp<S>> {
    // clear denominators: D ~ sum_m p_m(u) tau^m with polynomial p_m, and
    // sum_m p_m(u) base^-m g(u - m) = 0 coefficientwise in u
    let terms: Vec<(i64, &RatFun<S>)> = d.terms().collect();
    let cleared: Vec<(i64, Poly<S>)> = terms
        .iter()
        .enumerate()
        .map(|(i, (m, c))| {
            let others = terms.iter().enumerate().filter(|(j, _)| *j != i).fold(Poly::one(), |acc, (_, (_, o))| acc.mul(o.den()));
            (*m, c.num().mul(&others).scale(&base.powi(-*m)))
        })
        .collect();
    let image = |e: usize| {
        let mono = Poly::monomial(S::one(), e);
        cleared.iter().fold(Poly::zero(), |acc, (m, p)| acc.add(&p.mul(&mono.shift_int(*m))))
    };
    let columns: Vec<Poly<S>> = free.iter().map(|&e| image(e)).collect();
    let target = image(deg);
    let height = columns.iter().chain([&target]).filter_map(Poly::degree).max().map_or(0, |h| h + 1);
    let mut rows = Vec::with_capacity(height);
    let mut rhs = Vec::with_capacity(height);
    for r in 0..height {
        rows.push(columns.iter().map(|c| c.coeff(r)).collect::<Vec<S>>());
        rhs.push(-target.coeff(r));
    }
    let coeffs = if free.is_empty() {
        Vec::new()
    } else {
        match Matrix::from_rows(rows).solve(&rhs, eps) {
            Ok(x) => x,
            Err(Error::RankDeficient(defect)) => return Err(Error::KernelDefect { expected: deg, defect }),
            Err(Error::Inconsistent(_)) => return Err(Error::KernelDefect { expected: deg, defect: 1 }),
            Err(e) => return Err(e),
        }
    };
    let mut poly = vec![S::zero(); deg + 1];
    poly[deg] = S::one();
    for (x, &e) in coeffs.iter().zip(free) {
        poly[e] = x.clone();
    }
    let f = QuasiExp::new(base, Poly::new(poly));
    let ok = if S::EXACT {
        d.annihilates(&f, 0.0)
    } else {
        annihilation_residual(d, &f, radius) <= libm::sqrt(eps)
    };
    if !ok {
        return Err(Error::KernelDefect { expected: deg, defect: 1 });
    }
    Ok(f)
}

/// `(m, c_m(u) base^-m)` for every term, `None` at a pole.
fn shift_weights<S: Scalar>(terms: &[(i64, RatFun<S>)], base: &S, u: &S) -> Option<Vec<(i64, S)>> {
    terms.iter().map(|(m, c)| c.eval(u).ok().map(|v| (*m, v * base.powi(-*m)))).collect()
}

/// Largest `|D f (u)| / sum_m |c_m(u) f(u - m)|` over fresh sample points.
pub fn annihilation_residual<S: Scalar>(d: &DiffOp<S>, f: &QuasiExp<S>, radius: f64) -> f64 {
    let terms: Vec<(i64, RatFun<S>)> = d.terms().map(|(m, c)| (m, c.clone())).collect();
    let mut worst = 0.0f64;
    let mut checked = 0;
    let mut k = 1000;
    while checked < 3 && k < 1100 {
        let u = S::sample_point(k, radius * 1.1);
        k += 1;
        let Some(weights) = shift_weights(&terms, &f.base, &u) else { continue };
        let mut total = S::zero();
        let mut scale = 0.0;
        for (m, w) in &weights {
            let term = w.clone() * f.poly.eval(&(u.clone() - S::from_i64(*m)));
            scale += term.abs();
            total = total + term;
        }
        worst = worst.max(if scale == 0.0 { 0.0 } else { total.abs() / scale });
        checked += 1;
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::DiffOp;
    use crate::scalar::{int, rat, Complex, Rational};
    use crate::tensorrep::enumerate_basis;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn problem(lambda: &[usize], q: &[i64], b: &[i64]) -> BetheProblem<Rational> {
        BetheProblem::new(lambda.to_vec(), ints(q), ints(b)).unwrap()
    }

    #[test]
    fn block_sizes_are_tail_sums() {
        assert_eq!(block_sizes(&[2, 1, 1]), vec![2, 1]);
        assert_eq!(block_sizes(&[3]), Vec::<usize>::new());
    }

    #[test]
    fn trivial_weight_has_no_equations() {
        let p = problem(&[2, 0], &[1, 2], &[0, 2]);
        assert!(bae_residual(&BetheRoots::empty(2), &p).is_empty());
    }

    #[test]
    fn quadratic_example() {
        let p = problem(&[1, 1], &[1, 2], &[0, 2]).map(|x| x.to_complex());
        let t = BetheRoots::new(vec![vec![Complex::new(2.0 + libm::sqrt(3.0), 0.0)]]);
        assert!(bae_residual(&t, &p)[0].norm() < 1e-12);
        let p1 = problem(&[1, 1], &[1, 1], &[0, 2]);
        let t = BetheRoots::new(vec![vec![rat(1, 2)]]);
        assert_eq!(bae_residual(&t, &p1), vec![int(0)]);
    }

    #[test]
    fn one_site_closed_form() {
        let q = ints(&[1, 2, 4]);
        let t = solve_n1(2, &q, &int(0)).unwrap();
        assert_eq!(t.blocks, vec![vec![rat(1, 3)], vec![rat(4, 3)]]);
        assert_eq!(solve_n1(0, &q, &int(0)).unwrap().flat(), Vec::<Rational>::new());
        assert_eq!(solve_n1(1, &ints(&[1, 3]), &int(5)).unwrap().flat(), vec![rat(11, 2)]);
        assert!(solve_n1(1, &ints(&[2, 2]), &int(0)).is_err());
        for k in 0..3 {
            let mut lambda = vec![0; 3];
            lambda[k] = 1;
            let p = BetheProblem::new(lambda, q.clone(), ints(&[7])).unwrap();
            let t = solve_n1(k, &q, &int(7)).unwrap();
            assert!(bae_residual(&t, &p).iter().all(|r| *r == int(0)));
        }
    }

    #[test]
    fn weight_functions_two_sites() {
        let b = ints(&[0, 2]);
        let t = BetheRoots::new(vec![vec![rat(1, 2)]]);
        let ws = enumerate_basis(2, 2, &[1, 1]).unwrap();
        let w: Vec<Rational> = ws.basis.iter().map(|i| weight_function(i, &t, &b).unwrap()).collect();
        assert_eq!(w, vec![rat(1, 2), rat(-1, 2)]);
        let trivial = enumerate_basis(2, 2, &[2, 0]).unwrap();
        assert_eq!(bethe_vector(&trivial, &BetheRoots::empty(2), &b).unwrap(), vec![int(1)]);
    }

    #[test]
    fn symmetrized_weight_function_is_polynomial_in_each_root() {
        // W is a polynomial, so equal roots are a removable singularity:
        // nearby values stay bounded and converge
        let ws = enumerate_basis(2, 3, &[1, 2]).unwrap();
        let b = ints(&[0, 2, 4]);
        for index in &ws.basis {
            let near = |e: Rational| {
                let t = BetheRoots::new(vec![vec![rat(1, 3), rat(1, 3) + e]]);
                weight_function(index, &t, &b).unwrap()
            };
            let (a, c) = (near(rat(1, 1000)), near(rat(1, 2000)));
            assert!((a - c).abs() < 1e-2);
        }
    }

    #[test]
    fn one_site_bethe_vector_is_basis_vector() {
        let q = ints(&[1, 2, 4]);
        for k in 0..3 {
            let mut lambda = vec![0; 3];
            lambda[k] = 1;
            let ws = enumerate_basis(3, 1, &lambda).unwrap();
            let t = solve_n1(k, &q, &int(3)).unwrap();
            let v = bethe_vector(&ws, &t, &ints(&[3])).unwrap();
            assert_eq!(v.len(), 1);
            assert!(!v[0].is_zero());
        }
    }

    #[test]
    fn fundamental_operator_example() {
        let p = problem(&[1, 0], &[1, 2], &[0]);
        let d = fundamental_operator(&BetheRoots::empty(2), &p);
        let x1 = RatFun::new(Poly::linear(int(-1)), Poly::var());
        let expect = DiffOp::identity()
            .sub(&DiffOp::term(1, x1))
            .compose(&DiffOp::identity().sub(&DiffOp::term(1, RatFun::constant(int(2)))));
        assert_eq!(d, expect);
        assert_eq!(d.coeff(0), RatFun::one());
    }

    #[test]
    fn top_eigenvalue_is_independent_of_roots() {
        let p = problem(&[1, 1, 1], &[1, 2, 4], &[0, 2, 4]);
        let u = rat(7, 3);
        let expect = crate::yangian::scalar_transfer(&p.q, &p.b).eval(&u).unwrap();
        for shift in 0..3 {
            let t = BetheRoots::new(vec![vec![rat(1, 5) + int(shift), rat(9, 7)], vec![rat(-3, 11)]]);
            assert_eq!(eigenvalue_ck(3, &u, &t, &p).unwrap(), expect);
        }
    }

    #[test]
    fn two_colour_eigenvalues_expand_the_product() {
        let p = problem(&[1, 1], &[1, 3], &[0, 2]);
        let t = BetheRoots::new(vec![vec![rat(5, 4)]]);
        let chi = chi_functions(&t, &p);
        let u = rat(9, 2);
        let at = |c: &RatFun<Rational>, x: Rational| c.eval(&x).unwrap();
        let c1 = at(&chi[0], u.clone()) + at(&chi[1], u.clone());
        let c2 = at(&chi[0], u.clone()) * at(&chi[1], u.clone() - int(1));
        assert_eq!(eigenvalue_ck(1, &u, &t, &p).unwrap(), c1);
        assert_eq!(eigenvalue_ck(2, &u, &t, &p).unwrap(), c2);
        let d = fundamental_operator(&t, &p);
        let cs = operator_eigenvalues(&d, 2);
        assert_eq!(cs[1].eval(&u).unwrap(), c1);
        assert_eq!(cs[2].eval(&u).unwrap(), c2);
    }

    #[test]
    fn kernel_of_worked_example() {
        let p = problem(&[1, 0], &[1, 2], &[0]);
        let d = fundamental_operator(&BetheRoots::empty(2), &p);
        let k = kernel_quasiexp(&d, &p, 1e-12).unwrap();
        assert_eq!(k[0], QuasiExp::new(int(1), Poly::new(ints(&[3, 1]))));
        assert_eq!(k[1], QuasiExp::exponential(int(2)));
        let pc = p.map(|x| x.to_complex());
        let kc = kernel_quasiexp(&d.map(|x| x.to_complex()), &pc, 1e-12).unwrap();
        assert!(kc[0].poly.approx_eq(&Poly::new(vec![Complex::new(3.0, 0.0), Complex::new(1.0, 0.0)]), 1e-9));
    }

    #[test]
    fn polynomial_kernel_at_q_one() {
        let p = problem(&[1, 1], &[1, 1], &[0, 2]);
        let t = BetheRoots::new(vec![vec![rat(1, 2)]]);
        let d = fundamental_operator(&t, &p);
        let k = kernel_quasiexp(&d, &p, 1e-12).unwrap();
        // degrees d = (2, 1); u^1 is excluded from f_1
        assert_eq!(k[0].poly.degree(), Some(2));
        assert!(k[0].poly.coeff(1).is_zero());
        assert_eq!(k[1].poly, Poly::new(vec![rat(1, 2), int(1)]));
    }

    #[test]
    fn kernel_shape_validation() {
        assert!(KernelShape::for_problem(&problem(&[1, 1], &[2, 2], &[0, 2])).is_err());
        assert!(KernelShape::for_problem(&problem(&[0, 1], &[1, 1], &[0])).is_err());
    }
}
