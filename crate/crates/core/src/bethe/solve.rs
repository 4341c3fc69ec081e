//! Numerical solution of the Bethe ansatz equations by homotopy
//! continuation in complex doubles.
//!
//! Distinct twists start from widely separated evaluation points, where the
//! solutions split into clusters given by the one-site closed form. The
//! `q = 1` case starts from the Gaudin-limit system, solved by seeded
//! multi-start Newton, and scales it back down.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{bae_relative_residual, bethe_vector_with_scale, block_sizes, is_zero_vector, BetheProblem, BetheRoots};
use crate::combinat::signed_permutations;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Complex, Scalar};
use crate::tensorrep::{enumerate_basis, singular_basis};

/// Tolerances and knobs of the solvers.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverOptions {
    /// Scale of the evaluation points at the start of the homotopy.
    pub y0: f64,
    /// Size of the complex detour `exp(i β σ (1 - σ))` that keeps paths
    /// away from real singular points.
    pub bump: f64,
    /// Relative Newton step size that counts as converged.
    pub newton_tol: f64,
    pub max_newton_iter: usize,
    /// Two solutions closer than this (relative) are the same.
    pub dedup_tol: f64,
    /// Minimal distance between roots that must differ.
    pub offdiag_tol: f64,
    /// Largest accepted relative residual of a polished solution.
    pub residual_tol: f64,
    /// Newton starts per expected solution in the Gaudin stage.
    pub starts_per_dim: usize,
    pub seed: u64,
    /// Step budget of one continuation path.
    pub max_steps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            y0: 1e3,
            bump: 0.5,
            newton_tol: 1e-12,
            max_newton_iter: 200,
            dedup_tol: 1e-6,
            offdiag_tol: 1e-8,
            residual_tol: 1e-9,
            starts_per_dim: 50,
            seed: 0,
            max_steps: 100_000,
        }
    }
}

/// Which homotopy to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Pairwise distinct twists; one start per basis vector of `V_λ`.
    DistinctQ,
    /// All twists equal to one; starts from the Gaudin limit.
    Ones,
}

impl Strategy {
    pub fn for_problem(prob: &BetheProblem<Complex>) -> Result<Self> {
        if prob.q_is_ones() {
            Ok(Strategy::Ones)
        } else if let Some((i, j)) = prob.repeated_q() {
            Err(Error::RepeatedQ { i, j })
        } else {
            Ok(Strategy::DistinctQ)
        }
    }
}

/// One polished solution with its diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct BetheSolution {
    pub roots: BetheRoots<Complex>,
    /// Relative residual of the polynomial equations.
    pub residual: f64,
    pub offdiag_margin: f64,
    /// Bethe vector in the basis of `V_λ`.
    pub vector: Vec<Complex>,
}

/// Deduplicated solutions, compared against the expected count.
#[derive(Clone, Debug, PartialEq)]
pub struct BetheSolutionSet {
    pub solutions: Vec<BetheSolution>,
    /// Solutions whose Bethe vector vanishes; not counted.
    pub zero_vectors: Vec<BetheSolution>,
    /// `dim V_λ` for distinct twists, `dim V_λ^sing` for `q = 1`.
    pub expected: usize,
    /// Paths that failed to reach the target or to polish.
    pub failed_paths: usize,
}

impl BetheSolutionSet {
    pub fn count(&self) -> usize {
        self.solutions.len()
    }

    pub fn shortfall(&self) -> bool {
        self.solutions.len() < self.expected
    }
}

#[derive(Clone, Copy, Debug)]
enum Ref {
    Var(usize),
    Param(usize),
}

/// `coef * prod (x_var - ref + shift)`.
#[derive(Clone, Debug)]
struct Term {
    coef: Complex,
    factors: Vec<(Ref, f64)>,
}

/// The equation for variable `var`: `lhs - rhs = 0`.
#[derive(Clone, Debug)]
struct Equation {
    var: usize,
    lhs: Term,
    rhs: Term,
}

/// Values and derivatives of the system at one point.
struct Eval {
    f: Vec<Complex>,
    scale: Vec<f64>,
    jx: Matrix<Complex>,
    jb: Matrix<Complex>,
}

/// The denominator-free equations with their sparsity pattern.
#[derive(Clone, Debug)]
struct System {
    sizes: Vec<usize>,
    n_params: usize,
    eqs: Vec<Equation>,
}

impl System {
    fn new(lambda: &[usize], q: &[Complex], n_params: usize) -> Self {
        let sizes = block_sizes(lambda);
        let offsets: Vec<usize> = sizes.iter().scan(0, |acc, &l| {
            let o = *acc;
            *acc += l;
            Some(o)
        }).collect();
        let mut eqs = Vec::new();
        for (a, &l) in sizes.iter().enumerate() {
            let prev: Vec<Ref> = if a == 0 {
                (0..n_params).map(Ref::Param).collect()
            } else {
                (0..sizes[a - 1]).map(|j| Ref::Var(offsets[a - 1] + j)).collect()
            };
            let next: Vec<Ref> = match sizes.get(a + 1) {
                Some(&ln) => (0..ln).map(|j| Ref::Var(offsets[a + 1] + j)).collect(),
                None => Vec::new(),
            };
            for j in 0..l {
                let var = offsets[a] + j;
                let own: Vec<Ref> = (0..l).filter(|&k| k != j).map(|k| Ref::Var(offsets[a] + k)).collect();
                let side = |coef: Complex, sp: f64, so: f64, sn: f64| Term {
                    coef,
                    factors: prev
                        .iter()
                        .map(|&r| (r, sp))
                        .chain(own.iter().map(|&r| (r, so)))
                        .chain(next.iter().map(|&r| (r, sn)))
                        .collect(),
                };
                eqs.push(Equation { var, lhs: side(q[a], 1.0, -1.0, 0.0), rhs: side(q[a + 1], 0.0, 1.0, -1.0) });
            }
        }
        System { sizes, n_params, eqs }
    }

    fn n_vars(&self) -> usize {
        self.eqs.len()
    }

    fn eval(&self, x: &[Complex], b: &[Complex]) -> Eval {
        let n = self.n_vars();
        let mut ev = Eval {
            f: vec![Complex::zero(); n],
            scale: vec![0.0; n],
            jx: Matrix::zeros(n, n),
            jb: Matrix::zeros(n, self.n_params),
        };
        for (i, eq) in self.eqs.iter().enumerate() {
            for (term, sign) in [(&eq.lhs, 1.0), (&eq.rhs, -1.0)] {
                let xv = x[eq.var];
                let vals: Vec<Complex> = term
                    .factors
                    .iter()
                    .map(|(r, c)| {
                        let y = match *r {
                            Ref::Var(k) => x[k],
                            Ref::Param(s) => b[s],
                        };
                        xv - y + *c
                    })
                    .collect();
                let m = vals.len();
                // prefix and suffix products give every partial product
                let mut prefix = vec![Complex::one(); m + 1];
                for k in 0..m {
                    prefix[k + 1] = prefix[k] * vals[k];
                }
                let mut suffix = Complex::one();
                let coef = term.coef * sign;
                for k in (0..m).rev() {
                    let partial = coef * prefix[k] * suffix;
                    ev.jx[(i, eq.var)] += partial;
                    match term.factors[k].0 {
                        Ref::Var(v) => ev.jx[(i, v)] -= partial,
                        Ref::Param(s) => ev.jb[(i, s)] -= partial,
                    }
                    suffix *= vals[k];
                }
                let value = coef * prefix[m];
                ev.f[i] += value;
                ev.scale[i] += value.norm();
            }
        }
        // equations of different degrees live on different scales; divide
        // each row by the size of its terms so pivoting compares like with like
        for i in 0..n {
            let s = if ev.scale[i] > 0.0 { 1.0 / ev.scale[i] } else { 1.0 };
            ev.f[i] *= s;
            for k in 0..n {
                ev.jx[(i, k)] *= s;
            }
            for k in 0..self.n_params {
                ev.jb[(i, k)] *= s;
            }
        }
        ev
    }
}

fn max_norm(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Newton step `-J^-1 F`, or `None` when the Jacobian is singular.
fn newton_step(ev: &Eval) -> Option<Vec<Complex>> {
    let rhs: Vec<Complex> = ev.f.iter().map(|v| -*v).collect();
    let step = ev.jx.solve(&rhs, 1e-14).ok()?;
    step.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(step)
}

/// Full Newton iteration to a relative step below `tol`.
fn newton(sys: &System, x0: &[Complex], b: &[Complex], tol: f64, max_iter: usize) -> Option<Vec<Complex>> {
    let mut x = x0.to_vec();
    if x.is_empty() {
        return Some(x);
    }
    for _ in 0..max_iter {
        let step = newton_step(&sys.eval(&x, b))?;
        for (xi, s) in x.iter_mut().zip(&step) {
            *xi += *s;
        }
        if max_norm(&step) <= tol * (1.0 + max_norm(&x)) {
            return Some(x);
        }
    }
    None
}

/// Smallest distance between two variables or a variable and a parameter.
fn local_scale(x: &[Complex], b: &[Complex]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            m = m.min((x[i] - x[j]).norm());
        }
        for p in b {
            m = m.min((x[i] - *p).norm());
        }
    }
    m.max(1e-8)
}

/// A path `σ ↦ b(σ)` on `[0, 1]` with its derivative.
trait ParamPath {
    fn at(&self, sigma: f64) -> (Vec<Complex>, Vec<Complex>);
}

/// `b_s + (ρ(σ) - 1)(s + 1) e^{iβσ(1-σ)}` with `ρ = Y_0^{1-σ}`.
struct SpreadPath<'a> {
    b: &'a [Complex],
    y0: f64,
    bump: f64,
}

impl ParamPath for SpreadPath<'_> {
    fn at(&self, sigma: f64) -> (Vec<Complex>, Vec<Complex>) {
        let ln = libm::log(self.y0);
        let rho = libm::exp(ln * (1.0 - sigma));
        let phase = Complex::from_polar(1.0, self.bump * sigma * (1.0 - sigma));
        let dphase = phase * Complex::new(0.0, self.bump * (1.0 - 2.0 * sigma));
        let mut vals = Vec::with_capacity(self.b.len());
        let mut ders = Vec::with_capacity(self.b.len());
        for (s, bs) in self.b.iter().enumerate() {
            let w = (s + 1) as f64;
            vals.push(*bs + phase * ((rho - 1.0) * w));
            ders.push(dphase * ((rho - 1.0) * w) + phase * (-ln * rho * w));
        }
        (vals, ders)
    }
}

/// `ρ(σ) d` with `ρ = Y_0^{1-σ} e^{iβσ(1-σ)}`.
struct ScalePath<'a> {
    d: &'a [Complex],
    y0: f64,
    bump: f64,
}

impl ScalePath<'_> {
    fn rho(&self, sigma: f64) -> (Complex, Complex) {
        let ln = libm::log(self.y0);
        let r = Complex::from_polar(libm::exp(ln * (1.0 - sigma)), self.bump * sigma * (1.0 - sigma));
        (r, r * Complex::new(-ln, self.bump * (1.0 - 2.0 * sigma)))
    }
}

impl ParamPath for ScalePath<'_> {
    fn at(&self, sigma: f64) -> (Vec<Complex>, Vec<Complex>) {
        let (r, dr) = self.rho(sigma);
        (self.d.iter().map(|x| *x * r).collect(), self.d.iter().map(|x| *x * dr).collect())
    }
}

/// Tracks one solution from `σ = 0` to `σ = 1` by Euler prediction and a
/// short Newton correction, halving the step whenever the corrector fails
/// to contract or moves by more than a tenth of the local root spacing.
fn track(sys: &System, path: &dyn ParamPath, x0: &[Complex], opts: &SolverOptions) -> Result<Vec<Complex>> {
    let mut x = x0.to_vec();
    if x.is_empty() {
        return Ok(x);
    }
    let (mut sigma, mut h) = (0.0f64, 0.01f64);
    let h_max = 0.05;
    let mut streak = 0;
    for _ in 0..opts.max_steps {
        if sigma >= 1.0 {
            return Ok(x);
        }
        h = h.min(1.0 - sigma);
        let (b, db) = path.at(sigma);
        let ev = sys.eval(&x, &b);
        let rhs: Vec<Complex> = ev.jb.mul_vec(&db).iter().map(|v| -*v).collect();
        let Ok(dx) = ev.jx.solve(&rhs, 1e-14) else {
            return Err(Error::Nonconvergence(format!("singular Jacobian at sigma = {sigma}")));
        };
        let next_sigma = if 1.0 - sigma - h < 1e-12 { 1.0 } else { sigma + h };
        let (b1, _) = path.at(next_sigma);
        let pred: Vec<Complex> = x.iter().zip(&dx).map(|(xi, v)| *xi + *v * h).collect();
        match correct(sys, &pred, &b1) {
            Some(xn) => {
                x = xn;
                sigma = next_sigma;
                streak += 1;
                if streak >= 3 {
                    h = (2.0 * h).min(h_max);
                    streak = 0;
                }
            }
            None => {
                h *= 0.5;
                streak = 0;
                if h < 1e-12 {
                    return Err(Error::Nonconvergence(format!("step size underflow at sigma = {sigma}")));
                }
            }
        }
    }
    Err(Error::Nonconvergence(format!("step budget exhausted at sigma = {sigma}")))
}

fn correct(sys: &System, pred: &[Complex], b: &[Complex]) -> Option<Vec<Complex>> {
    let limit = 0.1 * local_scale(pred, b);
    let mut x = pred.to_vec();
    let mut last = f64::INFINITY;
    for _ in 0..6 {
        let step = newton_step(&sys.eval(&x, b))?;
        let size = max_norm(&step);
        if size > limit || size > 0.5 * last {
            return None;
        }
        for (xi, s) in x.iter_mut().zip(&step) {
            *xi += *s;
        }
        if size <= 1e-10 * (1.0 + max_norm(&x)) {
            return Some(x);
        }
        last = size;
    }
    None
}

/// Start points of the distinct-twist homotopy at `σ = 0`: one cluster
/// solution per basis vector `v_I` of `V_λ`, with slot `s` of colour `c`
/// contributing the one-site roots `b_s(0) + sum_{j < a} q_j / (q_c - q_j)`
/// to blocks `a = 1..c`.
pub fn homotopy_starts(prob: &BetheProblem<Complex>, opts: &SolverOptions) -> Result<Vec<BetheRoots<Complex>>> {
    let n = prob.n_colours();
    let ws = enumerate_basis(n, prob.n_slots(), &prob.lambda)?;
    let path = SpreadPath { b: &prob.b, y0: opts.y0, bump: opts.bump };
    let (b0, _) = path.at(0.0);
    let mut starts = Vec::with_capacity(ws.dim());
    for index in &ws.basis {
        let mut blocks = vec![Vec::new(); n - 1];
        for (s, &c) in index.colours.iter().enumerate() {
            let mut acc = b0[s];
            for a in 0..c {
                let d = prob.q[c] - prob.q[a];
                if d.norm() == 0.0 {
                    return Err(Error::RepeatedQ { i: a, j: c });
                }
                acc += prob.q[a] / d;
                blocks[a].push(acc);
            }
        }
        starts.push(BetheRoots::new(blocks));
    }
    Ok(starts)
}

/// Polishes a start at `σ = 0` and tracks it to the target problem.
pub fn track_start(
    prob: &BetheProblem<Complex>,
    strategy: Strategy,
    start: &BetheRoots<Complex>,
    opts: &SolverOptions,
) -> Result<BetheRoots<Complex>> {
    let sys = System::new(&prob.lambda, &prob.q, prob.n_slots());
    let x0 = start.flat();
    let path: alloc::boxed::Box<dyn ParamPath + '_> = match strategy {
        Strategy::DistinctQ => alloc::boxed::Box::new(SpreadPath { b: &prob.b, y0: opts.y0, bump: opts.bump }),
        Strategy::Ones => alloc::boxed::Box::new(ScalePath { d: &prob.b, y0: opts.y0, bump: opts.bump }),
    };
    let (b0, _) = path.at(0.0);
    let x0 = newton(&sys, &x0, &b0, opts.newton_tol, opts.max_newton_iter)
        .ok_or_else(|| Error::Nonconvergence("start point does not polish".into()))?;
    let x1 = track(&sys, path.as_ref(), &x0, opts)?;
    let x1 = newton(&sys, &x1, &prob.b, opts.newton_tol, opts.max_newton_iter)
        .ok_or_else(|| Error::Nonconvergence("end point does not polish".into()))?;
    Ok(BetheRoots::from_flat(&sys.sizes, &x1))
}

/// Residual and Jacobian of the Gaudin-limit equations
/// `sum 1/(v - prev) - 2 sum 1/(v - own) + sum 1/(v - next) = 0`.
///
/// The Jacobian is that of the equations multiplied by their denominators
/// (then divided back row by row), which keeps Newton from running off to
/// infinity where the rational form decays.
fn gaudin_eval(sizes: &[usize], x: &[Complex], d: &[Complex]) -> Option<(Vec<Complex>, Matrix<Complex>)> {
    let n = x.len();
    let mut f = vec![Complex::zero(); n];
    let mut jg: Matrix<Complex> = Matrix::zeros(n, n);
    let mut jlog: Matrix<Complex> = Matrix::zeros(n, n);
    let mut off = 0;
    let mut offsets = Vec::with_capacity(sizes.len());
    for &l in sizes {
        offsets.push(off);
        off += l;
    }
    for (a, &l) in sizes.iter().enumerate() {
        for i in 0..l {
            let p = offsets[a] + i;
            let mut add = |other: Option<usize>, value: Complex, weight: f64| -> Option<()> {
                let diff = x[p] - value;
                if diff.norm() < 1e-12 {
                    return None;
                }
                let inv = Complex::one() / diff;
                f[p] += inv * weight;
                let d2 = inv * inv * weight;
                jg[(p, p)] -= d2;
                jlog[(p, p)] += inv;
                if let Some(o) = other {
                    jg[(p, o)] += d2;
                    jlog[(p, o)] -= inv;
                }
                Some(())
            };
            if a == 0 {
                for ds in d {
                    add(None, *ds, 1.0)?;
                }
            } else {
                for k in 0..sizes[a - 1] {
                    add(Some(offsets[a - 1] + k), x[offsets[a - 1] + k], 1.0)?;
                }
            }
            for k in (0..l).filter(|&k| k != i) {
                add(Some(offsets[a] + k), x[offsets[a] + k], -2.0)?;
            }
            if a + 1 < sizes.len() {
                for k in 0..sizes[a + 1] {
                    add(Some(offsets[a + 1] + k), x[offsets[a + 1] + k], 1.0)?;
                }
            }
        }
    }
    for p in 0..n {
        for k in 0..n {
            let v = jg[(p, k)] + f[p] * jlog[(p, k)];
            jg[(p, k)] = v;
        }
    }
    Some((f, jg))
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Distinct solutions of the Gaudin-limit system for the points `d`, found
/// by Newton from `starts` seeded random complex points; stops early once
/// `wanted` solutions are known.
pub fn gaudin_solutions(
    lambda: &[usize],
    d: &[Complex],
    wanted: usize,
    starts: usize,
    opts: &SolverOptions,
) -> Vec<BetheRoots<Complex>> {
    let sizes = block_sizes(lambda);
    let n: usize = sizes.iter().sum();
    if n == 0 {
        return vec![BetheRoots::from_flat(&sizes, &[])];
    }
    let (lo, hi) = d.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), z| (lo.min(z.re), hi.max(z.re)));
    let (lo, hi) = if lo.is_finite() { (lo - 1.0, hi + 1.0) } else { (-1.0, 1.0) };
    let spread = 0.5 * (hi - lo);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut found: Vec<BetheRoots<Complex>> = Vec::new();
    for _ in 0..starts {
        if found.len() >= wanted {
            break;
        }
        let mut x: Vec<Complex> =
            (0..n).map(|_| Complex::new(lo + (hi - lo) * uniform(&mut rng), spread * (2.0 * uniform(&mut rng) - 1.0))).collect();
        let mut converged = false;
        for _ in 0..opts.max_newton_iter {
            let Some((f, j)) = gaudin_eval(&sizes, &x, d) else { break };
            let rhs: Vec<Complex> = f.iter().map(|v| -*v).collect();
            let Ok(step) = j.solve(&rhs, 1e-14) else { break };
            if !step.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                break;
            }
            for (xi, s) in x.iter_mut().zip(&step) {
                *xi += *s;
            }
            if max_norm(&x) > 1e6 {
                break;
            }
            if max_norm(&step) <= opts.newton_tol * (1.0 + max_norm(&x)) {
                converged = true;
                break;
            }
        }
        if !converged || gaudin_eval(&sizes, &x, d).is_none() {
            continue;
        }
        let roots = BetheRoots::from_flat(&sizes, &x);
        if roots.offdiag_margin() <= 1e-6 || roots.blocks[0].iter().any(|v| d.iter().any(|p| (*v - *p).norm() < 1e-6)) {
            continue;
        }
        if !found.iter().any(|r| same_solution(r, &roots, opts.dedup_tol)) {
            found.push(roots);
        }
    }
    found
}

/// Distance between two root sets, minimized over permutations within each
/// block.
fn permuted_distance(a: &BetheRoots<Complex>, b: &BetheRoots<Complex>) -> f64 {
    let mut worst = 0.0f64;
    for (x, y) in a.blocks.iter().zip(&b.blocks) {
        let best = signed_permutations(x.len())
            .iter()
            .map(|(p, _)| p.iter().enumerate().map(|(i, &k)| (x[i] - y[k]).norm()).fold(0.0, f64::max))
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(if x.is_empty() { 0.0 } else { best });
    }
    worst
}

fn same_solution(a: &BetheRoots<Complex>, b: &BetheRoots<Complex>, tol: f64) -> bool {
    let scale = 1.0 + max_norm(&a.flat()).max(max_norm(&b.flat()));
    permuted_distance(a, b) <= tol * scale
}

/// Sorts each block by `(re, im)` after rounding to the dedup grid, so that
/// numerically equal solutions print identically.
fn canonical(mut r: BetheRoots<Complex>, tol: f64) -> BetheRoots<Complex> {
    let key = |z: &Complex| (libm::round(z.re / tol), libm::round(z.im / tol));
    for block in &mut r.blocks {
        block.sort_by(|a, b| {
            let (ka, kb) = (key(a), key(b));
            ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
        });
    }
    r
}

fn compare_roots(a: &BetheRoots<Complex>, b: &BetheRoots<Complex>, tol: f64) -> Ordering {
    for (x, y) in a.flat().iter().zip(b.flat().iter()) {
        let o = libm::round(x.re / tol)
            .total_cmp(&libm::round(y.re / tol))
            .then(libm::round(x.im / tol).total_cmp(&libm::round(y.im / tol)));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Solves the Bethe ansatz equations by the homotopy of `strategy`,
/// polishing, filtering and deduplicating the end points.
pub fn solve_bae(prob: &BetheProblem<Complex>, strategy: Strategy, opts: &SolverOptions) -> Result<BetheSolutionSet> {
    let n = prob.n_colours();
    let ws = enumerate_basis(n, prob.n_slots(), &prob.lambda)?;
    let (expected, starts) = match strategy {
        Strategy::DistinctQ => {
            if let Some((i, j)) = prob.repeated_q() {
                return Err(Error::RepeatedQ { i, j });
            }
            (ws.dim(), homotopy_starts(prob, opts)?)
        }
        Strategy::Ones => {
            if !prob.q_is_ones() {
                return Err(Error::Invalid("the q = 1 strategy needs every q equal to one".into()));
            }
            let expected = singular_basis(&ws).len();
            let gaudin = gaudin_solutions(&prob.lambda, &prob.b, expected, opts.starts_per_dim * expected.max(1), opts);
            let y0 = Complex::new(opts.y0, 0.0);
            (expected, gaudin.into_iter().map(|r| r.map(|v| *v * y0)).collect())
        }
    };
    let mut set = BetheSolutionSet { solutions: Vec::new(), zero_vectors: Vec::new(), expected, failed_paths: 0 };
    for start in &starts {
        let Ok(roots) = track_start(prob, strategy, start, opts) else {
            set.failed_paths += 1;
            continue;
        };
        let residual = bae_relative_residual(&roots, prob);
        let offdiag_margin = roots.offdiag_margin();
        if residual > opts.residual_tol || offdiag_margin <= opts.offdiag_tol {
            set.failed_paths += 1;
            continue;
        }
        if set.solutions.iter().chain(&set.zero_vectors).any(|s| same_solution(&s.roots, &roots, opts.dedup_tol)) {
            continue;
        }
        let roots = canonical(roots, opts.dedup_tol);
        let (vector, scale) = bethe_vector_with_scale(&ws, &roots, &prob.b)?;
        let sol = BetheSolution { roots, residual, offdiag_margin, vector: vector.clone() };
        if is_zero_vector(&vector, scale, 1e-8) {
            set.zero_vectors.push(sol);
        } else {
            set.solutions.push(sol);
        }
    }
    set.solutions.sort_by(|a, b| compare_roots(&a.roots, &b.roots, opts.dedup_tol));
    set.zero_vectors.sort_by(|a, b| compare_roots(&a.roots, &b.roots, opts.dedup_tol));
    Ok(set)
}
