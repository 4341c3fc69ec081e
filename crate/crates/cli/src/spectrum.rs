//! `spectrum` and `fiber`: numeric Bethe ansatz runs and their checks.

use std::path::Path;

use bethe_core::bethe::{
    eigenvalue_ck, fundamental_operator, operator_eigenvalues, solve_bae, BetheProblem, BetheSolutionSet, Strategy,
};
use bethe_core::linalg::{norm, Matrix};
use bethe_core::ratfun::{tau_basis_change, Poly, SeriesUinv};
use bethe_core::tensorrep::{enumerate_basis, WeightSpace};
use bethe_core::wronski::{extract_coeffs, fiber_from_bethe, monic_wronskian};
use bethe_core::yangian::{c_coefficients, EvaluationData, Sector, YangianModule};
use bethe_core::{Complex, Error, Scalar};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Run;
use crate::report::{complex, complexes, Check, Report, Status};
use crate::CliError;

/// Threshold used when restricting operators to weight spaces.
const RESTRICT_EPS: f64 = 1e-9;

/// Points where transfer matrices are compared with their eigenvalues.
fn sample_u() -> [Complex; 3] {
    [Complex::new(0.7, 0.3), Complex::new(5.5, 0.0), Complex::new(-2.2, 1.1)]
}

struct Solved {
    prob: BetheProblem<Complex>,
    ws: WeightSpace,
    module: YangianModule<Complex>,
    set: BetheSolutionSet,
}

fn solve(run: &Run) -> Result<Solved, CliError> {
    let prob = BetheProblem::new(run.lambda.clone(), run.q_complex(), run.b_complex())?;
    let strategy = match Strategy::for_problem(&prob) {
        Err(Error::RepeatedQ { i, j }) => {
            return Err(CliError::Config(format!("q_{i} = q_{j}: twists must be distinct or all equal to one")))
        }
        other => other?,
    };
    let set = solve_bae(&prob, strategy, &run.solver_options())?;
    let ws = enumerate_basis(run.n_colours, run.n_slots, &run.lambda)?;
    let module = YangianModule::new(EvaluationData::new(run.n_colours, run.b_complex()));
    Ok(Solved { prob, ws, module, set })
}

/// `|M v - c v| / (|M v| + |c| |v|)`.
fn eigen_residual(m: &Matrix<Complex>, v: &[Complex], c: Complex) -> f64 {
    let mv = m.mul_vec(v);
    let den = norm(&mv) + c.norm() * norm(v);
    if den == 0.0 {
        return 0.0;
    }
    let diff: Vec<Complex> = mv.iter().zip(v).map(|(a, b)| a - b * c).collect();
    norm(&diff) / den
}

/// `<v, M v> / <v, v>`.
fn rayleigh(m: &Matrix<Complex>, v: &[Complex]) -> Complex {
    let mv = m.mul_vec(v);
    let num: Complex = v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum();
    let den: Complex = v.iter().map(|a| a.conj() * a).sum();
    num / den
}

fn rel_gap(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

/// Real, well separated evaluation points and real distinct twists.
fn simple_spectrum_applies(run: &Run) -> bool {
    let mut b: Vec<f64> = run.b.iter().map(|x| x.to_complex().re).collect();
    b.sort_by(f64::total_cmp);
    let gaps = b.windows(2).all(|w| w[1] - w[0] > 1.0);
    let mut q = run.q.clone();
    q.sort();
    gaps && q.windows(2).all(|w| w[0] != w[1])
}

/// Eigenvalue series of `B_k`, rebased to `C_{k,s}` when `q = 1`.
fn eigenvalue_series(s: &Solved, sol: usize, order: usize) -> Result<Vec<SeriesUinv<Complex>>, CliError> {
    let d = fundamental_operator(&s.set.solutions[sol].roots, &s.prob);
    let series: Vec<SeriesUinv<Complex>> = operator_eigenvalues(&d, s.prob.n_colours())
        .iter()
        .map(|r| SeriesUinv::from_ratfun(r, order))
        .collect::<Result<_, _>>()?;
    Ok(if s.prob.q_is_ones() { tau_basis_change(&series) } else { series })
}

#[derive(Serialize)]
struct RootRow {
    solution: usize,
    colour: usize,
    index: usize,
    re: f64,
    im: f64,
}

fn write_csv(path: &Path, set: &BetheSolutionSet) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    for (solution, sol) in set.solutions.iter().enumerate() {
        for (colour, block) in sol.roots.blocks.iter().enumerate() {
            for (index, t) in block.iter().enumerate() {
                w.serialize(RootRow { solution, colour: colour + 1, index, re: t.re, im: t.im })?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn spectrum(run: &Run, csv: Option<&Path>) -> Result<Report, CliError> {
    let s = solve(run)?;
    let n = run.n_colours;
    let eig_tol = run.tolerances.eig;
    if let Some(path) = csv {
        write_csv(path, &s.set)?;
    }
    let mut checks = Vec::new();
    let count_status = if s.set.shortfall() { Status::Nonconvergence } else { Status::Pass };
    checks.push(Check::new("solution_count", count_status).data(json!({
        "found": s.set.count(),
        "expected": s.set.expected,
        "zero_vectors": s.set.zero_vectors.len(),
        "failed_paths": s.set.failed_paths,
    })));

    let ops = (1..=n)
        .map(|k| s.module.transfer_on_weight(k, &s.prob.q, &s.ws, RESTRICT_EPS))
        .collect::<Result<Vec<_>, _>>()?;
    let raising: Vec<Matrix<Complex>> = if s.prob.q_is_ones() {
        (0..n.saturating_sub(1)).map(|i| s.ws.gl_action_from(i, i + 1).map(|x| x.to_complex())).collect()
    } else {
        Vec::new()
    };
    let (mut worst_eig, mut worst_sing, mut worst_bae) = (0f64, 0f64, 0f64);
    let mut tuples = Vec::new();
    let mut solutions = Vec::new();
    for (i, sol) in s.set.solutions.iter().enumerate() {
        worst_bae = worst_bae.max(sol.residual);
        let mut tuple = Vec::new();
        for (k, op) in ops.iter().enumerate() {
            for u in sample_u() {
                let m = op.eval(&u)?;
                let ev = eigenvalue_ck(k + 1, &u, &sol.roots, &s.prob)?;
                worst_eig = worst_eig.max(eigen_residual(&m, &sol.vector, ev));
                tuple.push(ev);
            }
        }
        let vnorm = norm(&sol.vector);
        for e in &raising {
            worst_sing = worst_sing.max(norm(&e.mul_vec(&sol.vector)) / vnorm);
        }
        let series = eigenvalue_series(&s, i, run.smax)?;
        solutions.push(json!({
            "roots": sol.roots.blocks.iter().map(|b| complexes(b)).collect::<Vec<_>>(),
            "bae_residual": sol.residual,
            "offdiag_margin": sol.roots.offdiag_margin(),
            "eigenvalues": series.iter().map(|c| complexes(c.coeffs())).collect::<Vec<_>>(),
        }));
        tuples.push(tuple);
    }
    checks.push(
        Check::new("bae_residual", Status::from_bool(worst_bae <= run.solver_options().residual_tol))
            .residual("max_relative", worst_bae)
            .data(Value::Array(solutions)),
    );
    checks.push(Check::new("eigenvectors", Status::from_bool(worst_eig <= eig_tol)).residual("max_relative", worst_eig));
    if s.prob.q_is_ones() {
        checks.push(
            Check::new("singular_vectors", Status::from_bool(worst_sing <= eig_tol)).residual("max_relative", worst_sing),
        );
    }

    let applies = simple_spectrum_applies(run);
    let mut min_sep = f64::INFINITY;
    for a in 0..tuples.len() {
        for b in a + 1..tuples.len() {
            let sep = tuples[a].iter().zip(&tuples[b]).map(|(x, y)| rel_gap(*x, *y)).fold(0.0, f64::max);
            min_sep = min_sep.min(sep);
        }
    }
    let separated = min_sep > run.tolerances.dedup;
    let mut simple = Check::new("simple_spectrum", Status::from_bool(!applies || separated))
        .data(json!({ "applicable": applies, "separated": separated }));
    if min_sep.is_finite() {
        simple = simple.residual("min_separation", min_sep);
    }
    checks.push(simple);
    Ok(Report::new("spectrum", checks))
}

/// Table `[k][s]` of the operators whose eigenvalues the fiber coordinates
/// reproduce: `B_{k,s}`, or `C_{k,s}` when `q = 1`.
fn operator_table(s: &Solved, order: usize) -> Result<Vec<Vec<Matrix<Complex>>>, CliError> {
    if s.prob.q_is_ones() {
        return Ok(c_coefficients(&s.module, &s.ws, order, Sector::Weight, RESTRICT_EPS)?);
    }
    let dim = s.ws.dim();
    let mut t = vec![(0..=order).map(|k| if k == 0 { Matrix::identity(dim) } else { Matrix::zeros(dim, dim) }).collect()];
    for k in 1..=s.prob.n_colours() {
        t.push(s.module.transfer_on_weight(k, &s.prob.q, &s.ws, RESTRICT_EPS)?.series(order)?);
    }
    Ok(t)
}

pub fn fiber(run: &Run) -> Result<Report, CliError> {
    let s = solve(run)?;
    let n = run.n_colours;
    let order = run.n_slots + n;
    let eig_tol = run.tolerances.eig;
    let target = Poly::from_roots(&s.prob.b);
    let ops = operator_table(&s, order)?;
    let (mut worst_w, mut worst_gap) = (0f64, 0f64);
    let mut points = Vec::new();
    for sol in &s.set.solutions {
        let x = fiber_from_bethe(&sol.roots, &s.prob, RESTRICT_EPS)?;
        let w = monic_wronskian(&x.basis())?;
        if w.degree() != target.degree() {
            worst_w = f64::INFINITY;
        } else {
            for k in 0..=target.degree().unwrap_or(0) {
                worst_w = worst_w.max(rel_gap(w.coeff(k), target.coeff(k)));
            }
        }
        let table = extract_coeffs(&x, order)?;
        for (row, series) in ops.iter().zip(&table) {
            for (op, coeff) in row.iter().zip(series.coeffs()) {
                let ev = rayleigh(op, &sol.vector);
                worst_gap = worst_gap.max(rel_gap(*coeff, ev));
                worst_gap = worst_gap.max(eigen_residual(op, &sol.vector, ev));
            }
        }
        points.push(json!({
            "lambda": x.lambda(),
            "coordinates": complexes(&x.flat_coords()),
            "wronskian": w.coeffs().iter().map(complex).collect::<Vec<_>>(),
        }));
    }
    let count_status = if s.set.shortfall() { Status::Nonconvergence } else { Status::Pass };
    let checks = vec![
        Check::new("solution_count", count_status)
            .data(json!({ "found": s.set.count(), "expected": s.set.expected })),
        Check::new("wronskian", Status::from_bool(worst_w <= eig_tol))
            .residual("max_relative", worst_w)
            .data(Value::Array(points)),
        Check::new("coefficients_vs_spectrum", Status::from_bool(worst_gap <= eig_tol))
            .residual("max_relative", worst_gap),
    ];
    Ok(Report::new("fiber", checks))
}
