//! `verify-algebra`: the exact identity suite.

use bethe_core::combinat::partitions;
use bethe_core::linalg::Matrix;
use bethe_core::ratfun::Poly;
use bethe_core::tensorrep::{enumerate_basis, singular_basis};
use bethe_core::wronski::chi_polynomial;
use bethe_core::yangian::{c_coefficients, scalar_transfer, EvaluationData, MatPoly, OperatorRatFun, Sector, YangianModule};
use bethe_core::{Rational, Scalar};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Mode, Run};
use crate::report::{rational, Check, Report, Status};
use crate::CliError;

/// Sample pairs `(u, v)` for commutators, shifted off the evaluation points.
fn sample_pairs() -> Vec<(Rational, Rational)> {
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    vec![(r(1, 3), r(7, 5)), (r(-5, 2), r(11, 3)), (r(9, 7), r(-1, 4)), (r(13, 2), r(5, 9)), (r(-7, 3), r(-17, 6))]
}

fn max_commutator(ops: &[Matrix<Rational>], with: &Matrix<Rational>) -> f64 {
    ops.iter().map(|c| c.commutator(with).max_abs()).fold(0.0, f64::max)
}

pub fn verify_algebra(run: &Run) -> Result<Report, CliError> {
    if run.mode != Mode::Exact {
        return Err(CliError::Config("verify-algebra runs in exact mode".into()));
    }
    let n = run.n_colours;
    let module = YangianModule::new(EvaluationData::new(n, run.b.clone()));
    let space = module.space;
    let mut transfer: Vec<OperatorRatFun<Rational>> = (1..=n).map(|k| module.transfer_matrix(k, &run.q)).collect();
    if run.corrupt {
        let top = &mut transfer[n - 1];
        let bump = MatPoly::constant(space.slot_unit(0, 0, 0).scale(&Rational::from_i64(1)));
        top.num = top.num.add(&bump);
    }
    let mut checks = Vec::new();

    let quads: Vec<(usize, usize, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).flat_map(move |k| (0..n).map(move |l| (i, j, k, l)))))
        .collect();
    let defect = quads.par_iter().map(|&(i, j, k, l)| module.relation_defect(i, j, k, l)).reduce(|| 0.0, f64::max);
    checks.push(
        Check::new("yangian_relations", Status::from_bool(defect == 0.0))
            .residual("max_defect", defect)
            .data(json!({ "quadruples": quads.len() })),
    );

    let pairs = sample_pairs();
    let mut worst = 0.0f64;
    let mut skipped = 0;
    for bk in &transfer {
        for bl in &transfer {
            for (u, v) in &pairs {
                match (bk.eval(u), bl.eval(v)) {
                    (Ok(a), Ok(c)) => worst = worst.max(a.commutator(&c).max_abs()),
                    _ => skipped += 1,
                }
            }
        }
    }
    checks.push(
        Check::new("transfer_commutativity", Status::from_bool(worst == 0.0))
            .residual("max_commutator", worst)
            .data(json!({ "sample_pairs": pairs.len(), "skipped_at_poles": skipped })),
    );

    let cartan = (0..n)
        .map(|i| transfer.iter().map(|b| max_commutator(b.num.coeffs(), &space.gl_action(i, i))).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    checks.push(Check::new("cartan_symmetry", Status::from_bool(cartan == 0.0)).residual("max_commutator", cartan));

    let ones = vec![Rational::from_i64(1); n];
    let untwisted: Vec<OperatorRatFun<Rational>> = (1..=n).map(|k| module.transfer_matrix(k, &ones)).collect();
    let gl = (0..n * n)
        .into_par_iter()
        .map(|ij| {
            let e = space.gl_action(ij / n, ij % n);
            untwisted.iter().map(|b| max_commutator(b.num.coeffs(), &e)).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    checks.push(Check::new("gl_symmetry_at_q_one", Status::from_bool(gl == 0.0)).residual("max_commutator", gl));

    let qdet = module.quantum_determinant();
    let central = (0..n * n)
        .into_par_iter()
        .map(|ij| module.commutator_with_l(&qdet, ij / n, ij % n))
        .reduce(|| 0.0, f64::max);
    checks.push(Check::new("qdet_centrality", Status::from_bool(central == 0.0)).residual("max_commutator", central));

    let scalar = scalar_transfer(&run.q, &run.b);
    checks.push(Check::new("scalar_top_transfer", Status::from_bool(transfer[n - 1].equals_scalar(&scalar))));

    checks.push(rebased_coefficients(&module, run)?);
    Ok(Report::new("verify-algebra", checks))
}

/// A partition, its diagonal `C_{k,k}` when the singular part is nonzero,
/// and whether the identities hold.
type Cell = (Vec<usize>, Option<Value>, bool);

fn falling(m: usize) -> Poly<Rational> {
    (0..m).fold(Poly::one(), |acc, j| acc.mul(&Poly::linear(Rational::from_i64(j as i64))))
}

/// `C_{k,s} = 0` for `s < k` and the identity satisfied by the scalars
/// `C_{k,k}`, on the singular part of every partition of `n`.
fn rebased_coefficients(module: &YangianModule<Rational>, run: &Run) -> Result<Check, CliError> {
    let n = run.n_colours;
    let cells: Vec<Result<Cell, CliError>> = partitions(run.n_slots, n)
        .into_par_iter()
        .map(|lambda| {
            let ws = enumerate_basis(n, run.n_slots, &lambda)?;
            if singular_basis(&ws).is_empty() {
                return Ok((lambda, None, true));
            }
            let c = c_coefficients(module, &ws, n, Sector::Singular, 0.0)?;
            let mut ok = true;
            let mut lhs = Poly::zero();
            let mut diagonal = Vec::new();
            for (k, row) in c.iter().enumerate() {
                ok &= row[..k].iter().all(Matrix::is_zero);
                match row[k].as_scalar() {
                    Some(ckk) => {
                        let term = falling(n - k).scale(&ckk);
                        lhs = if k % 2 == 0 { lhs.add(&term) } else { lhs.sub(&term) };
                        diagonal.push(rational(&ckk));
                    }
                    None => {
                        ok = false;
                        diagonal.push(Value::Null);
                    }
                }
            }
            ok &= lhs == chi_polynomial::<Rational>(&lambda);
            Ok((lambda, Some(Value::Array(diagonal)), ok))
        })
        .collect();
    let mut table = Vec::new();
    let mut all_ok = true;
    for cell in cells {
        let (lambda, diag, ok) = cell?;
        all_ok &= ok;
        if let Some(d) = diag {
            table.push(json!({ "lambda": lambda, "c_kk": d, "ok": ok }));
        }
    }
    Ok(Check::new("rebased_coefficients", Status::from_bool(all_ok)).data(Value::Array(table)))
}
