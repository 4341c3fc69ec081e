use bethe_core::bethe::{eigenvalue_ck, solve_bae, BetheProblem, SolverOptions, Strategy};
use bethe_core::linalg::norm;
use bethe_core::tensorrep::{enumerate_basis, singular_basis};
use bethe_core::yangian::{EvaluationData, YangianModule};
use bethe_core::Complex;

fn cplx(v: &[f64]) -> Vec<Complex> {
    v.iter().map(|&x| Complex::new(x, 0.0)).collect()
}

/// Solves the equations and checks every Bethe vector against every
/// transfer matrix at a few points.
fn check_eigenvectors(lambda: &[usize], q: &[f64], b: &[f64], expected: usize) {
    let prob = BetheProblem::new(lambda.to_vec(), cplx(q), cplx(b)).unwrap();
    let set = solve_bae(&prob, Strategy::for_problem(&prob).unwrap(), &SolverOptions::default()).unwrap();
    assert_eq!(set.count(), expected, "{lambda:?}");
    let ws = enumerate_basis(lambda.len(), b.len(), lambda).unwrap();
    let module = YangianModule::new(EvaluationData::new(lambda.len(), prob.b.clone()));
    for sol in &set.solutions {
        for k in 1..=lambda.len() {
            let op = module.transfer_on_weight(k, &prob.q, &ws, 1e-9).unwrap();
            for u in [Complex::new(0.3, 1.7), Complex::new(-4.1, 0.2), Complex::new(9.0, -2.0)] {
                let mv = op.eval(&u).unwrap().mul_vec(&sol.vector);
                let ev = eigenvalue_ck(k, &u, &sol.roots, &prob).unwrap();
                let diff: Vec<Complex> = mv.iter().zip(&sol.vector).map(|(a, v)| a - ev * v).collect();
                assert!(norm(&diff) <= 1e-9 * (norm(&mv) + ev.norm() * norm(&sol.vector)), "{lambda:?} k={k}");
            }
        }
    }
}

#[test]
fn three_colours_distinct_twists() {
    check_eigenvectors(&[1, 1, 1], &[1.0, 2.0, 4.0], &[0.0, 2.0, 4.0], 6);
    check_eigenvectors(&[2, 0, 1], &[1.0, 3.0, 5.0], &[0.0, 2.0, 4.0], 3);
}

#[test]
fn three_colours_at_q_one() {
    let ws = enumerate_basis(3, 4, &[2, 1, 1]).unwrap();
    let dim = singular_basis(&ws).len();
    check_eigenvectors(&[2, 1, 1], &[1.0, 1.0, 1.0], &[0.0, 2.0, 4.0, 6.0], dim);
}

#[test]
fn two_site_quadratic_spectrum() {
    check_eigenvectors(&[1, 1], &[1.0, 2.0], &[0.0, 2.0], 2);
    check_eigenvectors(&[1, 1], &[1.0, 1.0], &[0.0, 2.0], 1);
}
