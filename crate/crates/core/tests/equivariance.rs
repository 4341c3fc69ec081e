use bethe_core::linalg::Matrix;
use bethe_core::scalar::{int, Rational};
use bethe_core::symspace::{evaluate_at_b, sn_act, TruncatedSpace, TruncatedVPoly, VectorBasis};
use bethe_core::tensorrep::TensorSpace;
use bethe_core::yangian::{EvaluationData, YangianModule};

fn z(n: usize, a: usize) -> std::collections::BTreeMap<Vec<u32>, Rational> {
    let mut m = vec![0; n];
    m[a] = 1;
    [(m, int(1))].into_iter().collect()
}

/// Second coefficient of `T_{i,j}(u)` on `V`-valued polynomials:
/// `sum_a z_a e^(a)_{j,i} + sum_{a>c} sum_q e^(a)_{q,i} e^(c)_{j,q}`.
fn t2(sp: &TensorSpace, i: usize, j: usize, f: &TruncatedVPoly) -> TruncatedVPoly {
    let n = sp.n_slots;
    let apply = |m: Matrix<Rational>, g: &TruncatedVPoly| g.map_vectors(|v| m.mul_vec(v));
    let mut out = TruncatedVPoly::zero();
    for a in 0..n {
        out = out.add(&apply(sp.slot_unit(a, j, i), f).mul_poly(&z(n, a)));
        for c in 0..a {
            for q in 0..sp.n_colours {
                let m = sp.slot_unit(a, q, i).mul(&sp.slot_unit(c, j, q));
                out = out.add(&apply(m, f));
            }
        }
    }
    out
}

#[test]
fn evaluation_intertwines_second_coefficients() {
    let sp = TensorSpace::new(2, 2);
    let basis = VectorBasis::full(2, 2);
    let b = vec![int(0), int(2)];
    let module = YangianModule::new(EvaluationData::new(2, b.clone()));
    let inv = TruncatedSpace::new(basis.clone(), 1).invariant_basis();
    assert!(!inv.is_empty());
    for i in 0..2 {
        for j in 0..2 {
            let yang = module.t_entry(i, j).series(2).unwrap()[2].clone();
            for f in &inv {
                let g = t2(&sp, i, j, f);
                for s in 0..1 {
                    assert_eq!(sn_act(&basis, s, &g), g, "T2 leaves the invariants");
                }
                let lhs = evaluate_at_b(&g, &b, basis.dim());
                let rhs = yang.mul_vec(&evaluate_at_b(f, &b, basis.dim()));
                assert_eq!(lhs, rhs, "T2_{i}{j}");
            }
        }
    }
}
