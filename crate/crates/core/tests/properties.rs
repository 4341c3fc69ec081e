use bethe_core::bethe::{eigenvalue_ck, BetheProblem, BetheRoots};
use bethe_core::ratfun::{elementary_symmetric, tau_basis_change, tau_basis_restore, Poly, SeriesUinv};
use bethe_core::scalar::{int, rat, Rational};
use bethe_core::symspace::{sn_act, TruncatedSpace, VectorBasis};
use bethe_core::wronski::{extract_coeffs, recover_coordinates, wronski_map, QuasiExpSpacePoint, SpacePoint};
use bethe_core::yangian::scalar_transfer;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quasiexp_points_round_trip(
        a in prop::collection::vec(small_rational(), 2),
        c in prop::collection::vec(small_rational(), 1),
    ) {
        let x = SpacePoint::QuasiExp(QuasiExpSpacePoint::new(ints(&[1, 3]), vec![2, 1], vec![a, c]).unwrap());
        let table = extract_coeffs(&x, 4).unwrap();
        prop_assert_eq!(recover_coordinates(&table, &x.shape()).unwrap(), x);
    }

    #[test]
    fn top_eigenvalue_ignores_roots(
        t1 in prop::collection::vec(small_rational(), 2),
        t2 in small_rational(),
        u in small_rational(),
    ) {
        let p = BetheProblem::new(vec![1, 1, 1], ints(&[1, 2, 5]), ints(&[0, 2, 4])).unwrap();
        let u = u + rat(1, 97);
        let t = BetheRoots::new(vec![t1, vec![t2]]);
        let expect = scalar_transfer(&p.q, &p.b).eval(&u).unwrap();
        if let Ok(c) = eigenvalue_ck(3, &u, &t, &p) {
            prop_assert_eq!(c, expect);
        }
    }

    #[test]
    fn tau_rebasing_is_invertible(coeffs in prop::collection::vec(prop::collection::vec(small_rational(), 4), 4)) {
        let series: Vec<SeriesUinv<Rational>> = coeffs.into_iter().map(SeriesUinv::from_coeffs).collect();
        prop_assert_eq!(tau_basis_restore(&tau_basis_change(&series)), series);
    }

    #[test]
    fn integer_shifts_compose(c in prop::collection::vec(small_rational(), 1..5), j in -3i64..4, k in -3i64..4) {
        let p = Poly::new(c);
        prop_assert_eq!(p.shift_int(j).shift_int(k), p.shift_int(j + k));
    }

    #[test]
    fn transpositions_are_involutions(coeffs in prop::collection::vec(-3i64..=3, 30)) {
        let basis = VectorBasis::weight(2, &[2, 1]).unwrap();
        let sp = TruncatedSpace::new(basis.clone(), 2);
        let f = sp.from_dense(&coeffs.iter().map(|&x| int(x)).collect::<Vec<_>>());
        for i in 0..2 {
            prop_assert_eq!(sn_act(&basis, i, &sn_act(&basis, i, &f)), f.clone());
        }
    }

    #[test]
    fn one_slot_wronskian_root(p in small_rational()) {
        // the space spanned by u + p and 2^u lies over b = 3 - p
        let x = SpacePoint::QuasiExp(QuasiExpSpacePoint::new(ints(&[1, 2]), vec![1, 0], vec![vec![p.clone()], vec![]]).unwrap());
        prop_assert_eq!(wronski_map(&x).unwrap(), elementary_symmetric(&[int(3) - p]));
    }
}
