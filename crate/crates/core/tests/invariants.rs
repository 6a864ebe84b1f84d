//! Randomised invariants of the node family at rational base points.

use logfman::deform::node::{tprime_matrix, EpsLift, NodeFamily};
use logfman::fmanifold::node::build_fstructure_node_at;
use logfman::fmanifold::stratum::restrict_to_stratum;
use logfman::frobenius::fiber::fiber_restrict;
use logfman::frobenius::flat::{default_truncation, flat_coordinates, flat_pairing_check};
use logfman::frobenius::pairing::{pairing_matrix, residue_theorem_check};
use logfman::scalar::{rat, Field};
use logfman::Rational;
use proptest::prelude::*;

const FAMILIES: &[(usize, usize)] = &[(2, 2), (2, 3), (3, 3), (2, 5)];

fn small() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn nonzero() -> impl Strategy<Value = Rational> {
    prop_oneof![(1i64..=9, 1i64..=5), (-9i64..=-1, 1i64..=5)].prop_map(|(n, d)| rat(n, d))
}

/// A family and a base point off the discriminant.
fn node_case() -> impl Strategy<Value = (NodeFamily, Vec<Rational>)> {
    (0..FAMILIES.len()).prop_flat_map(|i| {
        let (p, q) = FAMILIES[i];
        (nonzero(), prop::collection::vec(small(), p + q - 1)).prop_map(move |(e, rest)| {
            let mut b = vec![e];
            b.extend(rest);
            (NodeFamily::new(p, q).unwrap(), b)
        })
    })
}

fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == i { Rational::from_int(1) } else { Rational::from_int(0) }).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tprime_is_invertible_off_the_discriminant((fam, b) in node_case()) {
        let t = tprime_matrix(&fam, &b, EpsLift::Symmetric).unwrap();
        prop_assert_eq!(t.nrows(), fam.p + fam.q);
        prop_assert!(t.det() != Rational::from_int(0));
    }

    #[test]
    fn lifts_of_eps_agree((fam, b) in node_case()) {
        let tx = tprime_matrix(&fam, &b, EpsLift::X).unwrap();
        let ty = tprime_matrix(&fam, &b, EpsLift::Y).unwrap();
        let ts = tprime_matrix(&fam, &b, EpsLift::Symmetric).unwrap();
        prop_assert_eq!(&tx, &ty);
        prop_assert_eq!(&tx, &ts);
    }

    #[test]
    fn product_is_transported_by_tprime((fam, b) in node_case()) {
        let fs = build_fstructure_node_at(&fam, &b).unwrap();
        let t = tprime_matrix(&fam, &b, EpsLift::Symmetric).unwrap();
        let alg = fam.algebra(&b).unwrap();
        let n = fs.dim();
        for i in 0..n {
            for j in i..n {
                let (u, v) = (unit_vector(n, i), unit_vector(n, j));
                let lhs = t.mul_vec(&fs.product(&u, &v));
                let rhs = alg.mul(&t.mul_vec(&u), &t.mul_vec(&v));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn structure_is_an_f_manifold_at_points((fam, b) in node_case()) {
        let fs = build_fstructure_node_at(&fam, &b).unwrap();
        prop_assert!(fs.check_axioms().ok());
        prop_assert!(fs.check_integrability().unwrap().ok());
        prop_assert!(fs.check_euler().unwrap());
        let m = fs.euler_multiplication();
        let cp = m.char_poly();
        prop_assert_eq!(-cp.coeff(fs.dim() - 1), m.trace());
    }

    #[test]
    fn pairing_is_symmetric_and_invariant((fam, b) in node_case()) {
        let Ok(fm) = fiber_restrict(&fam, &b) else { return Ok(()) };
        let g = pairing_matrix(&fm).unwrap().total;
        prop_assert!(g.is_symmetric());
        let fs = build_fstructure_node_at(&fam, &b).unwrap();
        prop_assert!(fs.is_frobenius(&g));
        for u in 0..fs.dim() {
            prop_assert!(residue_theorem_check(&fm, u, fs.dim() - 1 - u).unwrap());
        }
    }

    #[test]
    fn flat_coordinates_split_by_puncture((fam, b) in node_case(), shift in small()) {
        let n = default_truncation(fam.p, fam.q);
        let before = flat_coordinates(&fam, &b, n).unwrap();
        let mut moved_b = b.clone();
        moved_b[fam.p] = &moved_b[fam.p] + &shift;
        let mut moved_a = b.clone();
        moved_a[1] = &moved_a[1] + &shift;
        prop_assert_eq!(&flat_coordinates(&fam, &moved_b, n).unwrap().t, &before.t);
        prop_assert_eq!(&flat_coordinates(&fam, &moved_a, n).unwrap().s, &before.s);
    }

    #[test]
    fn stratum_drops_one_dimension((fam, b) in node_case()) {
        let fs = restrict_to_stratum(&fam, "eps", &b[1..]).unwrap();
        prop_assert_eq!(fs.dim(), fam.p + fam.q - 1);
        prop_assert!(fs.check_axioms().ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn flat_gram_is_constant((fam, b) in node_case()) {
        let Ok(_) = fiber_restrict(&fam, &b) else { return Ok(()) };
        let chk = flat_pairing_check(&fam, &b, default_truncation(fam.p, fam.q)).unwrap();
        prop_assert!(chk.routes_agree());
        prop_assert!(chk.matches_expected());
    }
}
