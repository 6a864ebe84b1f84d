//! Semisimplicity of the multiplication: the characteristic polynomial of
//! `E⋆` is squarefree exactly when the critical values are pairwise distinct,
//! and then they serve as local coordinates.

use serde::Serialize;

use super::structure::FStructure;
use crate::algebra::unipoly::UniPoly;
use crate::scalar::{rational_string, Field, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct SemisimplicityReport {
    /// Coefficients of `det(t − E⋆)`, constant term first.
    pub char_poly: Vec<String>,
    pub trace: String,
    pub squarefree: bool,
}

pub fn euler_char_poly<K: Field>(fs: &FStructure<K>) -> UniPoly<K> {
    fs.euler_multiplication().char_poly()
}

pub fn semisimplicity_at(fs: &FStructure<Rational>) -> SemisimplicityReport {
    let m = fs.euler_multiplication();
    let cp = m.char_poly();
    SemisimplicityReport {
        char_poly: cp.coeffs().iter().map(rational_string).collect(),
        trace: rational_string(&m.trace()),
        squarefree: cp.is_squarefree(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::node::{tprime_matrix, EpsLift, NodeFamily};
    use crate::fmanifold::node::build_fstructure_node_at;
    use crate::frobenius::fiber::fiber_restrict;
    use crate::algebra::residue::residue_sum_at_roots;
    use crate::scalar::{int, rat};

    fn node_point() -> Vec<Rational> {
        vec![int(1), rat(1, 2), rat(1, 3), int(0)]
    }

    #[test]
    fn node_2_2_is_semisimple() {
        let fam = NodeFamily::new(2, 2).unwrap();
        let fs = build_fstructure_node_at(&fam, &node_point()).unwrap();
        let rep = semisimplicity_at(&fs);
        assert_eq!(rep.char_poly.len(), 5);
        assert!(rep.squarefree);
    }

    #[test]
    fn euler_product_is_multiplication_by_f() {
        let fam = NodeFamily::new(2, 3).unwrap();
        let b = vec![rat(2, 3), int(1), int(-1), rat(1, 2), rat(5, 7)];
        let fs = build_fstructure_node_at(&fam, &b).unwrap();
        let t = tprime_matrix(&fam, &b, EpsLift::Symmetric).unwrap();
        let alg = fam.algebra(&b).unwrap();
        let mf = alg.mult_matrix(&fam.class_of(&fam.f, &b).unwrap());
        assert_eq!(t.mul(&fs.euler_multiplication()), mf.mul(&t));
    }

    #[test]
    fn trace_is_the_sum_of_critical_values() {
        // Σ F(s_i) over the zeros of H on the fibre, by residues of F·H'/H
        let fam = NodeFamily::new(2, 3).unwrap();
        let b = vec![rat(3, 2), int(2), rat(-1, 3), int(1), rat(1, 4)];
        let fs = build_fstructure_node_at(&fam, &b).unwrap();
        let fm = fiber_restrict(&fam, &b).unwrap();
        let hq = fm.h_polynomial();
        let (low, fpoly) = fm.f.to_unipoly();
        assert!(low < 0);
        let shift = UniPoly::monomial((-low) as usize, int(1)).inverse_mod(&hq).unwrap();
        let numer = fpoly.mul(&shift).mul(&hq.derivative()).rem(&hq);
        let sum = residue_sum_at_roots(&numer, &hq).unwrap();
        assert_eq!(fs.euler_multiplication().trace(), sum);
        let cp = euler_char_poly(&fs);
        assert_eq!(-cp.coeff(cp.degree().unwrap() - 1), sum);
    }

    #[test]
    fn collision_is_detected() {
        // ε = 1, a = b = 0, c = 0: F = x² + y² on xy = 1 has critical values 2, 2, −2, −2
        let fam = NodeFamily::new(2, 2).unwrap();
        let fs = build_fstructure_node_at(&fam, &[int(1), int(0), int(0), int(0)]).unwrap();
        assert!(!semisimplicity_at(&fs).squarefree);
    }
}
