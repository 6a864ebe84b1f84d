//! The multiplication on logarithmic fields of the node family, pulled back
//! from the node algebra through `t'F`.

use super::structure::{structure_from_images, FStructure, Tensor3};
use crate::algebra::ratfun::RatFn;
use crate::deform::node::{tprime_matrix, EpsLift, NodeFamily, NodeField};
use crate::error::Result;
use crate::frobenius::euler::euler_in_frame;
use crate::scalar::{Dual, Field, Rational};

/// `c_ij^k` at a base point: `t'F(c_ij) = t'F(X_i)·t'F(X_j)`.
pub fn node_structure_at<K: Field>(fam: &NodeFamily, base: &[K]) -> Result<Tensor3<K>> {
    let alg = fam.algebra(base)?;
    let t = tprime_matrix(fam, base, EpsLift::Symmetric)?;
    structure_from_images(&t, |u, v| Ok(alg.mul(u, v)))
}

fn frame_derivative_ratfn(fam: &NodeFamily, u: NodeField, phi: &RatFn) -> RatFn {
    let m = fam.parameter_of(u);
    let d = phi.partial_at(m);
    if u == NodeField::EpsDEps {
        d * fam.symbolic_base()[0].clone()
    } else {
        d
    }
}

fn map_tensor<K: Field, F: Fn(&K) -> K>(t: &Tensor3<K>, f: F) -> Tensor3<K> {
    t.iter().map(|r| r.iter().map(|v| v.iter().map(&f).collect()).collect()).collect()
}

/// The multiplication with entries in the field of rational functions on the
/// base.
pub fn build_fstructure_node(fam: &NodeFamily) -> Result<FStructure<RatFn>> {
    let base = fam.symbolic_base();
    let c = node_structure_at(fam, &base)?;
    let frame = fam.frame();
    let dc: Vec<Tensor3<RatFn>> = frame.iter().map(|&u| map_tensor(&c, |phi| frame_derivative_ratfn(fam, u, phi))).collect();
    let euler: Vec<RatFn> = euler_in_frame(fam).into_iter().map(RatFn::from_poly).collect();
    let deuler = frame.iter().map(|&u| euler.iter().map(|e| frame_derivative_ratfn(fam, u, e)).collect()).collect();
    FStructure::new(frame.iter().map(|u| u.name()).collect(), c, dc, fam.frame_position(NodeField::DC), euler, deuler)
}

/// The multiplication at a rational base point, with first derivatives along
/// the frame computed by dual numbers.
pub fn build_fstructure_node_at(fam: &NodeFamily, base: &[Rational]) -> Result<FStructure<Rational>> {
    let c = node_structure_at(fam, base)?;
    let frame = fam.frame();
    let dc = frame
        .iter()
        .map(|&u| {
            let m = fam.parameter_of(u);
            let dual: Vec<Dual<Rational>> = base
                .iter()
                .enumerate()
                .map(|(k, b)| if k == m { Dual::variable(b.clone()) } else { Dual::constant(b.clone()) })
                .collect();
            let scale = if u == NodeField::EpsDEps { base[0].clone() } else { Rational::from_int(1) };
            let cd = node_structure_at(fam, &dual)?;
            Ok(cd.iter().map(|r| r.iter().map(|v| v.iter().map(|x| x.du.clone() * scale.clone()).collect()).collect()).collect())
        })
        .collect::<Result<Vec<Tensor3<Rational>>>>()?;
    let sym_e: Vec<RatFn> = euler_in_frame(fam).into_iter().map(RatFn::from_poly).collect();
    let at = |phi: &RatFn| phi.eval(base).expect("polynomial");
    let euler = sym_e.iter().map(at).collect();
    let deuler = frame.iter().map(|&u| sym_e.iter().map(|e| at(&frame_derivative_ratfn(fam, u, e))).collect()).collect();
    FStructure::new(frame.iter().map(|u| u.name()).collect(), c, dc, fam.frame_position(NodeField::DC), euler, deuler)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::node::tprime_node;
    use crate::frobenius::fiber::fiber_restrict;
    use crate::frobenius::pairing::pairing_matrix;
    use crate::scalar::{int, rat};

    fn point(p: usize, q: usize, k: i64) -> Vec<Rational> {
        let mut b = vec![rat(k + 3, 2 * k + 1)];
        for i in 1..p + q {
            b.push(rat((3 * i as i64 + 2 * k) % 9 - 4, (i as i64 + k) % 3 + 1));
        }
        b
    }

    #[test]
    fn symbolic_axioms_and_euler() {
        for (p, q) in [(2, 2), (2, 3)] {
            let fs = build_fstructure_node(&NodeFamily::new(p, q).unwrap()).unwrap();
            let ax = fs.check_axioms();
            assert!(ax.ok(), "({p},{q}) {:?}", ax.failures);
            assert!(fs.check_euler().unwrap(), "({p},{q})");
        }
    }

    #[test]
    fn c_direction_is_trivial() {
        let fam = NodeFamily::new(2, 3).unwrap();
        let fs = build_fstructure_node(&fam).unwrap();
        let dc = fam.frame_position(NodeField::DC);
        assert!(fs.lie_along_frame(dc).unwrap().iter().flatten().flatten().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn pointwise_matches_symbolic() {
        let fam = NodeFamily::new(2, 2).unwrap();
        let sym = build_fstructure_node(&fam).unwrap();
        let b = point(2, 2, 1);
        let at = build_fstructure_node_at(&fam, &b).unwrap();
        let ev = sym.map(|x| x.eval(&b).unwrap());
        assert_eq!(ev.c, at.c);
        assert_eq!(ev.dc, at.dc);
        assert_eq!(ev.deuler, at.deuler);
        // at (1, 1, 1, 0)
        let fs = build_fstructure_node_at(&fam, &[int(1), int(1), int(1), int(0)]).unwrap();
        assert!(fs.check_integrability().unwrap().ok());
    }

    #[test]
    fn eps_square_is_nontrivial() {
        let fam = NodeFamily::new(2, 2).unwrap();
        let b = point(2, 2, 2);
        let fs = build_fstructure_node_at(&fam, &b).unwrap();
        let e2 = &fs.c[0][0];
        assert!(e2.iter().filter(|x| !num_traits::Zero::is_zero(*x)).count() >= 1);
        // t'F(ε∂ε ⋆ ε∂ε) = t'F(ε∂ε)²
        let alg = fam.algebra(&b).unwrap();
        let img = |u: NodeField| tprime_node(u, &fam, &b, EpsLift::Symmetric).unwrap();
        let mut lhs = vec![int(0); 4];
        for (k, u) in fam.frame().into_iter().enumerate() {
            let iu = img(u);
            for (l, v) in lhs.iter_mut().enumerate() {
                *v = v.clone() + e2[k].clone() * iu[l].clone();
            }
        }
        let e = img(NodeField::EpsDEps);
        assert_eq!(lhs, alg.mul(&e, &e));
    }

    #[test]
    fn integrability_at_points() {
        for (p, q) in [(2, 3), (3, 3)] {
            let fam = NodeFamily::new(p, q).unwrap();
            for k in 0..2 {
                let fs = build_fstructure_node_at(&fam, &point(p, q, k)).unwrap();
                let rep = fs.check_integrability().unwrap();
                assert!(rep.ok(), "({p},{q}) {:?}", rep.violations);
                assert!(fs.check_euler().unwrap());
            }
        }
    }

    #[test]
    fn doubled_euler_fails() {
        let fam = NodeFamily::new(2, 3).unwrap();
        let mut fs = build_fstructure_node_at(&fam, &point(2, 3, 3)).unwrap();
        fs.euler = fs.euler.iter().map(|x| x.clone() * int(2)).collect();
        fs.deuler = fs.deuler.iter().map(|r| r.iter().map(|x| x.clone() * int(2)).collect()).collect();
        assert_eq!(fs.lie_euler().unwrap(), fs.c.iter().map(|r| r.iter().map(|v| v.iter().map(|x| x.clone() * int(2)).collect()).collect()).collect::<Tensor3<Rational>>());
        assert!(!fs.check_euler().unwrap());
    }

    #[test]
    fn frobenius_compatibility() {
        let fam = NodeFamily::new(2, 3).unwrap();
        let b = point(2, 3, 1);
        let fs = build_fstructure_node_at(&fam, &b).unwrap();
        let g = pairing_matrix(&fiber_restrict(&fam, &b).unwrap()).unwrap().total;
        assert!(fs.is_frobenius(&g));
    }
}
