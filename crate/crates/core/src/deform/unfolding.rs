//! Monomial bases for unfoldings of `f` on a fixed singular space `X`:
//! `O / (I + Θ_X(f))`, where `Θ_X` is the module of fields tangent to `X`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::vfield::VectorFieldPoly;
use crate::algebra::linalg::Matrix;
use crate::algebra::poly::{Exponents, MultiPoly};
use crate::error::Result;
use crate::quotient::groebner::{groebner_basis, MonomialQuotient};
use crate::scalar::Field;

fn monomials_up_to(n: usize, d: u32) -> Vec<Exponents> {
    let mut out = vec![];
    let mut e = vec![0u32; n];
    fn go(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if i == e.len() {
            out.push(e.clone());
            return;
        }
        for k in 0..=left {
            e[i] = k;
            go(i + 1, left - k, e, out);
        }
        e[i] = 0;
    }
    if n == 0 {
        return vec![vec![]];
    }
    go(0, d, &mut e, &mut out);
    out
}

/// Basis (over `K`) of the polynomial vector fields with coefficients of
/// degree at most `d` that preserve the ideal generated by `ideal`.
pub fn log_vector_fields<K: Field>(vars: &Arc<[String]>, ideal: &[MultiPoly<K>], d: u32) -> Result<Vec<VectorFieldPoly<K>>> {
    let n = vars.len();
    let monos = monomials_up_to(n, d);
    let unknowns: Vec<(usize, &Exponents)> = (0..n).flat_map(|k| monos.iter().map(move |m| (k, m))).collect();
    let field_of = |coeffs: &[K]| {
        let mut c = vec![MultiPoly::zero_in(vars); n];
        for ((k, m), a) in unknowns.iter().zip(coeffs) {
            if !a.is_zero() {
                c[*k].add_term((*m).clone(), a.clone());
            }
        }
        VectorFieldPoly::new(vars, c)
    };
    let nonzero: Vec<&MultiPoly<K>> = ideal.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok((0..unknowns.len())
            .map(|i| {
                let mut v = vec![K::zero(); unknowns.len()];
                v[i] = K::one();
                field_of(&v)
            })
            .collect());
    }
    let gb = groebner_basis(&nonzero.iter().map(|g| (*g).clone()).collect::<Vec<_>>(), None)?;
    let partials: Vec<Vec<MultiPoly<K>>> = nonzero.iter().map(|g| (0..n).map(|k| g.partial_at(k)).collect()).collect();
    let mut rows: BTreeMap<(usize, Exponents), usize> = BTreeMap::new();
    let mut cols: Vec<Vec<(usize, K)>> = vec![];
    for (k, m) in &unknowns {
        let mut col = vec![];
        for (i, p) in partials.iter().enumerate() {
            let r = gb.reduce(&p[*k].shift(m))?;
            for (e, c) in r.terms() {
                let next = rows.len();
                let row = *rows.entry((i, e.clone())).or_insert(next);
                col.push((row, c.clone()));
            }
        }
        cols.push(col);
    }
    let mut a = Matrix::zeros(rows.len(), unknowns.len());
    for (j, col) in cols.into_iter().enumerate() {
        for (i, c) in col {
            a[(i, j)] = c;
        }
    }
    Ok(a.nullspace().iter().map(|v| field_of(v)).collect())
}

/// Result of [`unfolding_basis`].
#[derive(Clone, Debug)]
pub struct UnfoldingBasis {
    pub monomials: Vec<Exponents>,
    pub log_fields: usize,
    pub field_degree: u32,
}

/// Standard monomials of `M_f` that survive after dividing out the images
/// `ξ(f)` of the tangent fields of degree at most `field_degree`. Images are
/// reduced in the basis of `M_f`, which already contains `I`; the pivots of
/// their row echelon form (highest monomials first) are discarded.
pub fn unfolding_basis<K: Field>(
    mf: &MonomialQuotient<K>,
    ideal: &[MultiPoly<K>],
    f: &MultiPoly<K>,
    field_degree: Option<u32>,
) -> Result<UnfoldingBasis> {
    let vars = mf.vars().clone();
    let top = mf.basis().iter().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0);
    let d = field_degree.unwrap_or(top + 1);
    let ideal = ideal.iter().map(|g| g.remap(&vars)).collect::<Result<Vec<_>>>()?;
    let f = f.remap(&vars)?;
    let fields = log_vector_fields(&vars, &ideal, d)?;
    let dim = mf.dimension();
    let images: Vec<Vec<K>> = fields
        .iter()
        .map(|v| {
            let nf = mf.normal_form(&v.apply(&f)?)?;
            Ok((0..dim).rev().map(|i| nf[i].clone()).collect())
        })
        .collect::<Result<_>>()?;
    let pivots = if images.is_empty() { vec![] } else { Matrix::from_rows(images).rref().1 };
    let monomials = (0..dim).filter(|i| !pivots.contains(&(dim - 1 - i))).map(|i| mf.basis()[i].clone()).collect();
    Ok(UnfoldingBasis { monomials, log_fields: fields.len(), field_degree: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{Poly, PolyRing};
    use crate::deform::curve::{compute_mf_spacecurve, DeterminantalCurveFamily};
    use crate::quotient::groebner::quotient_dimension;
    use crate::scalar::Rational;

    #[test]
    fn node_fields() {
        let r = PolyRing::new(&["x", "y"]);
        let (x, y): (Poly, Poly) = (r.var("x"), r.var("y"));
        let xy = &x * &y;
        // degree 0: none; degree ≤ 1: x∂x, y∂y
        assert_eq!(log_vector_fields(r.vars(), std::slice::from_ref(&xy), 0).unwrap().len(), 0);
        let v1 = log_vector_fields(r.vars(), std::slice::from_ref(&xy), 1).unwrap();
        assert_eq!(v1.len(), 2);
        let gb = groebner_basis(std::slice::from_ref(&xy), None).unwrap();
        for v in &v1 {
            assert!(gb.contains(&v.apply(&xy).unwrap()).unwrap());
        }
    }

    #[test]
    fn node_unfolding() {
        let r = PolyRing::new(&["x", "y"]);
        let (x, y): (Poly, Poly) = (r.var("x"), r.var("y"));
        let xy = &x * &y;
        let f = &x.pow(3) + &y.pow(2);
        let mf = quotient_dimension(&[xy.clone(), x.pow(3), y.pow(2)], 6).unwrap();
        let u = unfolding_basis(&mf, &[xy], &f, None).unwrap();
        assert_eq!(u.monomials, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0]]);
    }

    #[test]
    fn morse_on_smooth_space() {
        let r = PolyRing::new(&["x", "y"]);
        let (x, y): (Poly, Poly) = (r.var("x"), r.var("y"));
        let f = &x.pow(2) + &y.pow(2);
        let mf = quotient_dimension(&[x.clone(), y.clone()], 4).unwrap();
        let u = unfolding_basis::<Rational>(&mf, &[], &f, None).unwrap();
        assert_eq!(u.monomials, vec![vec![0, 0]]);
    }

    #[test]
    fn curve_unfolding() {
        for (p, q, r) in [(2, 2, 2), (2, 3, 4)] {
            let fam = DeterminantalCurveFamily::axes(p, q, r).unwrap();
            let mf = compute_mf_spacecurve(&fam).unwrap();
            let xyz = fam.coordinate_vars();
            let ideal: Vec<Poly> = fam.minors.iter().map(|m| m.restrict(&xyz).unwrap()).collect();
            let f = fam.f.restrict(&xyz).unwrap();
            let u = unfolding_basis(&mf, &ideal, &f, None).unwrap();
            let mut expected = vec![vec![0, 0, 0]];
            for k in 1..p as u32 {
                expected.push(vec![k, 0, 0]);
            }
            for k in 1..q as u32 {
                expected.push(vec![0, k, 0]);
            }
            for k in 1..r as u32 {
                expected.push(vec![0, 0, k]);
            }
            let mut got = u.monomials.clone();
            got.sort();
            expected.sort();
            assert_eq!(got, expected, "({p},{q},{r})");
        }
    }
}
