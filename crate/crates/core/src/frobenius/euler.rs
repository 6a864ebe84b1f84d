//! The Euler field of the node family and the quasi-homogeneity of the
//! pairing.

use num_traits::Zero;
use serde::Serialize;

use super::fiber::FiberModel;
use super::pairing::{pairing_matrix, reverse_indices};
use crate::algebra::linalg::Matrix;
use crate::algebra::poly::{Poly, PolyRing};
use crate::algebra::ratfun::RatFn;
use crate::deform::node::{tprime_node, EpsLift, NodeFamily, NodeField};
use crate::deform::vfield::VectorFieldPoly;
use crate::error::Result;
use crate::scalar::{rational_string, Field, Rational};

/// Weight of each base coordinate `(ε, a₁.., b₁.., c)`:
/// `1/p + 1/q`, `(p−i)/p`, `(q−j)/q`, `1`.
pub fn coordinate_weights(p: usize, q: usize) -> Vec<Rational> {
    let (pi, qi) = (p as i64, q as i64);
    let mut w = vec![Rational::from_frac(pi + qi, pi * qi)];
    w.extend((1..pi).map(|i| Rational::from_frac(pi - i, pi)));
    w.extend((1..qi).map(|j| Rational::from_frac(qi - j, qi)));
    w.push(Rational::from_int(1));
    w
}

/// `E = (1/p+1/q) ε∂ε + Σ (p−i)/p a_i∂a_i + Σ (q−j)/q b_j∂b_j + c∂c` on
/// the base.
pub fn euler_field(fam: &NodeFamily) -> VectorFieldPoly<Rational> {
    let ring = PolyRing::new(&fam.parameters);
    let coeffs: Vec<Poly> = fam
        .parameters
        .iter()
        .zip(coordinate_weights(fam.p, fam.q))
        .map(|(name, w)| ring.var::<Rational>(name).scale(&w))
        .collect();
    VectorFieldPoly::new(ring.vars(), coeffs)
}

/// Components `e_k` of `E = Σ e_k·X_k` over the frame, in frame order.
pub fn euler_in_frame(fam: &NodeFamily) -> Vec<Poly> {
    let e = euler_field(fam);
    let ring = PolyRing::new(&fam.parameters);
    let w = coordinate_weights(fam.p, fam.q);
    fam.frame()
        .into_iter()
        .map(|u| match u {
            // the ε-component is already a multiple of ε
            NodeField::EpsDEps => ring.constant(w[0].clone()),
            NodeField::DA(i) => e.coeff(&format!("a{i}")).unwrap().clone(),
            NodeField::DB(j) => e.coeff(&format!("b{j}")).unwrap().clone(),
            NodeField::DC => e.coeff("c").unwrap().clone(),
        })
        .collect()
}

/// `t'F(E)` and the class of `F` in the node algebra over the field of
/// rational functions on the base.
pub fn euler_classes(fam: &NodeFamily) -> Result<(Vec<RatFn>, Vec<RatFn>)> {
    let base = fam.symbolic_base();
    let comps = euler_in_frame(fam);
    let mut acc: Option<Vec<RatFn>> = None;
    for (u, c) in fam.frame().into_iter().zip(comps) {
        let img = tprime_node(u, fam, &base, EpsLift::Symmetric)?;
        let c = RatFn::from_poly(c);
        let term: Vec<RatFn> = img.into_iter().map(|x| x * c.clone()).collect();
        acc = Some(match acc {
            None => term,
            Some(a) => a.into_iter().zip(term).map(|(x, y)| x + y).collect(),
        });
    }
    let f = fam.class_of(&fam.f, &base)?;
    Ok((acc.unwrap_or_default(), f))
}

/// `t'F(E) = [F]` in the node algebra, as an identity of rational functions.
pub fn euler_check(fam: &NodeFamily) -> Result<bool> {
    let (te, f) = euler_classes(fam)?;
    Ok(te == f)
}

/// `E(φ)` for a rational function on the base.
pub fn apply_euler(fam: &NodeFamily, phi: &RatFn) -> RatFn {
    coordinate_weights(fam.p, fam.q)
        .into_iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(m, w)| {
            let x = fam.symbolic_base()[m].clone();
            phi.partial_at(m) * x * RatFn::constant(w)
        })
        .fold(RatFn::constant(Rational::from_int(0)), |a, b| a + b)
}

/// `Some(w)` if `E(φ) = w·φ`; `None` if `φ` is not quasi-homogeneous.
/// Zero is reported with weight 0.
pub fn quasi_degree(fam: &NodeFamily, phi: &RatFn, probe: &[Rational]) -> Option<Rational> {
    let e = apply_euler(fam, phi);
    if Zero::is_zero(phi) {
        return Some(Rational::from_int(0));
    }
    let (ev, pv) = (e.eval(probe)?, phi.eval(probe)?);
    if Zero::is_zero(&pv) {
        return None;
    }
    let w = ev / pv;
    (e == phi.clone() * RatFn::constant(w.clone())).then_some(w)
}

/// Weight `d_k` with `[E, X_k] = −d_k X_k` for each frame field.
pub fn frame_weights(fam: &NodeFamily) -> Vec<Rational> {
    let w = coordinate_weights(fam.p, fam.q);
    fam.frame()
        .into_iter()
        .map(|u| match u {
            NodeField::EpsDEps => Rational::from_int(0),
            NodeField::DA(i) => w[i].clone(),
            NodeField::DB(j) => w[fam.p - 1 + j].clone(),
            NodeField::DC => Rational::from_int(1),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightEntry {
    pub block: String,
    pub i: usize,
    pub j: usize,
    pub expected: String,
    pub found: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightReport {
    pub entries: Vec<WeightEntry>,
    /// Common eigenvalue `λ` with `Lie_E⟨,⟩ = λ⟨,⟩`, if there is one.
    pub lie_eigenvalue: Option<String>,
    pub ok: bool,
}

/// Symbolic pairing matrix over the field of rational functions on the
/// base.
pub fn symbolic_pairing(fam: &NodeFamily) -> Result<Matrix<RatFn>> {
    let fm = FiberModel::new_unchecked(fam, &fam.symbolic_base(), EpsLift::Symmetric)?;
    Ok(pairing_matrix(&fm)?.total)
}

/// Quasi-homogeneity degrees of the entries of the two inverse blocks and
/// the eigenvalue of `Lie_E` on the pairing.
pub fn weight_check(fam: &NodeFamily) -> Result<WeightReport> {
    let (p, q) = (fam.p, fam.q);
    let g = symbolic_pairing(fam)?;
    let probe: Vec<Rational> =
        (0..p + q).map(|k| Rational::from_frac(2 * k as i64 + 3, k as i64 + 2)).collect();
    let mut entries = vec![];
    let blocks = [("a", (1..p).collect::<Vec<_>>(), p), ("b", (p..p + q - 1).collect::<Vec<_>>(), q)];
    for (name, pos, n) in blocks {
        let block = reverse_indices(&g.submatrix(&pos, &pos));
        for i in 1..n {
            for j in 1..n {
                let expected = Rational::from_frac(i as i64 + j as i64 - n as i64, n as i64);
                let found = quasi_degree(fam, &block[(i - 1, j - 1)], &probe);
                let ok = Zero::is_zero(&block[(i - 1, j - 1)]) || found.as_ref() == Some(&expected);
                entries.push(WeightEntry {
                    block: name.into(),
                    i,
                    j,
                    expected: rational_string(&expected),
                    found: found.as_ref().map(rational_string),
                    ok,
                });
            }
        }
    }
    let d = frame_weights(fam);
    let n = p + q;
    let mut lambda: Option<Rational> = None;
    let mut consistent = true;
    for k in 0..n {
        for l in 0..n {
            let gkl = &g[(k, l)];
            if Zero::is_zero(gkl) {
                continue;
            }
            let lie = apply_euler(fam, gkl) + gkl.clone() * RatFn::constant(d[k].clone() + d[l].clone());
            match quasi_ratio(&lie, gkl, &probe) {
                Some(w) if lambda.is_none() || lambda.as_ref() == Some(&w) => lambda = Some(w),
                _ => consistent = false,
            }
        }
    }
    let lambda = if consistent { lambda } else { None };
    let ok = entries.iter().all(|e| e.ok) && lambda.is_some();
    Ok(WeightReport { entries, lie_eigenvalue: lambda.as_ref().map(rational_string), ok })
}

fn quasi_ratio(a: &RatFn, b: &RatFn, probe: &[Rational]) -> Option<Rational> {
    let w = a.eval(probe)? / b.eval(probe)?;
    (a.clone() == b.clone() * RatFn::constant(w.clone())).then_some(w)
}
