//! Determinantal space curves: maximal minors of a 2×3 matrix, the
//! tangent fields built from pairs of minors, and the module `M_f`.

use std::sync::Arc;

use serde::Serialize;

use super::vfield::VectorFieldPoly;
use crate::algebra::poly::{var_list, MultiPoly, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::quotient::groebner::{quotient_dimension_retry, MonomialQuotient};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct DeterminantalCurveFamily {
    /// `(p, q, r)` for the coordinate-axes family, if built that way.
    pub exponents: Option<(usize, usize, usize)>,
    pub coordinates: Vec<String>,
    /// Matrix perturbation parameters followed by unfolding parameters.
    pub parameters: Vec<String>,
    pub matrix_parameters: Vec<String>,
    /// Rows of the 2×3 matrix whose maximal minors define the curve.
    pub matrix: Vec<Vec<Poly>>,
    pub perturbed: Vec<Vec<Poly>>,
    pub minors: Vec<Poly>,
    pub perturbed_minors: Vec<Poly>,
    pub f: Poly,
    /// Unfolding of `f` over the unfolding parameters.
    pub unfolding: Poly,
    #[serde(skip)]
    ring: PolyRing,
}

/// Determinant by expansion along the first row.
pub fn poly_det<K: Field>(m: &[Vec<MultiPoly<K>>]) -> MultiPoly<K> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero_in(m[0][0].vars());
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly<K>>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = &m[0][j] * &poly_det(&minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// Signed maximal minors `Δ_i = (−1)^(i+1) det(M without column i)` of an
/// `(m−1)×m` matrix.
pub fn signed_minors<K: Field>(rows: &[Vec<MultiPoly<K>>]) -> Vec<MultiPoly<K>> {
    let m = rows[0].len();
    (0..m)
        .map(|i| {
            let sub: Vec<Vec<MultiPoly<K>>> =
                rows.iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, x)| x.clone()).collect()).collect();
            let d = poly_det(&sub);
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// `∇Δ_i × ∇Δ_j` over the three coordinates `coords`, for every pair
/// `i < j`: the determinant with rows `(∂_1, ∂_2, ∂_3)`, `∇Δ_i`, `∇Δ_j`
/// expanded along the first row.
pub fn tangent_fields_from_minors<K: Field>(minors: &[MultiPoly<K>], coords: &[String]) -> Result<Vec<VectorFieldPoly<K>>> {
    if coords.len() != 3 {
        return Err(Error::WrongAmbientDimension { expected: 3, got: coords.len() });
    }
    let targets: Arc<[String]> = coords.to_vec().into();
    let grads: Vec<Vec<MultiPoly<K>>> =
        minors.iter().map(|d| coords.iter().map(|c| d.partial(c)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let mut out = vec![];
    for i in 0..minors.len() {
        for j in i + 1..minors.len() {
            let (u, v) = (&grads[i], &grads[j]);
            let comp = |a: usize, b: usize| &(&u[a] * &v[b]) - &(&u[b] * &v[a]);
            out.push(VectorFieldPoly::new(&targets, vec![comp(1, 2), -comp(0, 2), comp(0, 1)]));
        }
    }
    Ok(out)
}

impl DeterminantalCurveFamily {
    /// `C_{p,q,r}`: the coordinate axes, `M = ((x, y, 0), (0, y, z))`,
    /// perturbed to `((x, y, l1), (l2, y + l3, z))`, with
    /// `f = x^p + y^q + z^r` unfolded by lower powers and a constant.
    pub fn axes(p: usize, q: usize, r: usize) -> Result<Self> {
        for e in [p, q, r] {
            if e < 2 {
                return Err(Error::InvalidExponent(e));
            }
        }
        let matrix_parameters: Vec<String> = ["l1", "l2", "l3"].iter().map(|s| s.to_string()).collect();
        let mut parameters = matrix_parameters.clone();
        let mut unf: Vec<(String, &str, u32)> = vec![];
        for (letter, var, e) in [("a", "x", p), ("b", "y", q), ("c", "z", r)] {
            for i in 1..e {
                unf.push((format!("{letter}{i}"), var, (e - i) as u32));
            }
        }
        parameters.extend(unf.iter().map(|u| u.0.clone()));
        parameters.push("d".into());
        let coordinates: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let mut names = coordinates.clone();
        names.extend(parameters.iter().cloned());
        let ring = PolyRing::new(&names);
        let v = |s: &str| -> Poly { ring.var(s) };
        let (x, y, z) = (v("x"), v("y"), v("z"));
        let zero: Poly = ring.zero();
        let matrix = vec![vec![x.clone(), y.clone(), zero.clone()], vec![zero, y.clone(), z.clone()]];
        let perturbed = vec![vec![x.clone(), y.clone(), v("l1")], vec![v("l2"), &y + &v("l3"), z.clone()]];
        let f = &(&x.pow(p as u32) + &y.pow(q as u32)) + &z.pow(r as u32);
        let mut unfolding = &f + &v("d");
        for (name, var, e) in &unf {
            unfolding = &unfolding + &(&v(name) * &v(var).pow(*e));
        }
        let minors = signed_minors(&matrix);
        let perturbed_minors = signed_minors(&perturbed);
        Ok(DeterminantalCurveFamily {
            exponents: Some((p, q, r)),
            coordinates,
            parameters,
            matrix_parameters,
            matrix,
            perturbed,
            minors,
            perturbed_minors,
            f,
            unfolding,
            ring,
        })
    }

    pub fn vars(&self) -> &Arc<[String]> {
        self.ring.vars()
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn coordinate_vars(&self) -> Arc<[String]> {
        self.coordinates.clone().into()
    }

    /// Tangent fields of the unperturbed curve.
    pub fn tangent_fields(&self) -> Result<Vec<VectorFieldPoly<Rational>>> {
        tangent_fields_from_minors(&self.minors, &self.coordinates)
    }

    /// Tangent fields of the fibres of the perturbed family.
    pub fn perturbed_tangent_fields(&self) -> Result<Vec<VectorFieldPoly<Rational>>> {
        tangent_fields_from_minors(&self.perturbed_minors, &self.coordinates)
    }

    /// Ideal of `M_f` in the coordinate ring: the minors together with the
    /// derivatives of `f` along the tangent fields.
    pub fn mf_ideal(&self) -> Result<Vec<Poly>> {
        let xyz = self.coordinate_vars();
        let mut gens: Vec<Poly> = self.minors.iter().map(|m| m.restrict(&xyz)).collect::<Result<_>>()?;
        for v in self.tangent_fields()? {
            let g = v.apply(&self.f)?.restrict(&xyz)?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(gens)
    }

    pub fn default_degree_bound(&self) -> u32 {
        match self.exponents {
            Some((p, q, r)) => (p + q + r + 3) as u32,
            None => 2 * self.f.total_degree() + 4,
        }
    }
}

/// `M_f = O/(I + (V(f)))` for the unperturbed curve.
pub fn compute_mf_spacecurve(fam: &DeterminantalCurveFamily) -> Result<MonomialQuotient<Rational>> {
    quotient_dimension_retry(&fam.mf_ideal()?, fam.default_degree_bound())
}

pub fn xyz() -> Arc<[String]> {
    var_list(&["x", "y", "z"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn det3_oracle(rows: [[Poly; 3]; 2], r: &PolyRing) -> [Poly; 3] {
        // Sarrus with the first row (e_x, e_y, e_z)
        let [u, v] = rows;
        let _ = r;
        [
            &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
            &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
            &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
        ]
    }

    #[test]
    fn axes_minors() {
        let fam = DeterminantalCurveFamily::axes(2, 2, 2).unwrap();
        let r = fam.ring();
        let (x, y, z): (Poly, Poly, Poly) = (r.var("x"), r.var("y"), r.var("z"));
        assert_eq!(fam.minors, vec![&y * &z, -(&x * &z), &x * &y]);
        let l1: Poly = r.var("l1");
        assert_eq!(fam.perturbed_minors[0], &(&y * &z) - &(&l1 * &(&y + &r.var::<Rational>("l3"))));
    }

    #[test]
    fn tangent_fields_match_cross_products() {
        let fam = DeterminantalCurveFamily::axes(2, 3, 4).unwrap();
        let r = fam.ring();
        let fields = fam.tangent_fields().unwrap();
        assert_eq!(fields.len(), 3);
        let grad = |d: &Poly| [d.partial("x").unwrap(), d.partial("y").unwrap(), d.partial("z").unwrap()];
        let pairs = [(0, 1), (0, 2), (1, 2)];
        for (f, (i, j)) in fields.iter().zip(pairs) {
            let o = det3_oracle([grad(&fam.minors[i]), grad(&fam.minors[j])], r);
            assert_eq!(f.coeffs(), &o);
        }
        let z: Poly = r.var("z");
        let y: Poly = r.var("y");
        // pair (yz, -xz) restricted to the z-axis is z^2 d/dz
        let on_z = fields[0].map_coeffs(|c| c.eval_partial(&[(0, int(0)), (1, int(0))]));
        assert_eq!(on_z.coeffs(), &[r.zero(), r.zero(), z.pow(2)]);
        // pair (yz, xy) restricted to the y-axis is y^2 d/dy
        let on_y = fields[1].map_coeffs(|c| c.eval_partial(&[(0, int(0)), (2, int(0))]));
        assert_eq!(on_y.coeffs(), &[r.zero(), y.pow(2), r.zero()]);
    }

    #[test]
    fn fields_are_tangent() {
        let fam = DeterminantalCurveFamily::axes(3, 2, 2).unwrap();
        let ideal = crate::quotient::groebner::groebner_basis(&fam.perturbed_minors, None).unwrap();
        for v in fam.perturbed_tangent_fields().unwrap() {
            for d in &fam.perturbed_minors {
                assert!(ideal.contains(&v.apply(d).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn perturbation_specializes() {
        let fam = DeterminantalCurveFamily::axes(2, 2, 2).unwrap();
        let zero_params: Vec<(usize, Rational)> = (3..6).map(|i| (i, int(0))).collect();
        let specialized: Vec<_> =
            fam.perturbed_tangent_fields().unwrap().iter().map(|v| v.map_coeffs(|c| c.eval_partial(&zero_params))).collect();
        assert_eq!(specialized, fam.tangent_fields().unwrap());
    }

    #[test]
    fn wrong_ambient_dimension() {
        let r = PolyRing::new(&["x", "y"]);
        let coords = vec!["x".to_string(), "y".to_string()];
        let err = tangent_fields_from_minors::<Rational>(&[r.var("x")], &coords).unwrap_err();
        assert_eq!(err, Error::WrongAmbientDimension { expected: 3, got: 2 });
    }

    #[test]
    fn mf_dimensions() {
        let fam = DeterminantalCurveFamily::axes(2, 2, 2).unwrap();
        let q = compute_mf_spacecurve(&fam).unwrap();
        assert_eq!(q.dimension(), 7);
        let fam = DeterminantalCurveFamily::axes(3, 2, 4).unwrap();
        assert_eq!(compute_mf_spacecurve(&fam).unwrap().dimension(), 3 + 2 + 4 + 1);
    }
}
