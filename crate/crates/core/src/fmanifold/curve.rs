//! The multiplication on the base of the determinantal curve family, computed
//! at rational base points.
//!
//! The fibre algebra `A_b = O/(Δ̃(b), V(F_b))` is represented by the matrices
//! of multiplication by `x, y, z` on its standard monomials. First
//! derivatives along a base coordinate are obtained by linearising the
//! conditions `G(M)·1 = 0`, `[M_k, M_l] = 0` on those matrices, so every
//! quantity is available over dual numbers without eliminating over them.

use std::collections::HashMap;

use rayon::prelude::*;

use super::structure::{structure_from_images, FStructure, Tensor3};
use crate::algebra::linalg::Matrix;
use crate::algebra::poly::{Exponents, MultiPoly};
use crate::deform::curve::{signed_minors, tangent_fields_from_minors, xyz, DeterminantalCurveFamily};
use crate::error::{Error, Result};
use crate::quotient::groebner::quotient_dimension_retry;
use crate::scalar::{Dual, Field, Rational};

/// Scalars with an underlying rational value.
pub trait PointScalar: Field {
    fn base(&self) -> Rational;
}

impl PointScalar for Rational {
    fn base(&self) -> Rational {
        self.clone()
    }
}

impl PointScalar for Dual<Rational> {
    fn base(&self) -> Rational {
        self.re.clone()
    }
}

/// `F_b`, the perturbed matrix `M̃(b)` and its minors, as polynomials in
/// `x, y, z`.
#[derive(Clone, Debug)]
pub struct CurveFibre<K> {
    pub point: Vec<K>,
    pub f: MultiPoly<K>,
    pub matrix: Vec<Vec<MultiPoly<K>>>,
    pub minors: Vec<MultiPoly<K>>,
}

impl<K: Field> CurveFibre<K> {
    pub fn new(fam: &DeterminantalCurveFamily, point: &[K]) -> Result<Self> {
        if point.len() != fam.parameters.len() {
            return Err(Error::BadBasePoint { expected: fam.parameters.len(), got: point.len() });
        }
        let xyz = xyz();
        let spec = |p: &MultiPoly<Rational>| -> Result<MultiPoly<K>> { specialize(fam, p, point)?.restrict(&xyz) };
        let matrix: Vec<Vec<MultiPoly<K>>> =
            fam.perturbed.iter().map(|r| r.iter().map(spec).collect::<Result<_>>()).collect::<Result<_>>()?;
        let minors = signed_minors(&matrix);
        Ok(CurveFibre { point: point.to_vec(), f: spec(&fam.unfolding)?, matrix, minors })
    }

    /// Generators of the ideal of `A_b`.
    pub fn ideal(&self) -> Result<Vec<MultiPoly<K>>> {
        let mut gens = self.minors.clone();
        for v in tangent_fields_from_minors(&self.minors, &xyz())? {
            let g = v.apply(&self.f)?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(gens)
    }
}

/// Substitutes the base point into a polynomial over coordinates and
/// parameters.
pub fn specialize<K: Field>(fam: &DeterminantalCurveFamily, p: &MultiPoly<Rational>, point: &[K]) -> Result<MultiPoly<K>> {
    let vars = fam.vars();
    let subs: Vec<(usize, K)> = fam
        .parameters
        .iter()
        .zip(point)
        .map(|(name, v)| Ok((vars.iter().position(|w| w == name).ok_or_else(|| Error::UnknownVariable(name.clone()))?, v.clone())))
        .collect::<Result<_>>()?;
    Ok(p.map_coeffs(K::from_rational).eval_partial(&subs))
}

/// A finite algebra `K[x, y, z]/I` through its multiplication matrices on a
/// monomial basis starting with `1`.
#[derive(Clone, Debug)]
pub struct PointAlgebra<K> {
    pub basis: Vec<Exponents>,
    pub mats: Vec<Matrix<K>>,
}

impl<K: Field> PointAlgebra<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn one(&self) -> Vec<K> {
        (0..self.dim()).map(|i| if i == 0 { K::one() } else { K::zero() }).collect()
    }

    /// `x^e · v`.
    pub fn monomial_times(&self, e: &[u32], v: &[K]) -> Vec<K> {
        let mut w = v.to_vec();
        for (k, &n) in e.iter().enumerate() {
            for _ in 0..n {
                w = self.mats[k].mul_vec(&w);
            }
        }
        w
    }

    /// Class of a polynomial in `x, y, z`.
    pub fn normal_form(&self, g: &MultiPoly<K>) -> Vec<K> {
        let mut memo: HashMap<Exponents, Vec<K>> = HashMap::new();
        memo.insert(vec![0; self.mats.len()], self.one());
        let mut out = vec![K::zero(); self.dim()];
        for (e, c) in g.terms() {
            let w = self.power_vector(e, &mut memo);
            for (o, x) in out.iter_mut().zip(w) {
                *o = o.clone() + c.clone() * x;
            }
        }
        out
    }

    fn power_vector(&self, e: &[u32], memo: &mut HashMap<Exponents, Vec<K>>) -> Vec<K> {
        if let Some(v) = memo.get(e) {
            return v.clone();
        }
        let k = e.iter().position(|&x| x > 0).unwrap();
        let mut prev = e.to_vec();
        prev[k] -= 1;
        let w = self.mats[k].mul_vec(&self.power_vector(&prev, memo));
        memo.insert(e.to_vec(), w.clone());
        w
    }

    pub fn mul(&self, u: &[K], v: &[K]) -> Vec<K> {
        let mut out = vec![K::zero(); self.dim()];
        for (b, ub) in self.basis.iter().zip(u) {
            if ub.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.monomial_times(b, v)) {
                *o = o.clone() + ub.clone() * x;
            }
        }
        out
    }

    /// Matrix of multiplication by the element `u`.
    pub fn mult_matrix(&self, u: &[K]) -> Matrix<K> {
        let n = self.dim();
        let cols: Vec<Vec<K>> = (0..n).map(|j| self.mul(u, &unit_vector(n, j))).collect();
        Matrix::from_fn(n, n, |i, j| cols[j][i].clone())
    }
}

fn unit_vector<K: Field>(n: usize, i: usize) -> Vec<K> {
    (0..n).map(|k| if k == i { K::one() } else { K::zero() }).collect()
}

pub fn expected_dimension(fam: &DeterminantalCurveFamily) -> usize {
    fam.parameters.len()
}

/// `A_b` at a rational point, from a Gröbner basis.
pub fn curve_algebra_at(fam: &DeterminantalCurveFamily, point: &[Rational]) -> Result<PointAlgebra<Rational>> {
    let fib = CurveFibre::new(fam, point)?;
    let q = quotient_dimension_retry(&fib.ideal()?, fam.default_degree_bound())?;
    let expected = expected_dimension(fam);
    if q.dimension() != expected {
        return Err(Error::DimensionDrop { expected, got: q.dimension() });
    }
    let vars = xyz();
    let mats = (0..3).map(|k| q.mult_matrix(&MultiPoly::var_at(&vars, k))).collect::<Result<Vec<_>>>()?;
    Ok(PointAlgebra { basis: q.basis().to_vec(), mats })
}

/// `A_{b+δ·e_m}` over dual numbers, from the algebra at `b`.
pub fn curve_algebra_dual(
    fam: &DeterminantalCurveFamily,
    point: &[Rational],
    alg: &PointAlgebra<Rational>,
    m: usize,
) -> Result<PointAlgebra<Dual<Rational>>> {
    let dpoint = dual_point(point, m);
    let gens = CurveFibre::new(fam, &dpoint)?.ideal()?;
    let n = alg.dim();
    let nv = alg.mats.len();
    // unknown columns: those of M_k not fixed by x_k·b_j ∈ basis
    let mut unknowns = vec![];
    for k in 0..nv {
        for (j, b) in alg.basis.iter().enumerate() {
            let mut e = b.clone();
            e[k] += 1;
            if !alg.basis.contains(&e) {
                unknowns.extend((0..n).map(|i| (k, i, j)));
            }
        }
    }
    let residual = |d: Option<(usize, usize, usize)>| -> Vec<Rational> {
        let mats: Vec<Matrix<Dual<Rational>>> = (0..nv)
            .map(|k| {
                Matrix::from_fn(n, n, |i, j| {
                    let du = if d == Some((k, i, j)) { Rational::from_int(1) } else { Rational::from_int(0) };
                    Dual::new(alg.mats[k][(i, j)].clone(), du)
                })
            })
            .collect();
        let da = PointAlgebra { basis: alg.basis.clone(), mats };
        let mut out: Vec<Rational> = gens.iter().flat_map(|g| da.normal_form(g).into_iter().map(|x| x.du)).collect();
        for k in 0..nv {
            for l in k + 1..nv {
                let c = da.mats[k].mul(&da.mats[l]).sub(&da.mats[l].mul(&da.mats[k]));
                out.extend(c.to_rows().into_iter().flatten().map(|x| x.du));
            }
        }
        out
    };
    let f0 = residual(None);
    let cols: Vec<Vec<Rational>> =
        unknowns.par_iter().map(|&u| residual(Some(u)).into_iter().zip(&f0).map(|(a, b)| a - b.clone()).collect()).collect();
    let u = unknowns.len();
    let aug = Matrix::from_fn(f0.len(), u + 1, |r, c| if c < u { cols[c][r].clone() } else { -f0[r].clone() });
    let (red, pivots) = aug.rref();
    if pivots != (0..u).collect::<Vec<_>>() {
        return Err(Error::NotReduced);
    }
    let z: Vec<Rational> = (0..u).map(|r| red[(r, u)].clone()).collect();
    let mut mats: Vec<Matrix<Dual<Rational>>> = alg.mats.iter().map(|m| m.map(|x| Dual::constant(x.clone()))).collect();
    for (&(k, i, j), v) in unknowns.iter().zip(z) {
        mats[k][(i, j)].du = v;
    }
    Ok(PointAlgebra { basis: alg.basis.clone(), mats })
}

fn dual_point(point: &[Rational], m: usize) -> Vec<Dual<Rational>> {
    point.iter().enumerate().map(|(k, v)| if k == m { Dual::variable(v.clone()) } else { Dual::constant(v.clone()) }).collect()
}

/// Solves `A z = r` so that the solution depends smoothly on the point:
/// pivots are chosen on the rational values and the square subsystem is
/// solved over `K`.
fn smooth_solution<K: PointScalar>(a: &Matrix<K>, r: &[K]) -> Option<Vec<K>> {
    let a0 = a.map(|x| x.base());
    let r0: Vec<Rational> = r.iter().map(|x| x.base()).collect();
    a0.particular_solution(&r0)?;
    let (_, cols) = a0.rref();
    let (_, rows) = a0.submatrix(&(0..a0.nrows()).collect::<Vec<_>>(), &cols).transpose().rref();
    let sq = a.submatrix(&rows, &cols);
    let rs: Vec<K> = rows.iter().map(|&i| r[i].clone()).collect();
    let zs = sq.solve(&rs).ok()?;
    let mut z = vec![K::zero(); a.ncols()];
    for (&c, v) in cols.iter().zip(zs) {
        z[c] = v;
    }
    (a.mul_vec(&z) == r).then_some(z)
}

fn monomials_in_three(d: u32) -> Vec<Exponents> {
    let mut out = vec![];
    for t in 0..=d {
        for i in (0..=t).rev() {
            for j in (0..=t - i).rev() {
                out.push(vec![i, j, t - i - j]);
            }
        }
    }
    out
}

/// A lift `ξ = ∂_param + Σ ξ_k ∂_k` tangent to the total space, found as
/// `ξ(M̃) + ∂M̃ = A·M̃ + M̃·B` with polynomial `ξ_k`, `A`, `B` of degree at
/// most `deg`. Returns `(ξ_x, ξ_y, ξ_z)`.
pub fn tangent_lift<K: PointScalar>(
    fam: &DeterminantalCurveFamily,
    fib: &CurveFibre<K>,
    param: &str,
    deg: u32,
) -> Result<Option<Vec<MultiPoly<K>>>> {
    let vars = xyz();
    let rows = fib.matrix.len();
    let ncols = fib.matrix[0].len();
    let dm: Vec<Vec<MultiPoly<K>>> = fam
        .perturbed
        .iter()
        .map(|r| r.iter().map(|e| specialize(fam, &e.partial(param)?, &fib.point)?.restrict(&vars)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let grads: Vec<Vec<Vec<MultiPoly<K>>>> = fib
        .matrix
        .iter()
        .map(|r| r.iter().map(|e| (0..3).map(|k| e.partial_at(k)).collect()).collect())
        .collect();
    let mons = monomials_in_three(deg);
    let zero = MultiPoly::zero_in(&vars);
    // each unknown contributes a rows×ncols matrix of polynomials
    let mut contribs: Vec<Vec<Vec<MultiPoly<K>>>> = vec![];
    for k in 0..3 {
        for e in &mons {
            let mon = MultiPoly::monomial(&vars, e.clone(), K::one());
            contribs.push((0..rows).map(|i| (0..ncols).map(|j| &mon * &grads[i][j][k]).collect()).collect());
        }
    }
    for a in 0..rows {
        for b in 0..rows {
            for e in &mons {
                let mon = MultiPoly::monomial(&vars, e.clone(), K::one());
                let mut c = vec![vec![zero.clone(); ncols]; rows];
                for j in 0..ncols {
                    c[a][j] = -(&mon * &fib.matrix[b][j]);
                }
                contribs.push(c);
            }
        }
    }
    for a in 0..ncols {
        for b in 0..ncols {
            for e in &mons {
                let mon = MultiPoly::monomial(&vars, e.clone(), K::one());
                let mut c = vec![vec![zero.clone(); ncols]; rows];
                for (i, row) in c.iter_mut().enumerate() {
                    row[b] = -(&fib.matrix[i][a] * &mon);
                }
                contribs.push(c);
            }
        }
    }
    let mut index: HashMap<(usize, usize, Exponents), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, K)> = vec![];
    let mut rhs_terms: Vec<(usize, K)> = vec![];
    let slot = |i: usize, j: usize, e: &Exponents, index: &mut HashMap<(usize, usize, Exponents), usize>| -> usize {
        let len = index.len();
        *index.entry((i, j, e.clone())).or_insert(len)
    };
    for (u, c) in contribs.iter().enumerate() {
        for i in 0..rows {
            for j in 0..ncols {
                for (e, v) in c[i][j].terms() {
                    entries.push((slot(i, j, e, &mut index), u, v.clone()));
                }
            }
        }
    }
    for i in 0..rows {
        for j in 0..ncols {
            for (e, v) in dm[i][j].terms() {
                rhs_terms.push((slot(i, j, e, &mut index), -v.clone()));
            }
        }
    }
    let mut a: Matrix<K> = Matrix::zeros(index.len(), contribs.len());
    for (r, c, v) in entries {
        a[(r, c)] = a[(r, c)].clone() + v;
    }
    let mut rhs = vec![K::zero(); index.len()];
    for (r, v) in rhs_terms {
        rhs[r] = rhs[r].clone() + v;
    }
    Ok(smooth_solution(&a, &rhs).map(|z| {
        (0..3)
            .map(|k| MultiPoly::from_terms(&vars, mons.iter().cloned().zip(z[k * mons.len()..(k + 1) * mons.len()].iter().cloned())))
            .collect()
    }))
}

pub const MAX_LIFT_DEGREE: u32 = 3;

/// `t'F(∂_param) ∈ A_b` for every base coordinate, as columns in parameter
/// order.
pub fn curve_images<K: PointScalar>(fam: &DeterminantalCurveFamily, fib: &CurveFibre<K>, alg: &PointAlgebra<K>) -> Result<Matrix<K>> {
    let vars = xyz();
    let mut cols = vec![];
    for name in &fam.parameters {
        let g = if fam.matrix_parameters.contains(name) {
            let mut lift = None;
            for d in 1..=MAX_LIFT_DEGREE {
                if let Some(xi) = tangent_lift(fam, fib, name, d)? {
                    lift = Some(xi);
                    break;
                }
            }
            let xi = lift.ok_or_else(|| Error::NoLift(name.clone()))?;
            (0..3).fold(MultiPoly::zero_in(&vars), |acc, k| &acc + &(&xi[k] * &fib.f.partial_at(k)))
        } else {
            specialize(fam, &fam.unfolding.partial(name)?, &fib.point)?.restrict(&vars)?
        };
        cols.push(alg.normal_form(&g));
    }
    let n = alg.dim();
    Ok(Matrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone()))
}

fn curve_structure<K: PointScalar>(fam: &DeterminantalCurveFamily, point: &[K], alg: &PointAlgebra<K>) -> Result<Tensor3<K>> {
    let fib = CurveFibre::new(fam, point)?;
    let t = curve_images(fam, &fib, alg)?;
    structure_from_images(&t, |u, v| Ok(alg.mul(u, v)))
}

/// Weight of each base coordinate: `l1, l2, l3` get `1/r, 1/p, 1/q`, the
/// coefficient of `x^(p−i)` gets `i/p` and so on, `d` gets `1`.
pub fn curve_weights(fam: &DeterminantalCurveFamily) -> Option<Vec<Rational>> {
    let (p, q, r) = fam.exponents?;
    let w = |n: usize, d: usize| Rational::from_frac(n as i64, d as i64);
    let mut out = vec![w(1, r), w(1, p), w(1, q)];
    for e in [p, q, r] {
        out.extend((1..e).map(|i| w(i, e)));
    }
    out.push(w(1, 1));
    Some(out)
}

/// Frame names `d/dl1, …, d/dd` in parameter order.
pub fn curve_frame(fam: &DeterminantalCurveFamily) -> Vec<String> {
    fam.parameters.iter().map(|p| format!("d/d{p}")).collect()
}

/// The multiplication and Euler field at a rational base point, without
/// derivatives.
pub fn curve_multiplication_at(fam: &DeterminantalCurveFamily, point: &[Rational]) -> Result<FStructure<Rational>> {
    let alg = curve_algebra_at(fam, point)?;
    let c = curve_structure(fam, point, &alg)?;
    let weights = curve_weights(fam).ok_or_else(|| Error::DimensionMismatch("curve weights need the axes family".into()))?;
    let euler = weights.iter().zip(point).map(|(w, v)| w.clone() * v.clone()).collect();
    let unit = fam.parameters.iter().position(|p| p == "d").unwrap_or(fam.parameters.len() - 1);
    FStructure::new(curve_frame(fam), c, vec![], unit, euler, vec![])
}

/// The multiplication at a rational base point together with its first
/// derivatives along every coordinate field.
pub fn build_fstructure_curve(fam: &DeterminantalCurveFamily, point: &[Rational]) -> Result<FStructure<Rational>> {
    let alg = curve_algebra_at(fam, point)?;
    let c = curve_structure(fam, point, &alg)?;
    let nparams = fam.parameters.len();
    let dc = (0..nparams)
        .into_par_iter()
        .map(|m| {
            let dalg = curve_algebra_dual(fam, point, &alg, m)?;
            let cd = curve_structure(fam, &dual_point(point, m), &dalg)?;
            Ok(cd.into_iter().map(|r| r.into_iter().map(|v| v.into_iter().map(|x| x.du).collect()).collect()).collect())
        })
        .collect::<Result<Vec<Tensor3<Rational>>>>()?;
    let weights = curve_weights(fam).ok_or_else(|| Error::DimensionMismatch("curve weights need the axes family".into()))?;
    let euler: Vec<Rational> = weights.iter().zip(point).map(|(w, v)| w.clone() * v.clone()).collect();
    let deuler = (0..nparams)
        .map(|m| (0..nparams).map(|k| if k == m { weights[k].clone() } else { Rational::from_int(0) }).collect())
        .collect();
    let unit = fam.parameters.iter().position(|p| p == "d").unwrap_or(nparams - 1);
    FStructure::new(curve_frame(fam), c, dc, unit, euler, deuler)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn point(n: usize, k: i64) -> Vec<Rational> {
        (0..n as i64).map(|i| rat((5 * i + 3 * k) % 7 - 3, (i + 2 * k) % 3 + 1)).map(|v| if v == int(0) { int(1) } else { v }).collect()
    }

    #[test]
    fn algebra_dimension_and_unit() {
        let fam = DeterminantalCurveFamily::axes(2, 2, 2).unwrap();
        let b = point(fam.parameters.len(), 1);
        let alg = curve_algebra_at(&fam, &b).unwrap();
        assert_eq!(alg.dim(), 7);
        let fs = build_fstructure_curve(&fam, &b).unwrap();
        assert_eq!(fs.frame[fs.unit], "d/dd");
        assert!(fs.check_axioms().ok());
    }

    #[test]
    fn lift_preserves_minors() {
        let fam = DeterminantalCurveFamily::axes(2, 2, 2).unwrap();
        let b = point(fam.parameters.len(), 2);
        let fib = CurveFibre::new(&fam, &b).unwrap();
        let gb = quotient_dimension_retry(&fib.ideal().unwrap(), 9).unwrap();
        let xi = (1..=MAX_LIFT_DEGREE).find_map(|d| tangent_lift(&fam, &fib, "l1", d).unwrap()).unwrap();
        // ξ(Δ̃_i) + ∂Δ̃_i lies in (Δ̃) ⊂ the ideal of A_b
        for (i, d) in fam.perturbed_minors.iter().enumerate() {
            let dd = specialize(&fam, &d.partial("l1").unwrap(), &b).unwrap().restrict(&xyz()).unwrap();
            let v = (0..3).fold(dd, |acc, k| &acc + &(&xi[k] * &fib.minors[i].partial_at(k)));
            assert!(gb.normal_form(&v).unwrap().iter().all(|x| *x == int(0)));
        }
    }

    #[test]
    fn euler_and_integrability_at_a_point() {
        let fam = DeterminantalCurveFamily::axes(2, 2, 2).unwrap();
        let b = point(fam.parameters.len(), 3);
        let fs = build_fstructure_curve(&fam, &b).unwrap();
        assert!(fs.check_euler().unwrap());
        assert!(fs.check_integrability().unwrap().ok());
    }

    #[test]
    fn dual_algebra_matches_difference_quotient_structure() {
        // the derivative of a structure constant along d is zero: F changes by a constant
        let fam = DeterminantalCurveFamily::axes(2, 2, 2).unwrap();
        let b = point(fam.parameters.len(), 1);
        let fs = build_fstructure_curve(&fam, &b).unwrap();
        assert!(fs.lie_along_frame(fs.unit).unwrap().iter().flatten().flatten().all(|x| *x == int(0)));
    }

    #[test]
    fn euler_field_maps_to_f() {
        let fam = DeterminantalCurveFamily::axes(2, 3, 2).unwrap();
        let b = point(fam.parameters.len(), 2);
        let alg = curve_algebra_at(&fam, &b).unwrap();
        let fib = CurveFibre::new(&fam, &b).unwrap();
        let t: Matrix<Rational> = curve_images(&fam, &fib, &alg).unwrap();
        let w = curve_weights(&fam).unwrap();
        let e: Vec<Rational> = w.iter().zip(&b).map(|(w, v)| w.clone() * v.clone()).collect();
        assert_eq!(t.mul_vec(&e), alg.normal_form(&fib.f));
    }
}
