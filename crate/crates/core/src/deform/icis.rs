//! Complete intersections `X = {g_1 = … = g_k = 0}` with a function `f`.

use std::sync::Arc;

use serde::Serialize;

use super::curve::poly_det;
use super::vfield::VectorFieldPoly;
use crate::algebra::poly::{MultiPoly, Poly};
use crate::error::{Error, Result};
use crate::quotient::groebner::{quotient_dimension_retry, MonomialQuotient};
use crate::scalar::{Field, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct ICISFamily {
    pub coordinates: Vec<String>,
    pub g: Vec<Poly>,
    pub f: Poly,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    go(0, n, k, &mut vec![], &mut out);
    out
}

fn gradients<K: Field>(polys: &[&MultiPoly<K>], vars: &Arc<[String]>) -> Result<Vec<Vec<MultiPoly<K>>>> {
    polys.iter().map(|g| vars.iter().map(|v| g.partial(v)).collect()).collect()
}

/// Maximal minors of the Jacobian matrix of `polys`, in lexicographic order
/// of the column subsets.
pub fn jacobian_minors<K: Field>(polys: &[&MultiPoly<K>], vars: &Arc<[String]>) -> Result<Vec<MultiPoly<K>>> {
    let k = polys.len();
    if k > vars.len() {
        return Err(Error::NoMinors { rows: k, cols: vars.len() });
    }
    let jac = gradients(polys, vars)?;
    Ok(subsets(vars.len(), k)
        .into_iter()
        .map(|cols| {
            let m: Vec<Vec<MultiPoly<K>>> = jac.iter().map(|r| cols.iter().map(|&c| r[c].clone()).collect()).collect();
            poly_det(&m)
        })
        .collect())
}

/// Vector fields from the determinants with first row `(∂_{c_0}, …)` over
/// each choice of columns and the gradients of `g` (and of `f`) below.
pub fn icis_tangent_fields<K: Field>(
    g: &[MultiPoly<K>],
    f: Option<&MultiPoly<K>>,
    vars: &Arc<[String]>,
) -> Result<Vec<VectorFieldPoly<K>>> {
    let mut rows: Vec<&MultiPoly<K>> = g.iter().collect();
    if let Some(f) = f {
        rows.push(f);
    }
    let k = rows.len() + 1;
    if k > vars.len() {
        return Err(Error::NoMinors { rows: k, cols: vars.len() });
    }
    let jac = gradients(&rows, vars)?;
    let mut out = vec![];
    for cols in subsets(vars.len(), k) {
        let mut coeffs = vec![MultiPoly::zero_in(vars); vars.len()];
        for (pos, &c) in cols.iter().enumerate() {
            let m: Vec<Vec<MultiPoly<K>>> =
                jac.iter().map(|r| cols.iter().filter(|&&d| d != c).map(|&d| r[d].clone()).collect()).collect();
            let d = poly_det(&m);
            coeffs[c] = if pos % 2 == 0 { d } else { -d };
        }
        out.push(VectorFieldPoly::new(vars, coeffs));
    }
    Ok(out)
}

impl ICISFamily {
    pub fn new(coordinates: &[&str], g: Vec<Poly>, f: Poly) -> Result<Self> {
        let vars: Arc<[String]> = coordinates.iter().map(|s| s.to_string()).collect::<Vec<_>>().into();
        let g = g.iter().map(|p| p.remap(&vars)).collect::<Result<Vec<_>>>()?;
        let f = f.remap(&vars)?;
        if g.len() >= vars.len() {
            return Err(Error::NoMinors { rows: g.len() + 1, cols: vars.len() });
        }
        Ok(ICISFamily { coordinates: vars.to_vec(), g, f })
    }

    pub fn vars(&self) -> Arc<[String]> {
        self.coordinates.clone().into()
    }

    /// `(g)` together with the maximal minors of the Jacobian of `(f, g)`.
    pub fn mf_ideal(&self) -> Result<Vec<Poly>> {
        let mut rows: Vec<&Poly> = vec![&self.f];
        rows.extend(self.g.iter());
        let mut gens = self.g.clone();
        gens.extend(jacobian_minors(&rows, &self.vars())?.into_iter().filter(|m| !m.is_zero()));
        Ok(gens)
    }

    pub fn tangent_fields(&self) -> Result<Vec<VectorFieldPoly<Rational>>> {
        icis_tangent_fields(&self.g, None, &self.vars())
    }
}

pub fn compute_mf_icis(fam: &ICISFamily) -> Result<MonomialQuotient<Rational>> {
    let bound = fam.g.iter().chain([&fam.f]).map(|p| p.total_degree()).sum::<u32>() + 4;
    quotient_dimension_retry(&fam.mf_ideal()?, bound)
}
