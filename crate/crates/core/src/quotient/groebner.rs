//! Buchberger's algorithm in graded reverse lexicographic order, standard
//! monomials and normal forms in zero-dimensional quotients.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::algebra::linalg::Matrix;
use crate::algebra::poly::{Exponents, MultiPoly};
use crate::error::{Error, Result};
use crate::scalar::Field;

pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn diff(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// Terms sorted ascending in grevlex, so the leading term is last.
#[derive(Clone, Debug)]
struct GPoly<K> {
    terms: Vec<(Exponents, K)>,
}

impl<K: Field> GPoly<K> {
    fn from_multi(p: &MultiPoly<K>) -> Self {
        let mut terms: Vec<(Exponents, K)> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| grevlex(&a.0, &b.0));
        GPoly { terms }
    }

    fn to_multi(&self, vars: &Arc<[String]>) -> MultiPoly<K> {
        MultiPoly::from_terms(vars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Exponents {
        &self.terms.last().unwrap().0
    }

    fn monic(mut self) -> Result<Self> {
        let lc = self.terms.last().unwrap().1.clone();
        if !lc.is_unit() {
            return Err(Error::NonInvertibleLeading);
        }
        if !lc.is_one() {
            let inv = lc.inv();
            for t in &mut self.terms {
                t.1 = t.1.clone() * inv.clone();
            }
        }
        Ok(self)
    }

    /// `self - c·x^e·g`, merging two ascending lists.
    fn sub_mul(&self, c: &K, e: &[u32], g: &Self) -> Self {
        let shifted = g.terms.iter().map(|(m, k)| {
            let m: Exponents = m.iter().zip(e).map(|(a, b)| a + b).collect();
            (m, k.clone() * c.clone())
        });
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().cloned().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match grevlex(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap()),
                    Ordering::Greater => {
                        let (m, k) = b.next().unwrap();
                        out.push((m, -k));
                    }
                    Ordering::Equal => {
                        let (m, k1) = a.next().unwrap();
                        let (_, k2) = b.next().unwrap();
                        let s = k1 - k2;
                        if !s.is_zero() {
                            out.push((m, s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (m, k) = b.next().unwrap();
                    out.push((m, -k));
                }
                (None, None) => break,
            }
        }
        GPoly { terms: out }
    }
}

/// Full reduction of `p` by a list of monic polynomials.
fn reduce<K: Field>(mut p: GPoly<K>, basis: &[GPoly<K>]) -> GPoly<K> {
    let mut rem: Vec<(Exponents, K)> = vec![];
    while let Some((m, c)) = p.terms.last().cloned() {
        match basis.iter().find(|g| divides(g.lm(), &m)) {
            Some(g) => {
                let e = diff(&m, g.lm());
                p = p.sub_mul(&c, &e, g);
            }
            None => {
                p.terms.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    GPoly { terms: rem }
}

/// Reduced Gröbner basis of an ideal in grevlex order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<K> {
    vars: Arc<[String]>,
    polys: Vec<GPoly<K>>,
}

impl<K: Field> GroebnerBasis<K> {
    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn polys(&self) -> Vec<MultiPoly<K>> {
        self.polys.iter().map(|g| g.to_multi(&self.vars)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Exponents> {
        self.polys.iter().map(|g| g.lm().clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|g| degree(g.lm()) == 0)
    }

    /// Smallest `e_i` with `x_i^e_i` a leading monomial, per variable.
    pub fn pure_powers(&self) -> Option<Vec<u32>> {
        pure_powers(&self.leading_monomials(), self.vars.len())
    }

    pub fn reduce(&self, p: &MultiPoly<K>) -> Result<MultiPoly<K>> {
        let p = align(p, &self.vars)?;
        Ok(reduce(GPoly::from_multi(&p), &self.polys).to_multi(&self.vars))
    }

    pub fn contains(&self, p: &MultiPoly<K>) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }
}

fn align<K: Field>(p: &MultiPoly<K>, vars: &Arc<[String]>) -> Result<MultiPoly<K>> {
    if p.nvars() == 0 {
        Ok(MultiPoly::constant_in(vars, p.constant_term()))
    } else if p.vars() == vars {
        Ok(p.clone())
    } else {
        Err(Error::VariableMismatch { left: p.vars().to_vec(), right: vars.to_vec() })
    }
}

fn pure_powers(lms: &[Exponents], n: usize) -> Option<Vec<u32>> {
    if lms.iter().any(|m| degree(m) == 0) {
        return Some(vec![0; n]);
    }
    (0..n)
        .map(|i| {
            lms.iter()
                .filter(|m| m.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|m| m[i])
                .min()
        })
        .collect()
}

/// Buchberger's algorithm. With a degree bound, S-pairs whose lcm exceeds
/// it are postponed; if the postponed pairs are all that is left and the
/// leading monomials do not yet contain a pure power of every variable, the
/// computation stops with [`Error::CertificateNotFound`].
pub fn groebner_basis<K: Field>(gens: &[MultiPoly<K>], degree_bound: Option<u32>) -> Result<GroebnerBasis<K>> {
    let vars = gens
        .iter()
        .find(|g| g.nvars() > 0)
        .map(|g| g.vars().clone())
        .unwrap_or_else(|| Arc::from(Vec::<String>::new()));
    let n = vars.len();
    let mut g: Vec<GPoly<K>> = vec![];
    for p in gens {
        let p = align(p, &vars)?;
        let r = reduce(GPoly::from_multi(&p), &g);
        if !r.is_zero() {
            g.push(r.monic()?);
        }
    }
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut deferred: Vec<(usize, usize)> = vec![];
    let push_pair = |i: usize, j: usize, g: &[GPoly<K>], pairs: &mut BTreeSet<(u32, usize, usize)>, deferred: &mut Vec<(usize, usize)>| {
        let l = lcm(g[i].lm(), g[j].lm());
        let d = degree(&l);
        match degree_bound {
            Some(b) if d > b => deferred.push((i, j)),
            _ => {
                pairs.insert((d, i, j));
            }
        }
    };
    for j in 0..g.len() {
        for i in 0..j {
            push_pair(i, j, &g, &mut pairs, &mut deferred);
        }
    }
    let mut bound_active = degree_bound.is_some();
    loop {
        let Some((_, i, j)) = pairs.pop_first() else {
            if deferred.is_empty() {
                break;
            }
            let lms: Vec<Exponents> = g.iter().map(|p| p.lm().clone()).collect();
            if bound_active && pure_powers(&lms, n).is_none() {
                return Err(Error::CertificateNotFound { degree_bound: degree_bound.unwrap() });
            }
            bound_active = false;
            for (i, j) in deferred.drain(..) {
                let l = lcm(g[i].lm(), g[j].lm());
                pairs.insert((degree(&l), i, j));
            }
            continue;
        };
        let (li, lj) = (g[i].lm().clone(), g[j].lm().clone());
        if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(&li, &lj);
        if chain_criterion(i, j, &l, &g, &pairs, &deferred) {
            continue;
        }
        let s = GPoly { terms: vec![] }.sub_mul(&-K::one(), &diff(&l, &li), &g[i]);
        let s = s.sub_mul(&K::one(), &diff(&l, &lj), &g[j]);
        let r = reduce(s, &g);
        if r.is_zero() {
            continue;
        }
        let r = r.monic()?;
        let k = g.len();
        g.push(r);
        for m in 0..k {
            push_pair(m, k, &g, &mut pairs, &mut deferred);
        }
    }
    Ok(GroebnerBasis { vars, polys: interreduce(g)? })
}

// Skip (i, j) when some k has lm_k | lcm(i, j) and neither (i, k) nor
// (j, k) is still pending.
fn chain_criterion<K: Field>(
    i: usize,
    j: usize,
    l: &[u32],
    g: &[GPoly<K>],
    pairs: &BTreeSet<(u32, usize, usize)>,
    deferred: &[(usize, usize)],
) -> bool {
    let pending = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        pairs.iter().any(|&(_, x, y)| x == a && y == b) || deferred.contains(&(a, b))
    };
    (0..g.len()).any(|k| k != i && k != j && divides(g[k].lm(), l) && !pending(i, k) && !pending(j, k))
}

fn interreduce<K: Field>(mut g: Vec<GPoly<K>>) -> Result<Vec<GPoly<K>>> {
    g.sort_by(|a, b| grevlex(a.lm(), b.lm()));
    let mut kept: Vec<GPoly<K>> = vec![];
    for p in g {
        if !kept.iter().any(|q| divides(q.lm(), p.lm())) {
            kept.retain(|q| !divides(p.lm(), q.lm()));
            kept.push(p);
        }
    }
    let mut out = Vec::with_capacity(kept.len());
    for (idx, p) in kept.iter().enumerate() {
        let others: Vec<GPoly<K>> = kept.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, q)| q.clone()).collect();
        let (lm, lc) = p.terms.last().cloned().unwrap();
        let tail = GPoly { terms: p.terms[..p.terms.len() - 1].to_vec() };
        let mut r = reduce(tail, &others);
        r.terms.push((lm, lc));
        out.push(r.monic()?);
    }
    Ok(out)
}

/// Finite-dimensional quotient `K[x]/I` with its standard-monomial basis.
#[derive(Clone, Debug)]
pub struct MonomialQuotient<K> {
    gens: Vec<MultiPoly<K>>,
    degree_bound: u32,
    gb: GroebnerBasis<K>,
    basis: Vec<Exponents>,
    certificate: Vec<u32>,
}

impl<K: Field> MonomialQuotient<K> {
    pub fn vars(&self) -> &Arc<[String]> {
        self.gb.vars()
    }

    pub fn generators(&self) -> &[MultiPoly<K>] {
        &self.gens
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Standard monomials ordered by degree, then lexicographically with
    /// earlier variables first.
    pub fn basis(&self) -> &[Exponents] {
        &self.basis
    }

    pub fn basis_polys(&self) -> Vec<MultiPoly<K>> {
        self.basis.iter().map(|e| MultiPoly::monomial(self.vars(), e.clone(), K::one())).collect()
    }

    /// Exponent of the pure power of each variable in the leading ideal.
    pub fn certificate(&self) -> &[u32] {
        &self.certificate
    }

    pub fn groebner(&self) -> &GroebnerBasis<K> {
        &self.gb
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.basis.iter().position(|b| b == e)
    }

    /// Coordinates of the class of `p` in the standard-monomial basis.
    pub fn normal_form(&self, p: &MultiPoly<K>) -> Result<Vec<K>> {
        let r = self.gb.reduce(p)?;
        let mut v = vec![K::zero(); self.basis.len()];
        for (e, c) in r.terms() {
            let i = self.index_of(e).expect("remainder outside the standard monomials");
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_vector(&self, v: &[K]) -> MultiPoly<K> {
        MultiPoly::from_terms(self.vars(), self.basis.iter().cloned().zip(v.iter().cloned()))
    }

    /// Matrix of multiplication by `p`; column `j` is the class of
    /// `p · basis_j`.
    pub fn mult_matrix(&self, p: &MultiPoly<K>) -> Result<Matrix<K>> {
        let p = align(p, self.vars())?;
        let n = self.basis.len();
        let mut m = Matrix::zeros(n, n);
        for (j, b) in self.basis.iter().enumerate() {
            let col = self.normal_form(&p.shift(b))?;
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        Ok(m)
    }
}

pub fn standard_monomials(lms: &[Exponents], bounds: &[u32]) -> Vec<Exponents> {
    let n = bounds.len();
    let mut out = vec![];
    let mut e = vec![0u32; n];
    if bounds.contains(&0) {
        return out;
    }
    loop {
        if !lms.iter().any(|m| divides(m, &e)) {
            out.push(e.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                out.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
                return out;
            }
            e[k] += 1;
            if e[k] < bounds[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

/// Dimension and standard monomials of `K[x]/(gens)`, with S-pairs beyond
/// degree `degree_bound` postponed until finiteness is certified.
pub fn quotient_dimension<K: Field>(gens: &[MultiPoly<K>], degree_bound: u32) -> Result<MonomialQuotient<K>> {
    let gb = groebner_basis(gens, Some(degree_bound))?;
    let certificate = gb.pure_powers().ok_or(Error::CertificateNotFound { degree_bound })?;
    let basis = if gb.is_unit_ideal() { vec![] } else { standard_monomials(&gb.leading_monomials(), &certificate) };
    Ok(MonomialQuotient { gens: gens.to_vec(), degree_bound, gb, basis, certificate })
}

/// [`quotient_dimension`], retried once with a doubled bound.
pub fn quotient_dimension_retry<K: Field>(gens: &[MultiPoly<K>], degree_bound: u32) -> Result<MonomialQuotient<K>> {
    match quotient_dimension(gens, degree_bound) {
        Err(Error::CertificateNotFound { .. }) => quotient_dimension(gens, 2 * degree_bound),
        r => r,
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::algebra::poly::Poly;
    use crate::algebra::poly::var_list;
    use crate::scalar::{int, Rational};
    use proptest::prelude::*;

    fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponents> {
        let mut out = vec![];
        let mut e = vec![0u32; n];
        fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Exponents>) {
            if i + 1 == e.len() {
                e[i] = left;
                out.push(e.clone());
                return;
            }
            for k in 0..=left {
                e[i] = k;
                rec(i + 1, left - k, e, out);
            }
        }
        rec(0, d, &mut e, &mut out);
        out
    }

    // Macaulay-matrix oracle for homogeneous ideals: dim (R/I)_d equals the
    // number of degree-d monomials minus the rank of all products m·g of
    // degree d.
    fn brute_force_dimension(gens: &[Poly], top: u32) -> usize {
        let n = gens[0].nvars();
        let mut total = 0;
        for d in 0..=top {
            let monos = monomials_of_degree(n, d);
            let mut rows: Vec<Vec<Rational>> = vec![];
            for g in gens {
                let dg = g.total_degree();
                if dg > d {
                    continue;
                }
                for m in monomials_of_degree(n, d - dg) {
                    let p = g.shift(&m);
                    rows.push(monos.iter().map(|e| p.coeff(e)).collect());
                }
            }
            let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
            total += monos.len() - rank;
        }
        total
    }

    fn homogeneous(n: usize, d: u32) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-2i64..=2, monomials_of_degree(n, d).len())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn agrees_with_macaulay_rank(
            a in 2u32..4, b in 2u32..4, c in 2u32..4,
            d1 in 1u32..3, d2 in 2u32..4,
            seed in (homogeneous(3, 1), homogeneous(3, 2), homogeneous(3, 3)),
        ) {
            let vars = var_list(&["x", "y", "z"]);
            let mk = |d: u32, cs: &[i64]| {
                Poly::from_terms(&vars, monomials_of_degree(3, d).into_iter().zip(cs.iter().map(|&k| int(k))))
            };
            let pick = |d: u32| match d { 1 => mk(1, &seed.0), 2 => mk(2, &seed.1), _ => mk(3, &seed.2) };
            let mut gens = vec![
                Poly::monomial(&vars, vec![a, 0, 0], int(1)),
                Poly::monomial(&vars, vec![0, b, 0], int(1)),
                Poly::monomial(&vars, vec![0, 0, c], int(1)),
            ];
            for g in [pick(d1), pick(d2)] {
                if !g.is_zero() {
                    gens.push(g);
                }
            }
            let top = a + b + c - 2;
            let q = quotient_dimension(&gens, top + 1).unwrap();
            prop_assert_eq!(q.dimension(), brute_force_dimension(&gens, top));
        }
    }
}
