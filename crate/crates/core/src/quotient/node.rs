//! The algebra `O/(H)` of the deformed node `xy = ε` relative to its base.
//!
//! On `xy = ε` every monomial `x^i y^j` equals `ε^min(i,j)` times a pure
//! power, so elements are kept as maps from a signed index `n` to
//! coefficients: `n > 0` stands for `x^n`, `n < 0` for `y^-n` and `0` for 1.
//! The relation `H = Σ i a_i x^i + p x^p − Σ j b_j y^j − q y^q` then removes
//! all but `p + q` of these powers.

use std::collections::BTreeMap;

use crate::algebra::linalg::Matrix;
use crate::algebra::poly::{MultiPoly, PolyRing};
use crate::algebra::ratfun::RatFn;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Which top power survives as a basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeBasis {
    /// `{1, x, …, x^p, y, …, y^(q−1)}`
    KeepXp,
    /// `{1, x, …, x^(p−1), y, …, y^q}`
    KeepYq,
}

/// Base coordinate names `eps, a1.., b1.., c`.
pub fn node_parameter_names(p: usize, q: usize) -> Vec<String> {
    let mut v = vec!["eps".to_string()];
    v.extend((1..p).map(|i| format!("a{i}")));
    v.extend((1..q).map(|j| format!("b{j}")));
    v.push("c".to_string());
    v
}

#[derive(Clone, Debug)]
pub struct NodeAlgebra<K> {
    p: usize,
    q: usize,
    eps: K,
    a: Vec<K>,
    b: Vec<K>,
    basis: NodeBasis,
    indices: Vec<i64>,
}

impl<K: Field> NodeAlgebra<K> {
    /// `a = (a_1..a_{p−1})`, `b = (b_1..b_{q−1})`.
    pub fn new(p: usize, q: usize, eps: K, a: Vec<K>, b: Vec<K>, basis: NodeBasis) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidExponent(p));
        }
        if q < 2 {
            return Err(Error::InvalidExponent(q));
        }
        if a.len() != p - 1 || b.len() != q - 1 {
            return Err(Error::BadBasePoint { expected: p + q - 2, got: a.len() + b.len() });
        }
        let (top_x, top_y) = match basis {
            NodeBasis::KeepXp => (p as i64, q as i64 - 1),
            NodeBasis::KeepYq => (p as i64 - 1, q as i64),
        };
        let mut indices: Vec<i64> = (0..=top_x).collect();
        indices.extend((1..=top_y).map(|j| -j));
        Ok(NodeAlgebra { p, q, eps, a, b, basis, indices })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn eps(&self) -> &K {
        &self.eps
    }

    pub fn a(&self) -> &[K] {
        &self.a
    }

    pub fn b(&self) -> &[K] {
        &self.b
    }

    pub fn basis_kind(&self) -> NodeBasis {
        self.basis
    }

    /// Signed indices of the basis monomials, in basis order.
    pub fn basis_indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.indices.iter().map(|&n| index_label(n)).collect()
    }

    pub fn position(&self, n: i64) -> Option<usize> {
        self.indices.iter().position(|&m| m == n)
    }

    fn eps_pow(&self, k: u32) -> K {
        self.eps.pow(k)
    }

    /// `x^i y^j` as `(coefficient, index)` on `xy = ε`.
    pub fn monomial(&self, i: u32, j: u32) -> (K, i64) {
        (self.eps_pow(i.min(j)), i as i64 - j as i64)
    }

    fn index_product(&self, n: i64, m: i64) -> (K, i64) {
        if n.signum() * m.signum() >= 0 {
            (K::one(), n + m)
        } else {
            (self.eps_pow(n.unsigned_abs().min(m.unsigned_abs()) as u32), n + m)
        }
    }

    fn in_basis(&self, n: i64) -> bool {
        match self.basis {
            NodeBasis::KeepXp => n <= self.p as i64 && n > -(self.q as i64),
            NodeBasis::KeepYq => n < self.p as i64 && n >= -(self.q as i64),
        }
    }

    /// Terms of `H` as `(coefficient, index)`.
    fn h_terms(&self) -> Vec<(K, i64)> {
        let mut t = vec![];
        for (i, ai) in self.a.iter().enumerate() {
            t.push((K::from_int(i as i64 + 1) * ai.clone(), i as i64 + 1));
        }
        t.push((K::from_int(self.p as i64), self.p as i64));
        for (j, bj) in self.b.iter().enumerate() {
            t.push((-(K::from_int(j as i64 + 1) * bj.clone()), -(j as i64 + 1)));
        }
        t.push((-K::from_int(self.q as i64), -(self.q as i64)));
        t
    }

    fn add_to(map: &mut BTreeMap<i64, K>, n: i64, c: K) {
        if c.is_zero() {
            return;
        }
        let e = map.entry(n).or_insert_with(K::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            map.remove(&n);
        }
    }

    /// Normal form of `Σ c_n · (power n)`.
    pub fn normal_form_indexed(&self, mut map: BTreeMap<i64, K>) -> Vec<K> {
        let h = self.h_terms();
        let (px, qy) = (self.p as i64, self.q as i64);
        loop {
            let hi = map.keys().next_back().copied().filter(|&n| !self.in_basis(n) && n > 0);
            let lo = map.keys().next().copied().filter(|&n| !self.in_basis(n) && n < 0);
            let Some(n) = hi.or(lo) else { break };
            let c = map.remove(&n).unwrap();
            // n = lead + shift, with H's term at `lead` used as the pivot
            let (lead, shift) = if n > 0 { (px, n - px) } else { (-qy, n + qy) };
            let lead_coeff = if n > 0 { K::from_int(px) } else { -K::from_int(qy) };
            let f = c / lead_coeff;
            for (hc, hn) in &h {
                if *hn == lead {
                    continue;
                }
                let (e, idx) = self.index_product(*hn, shift);
                Self::add_to(&mut map, idx, -(f.clone() * hc.clone() * e));
            }
        }
        self.indices.iter().map(|n| map.get(n).cloned().unwrap_or_else(K::zero)).collect()
    }

    /// Normal form of a polynomial in `(x, y)` with coefficients in `K`.
    pub fn normal_form(&self, g: &MultiPoly<K>) -> Vec<K> {
        let mut map = BTreeMap::new();
        for (e, c) in g.terms() {
            let (i, j) = (e.first().copied().unwrap_or(0), e.get(1).copied().unwrap_or(0));
            let (k, n) = self.monomial(i, j);
            Self::add_to(&mut map, n, c.clone() * k);
        }
        self.normal_form_indexed(map)
    }

    pub fn basis_vector(&self, pos: usize) -> Vec<K> {
        (0..self.dim()).map(|k| if k == pos { K::one() } else { K::zero() }).collect()
    }

    pub fn mul(&self, u: &[K], v: &[K]) -> Vec<K> {
        let mut map = BTreeMap::new();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let (e, n) = self.index_product(self.indices[i], self.indices[j]);
                Self::add_to(&mut map, n, ui.clone() * vj.clone() * e);
            }
        }
        self.normal_form_indexed(map)
    }

    /// `c[i][j][k]` with `basis_i · basis_j = Σ_k c[i][j][k] basis_k`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<K>>> {
        let n = self.dim();
        let mut c = vec![vec![vec![]; n]; n];
        for i in 0..n {
            for j in i..n {
                let (e, idx) = self.index_product(self.indices[i], self.indices[j]);
                let mut map = BTreeMap::new();
                Self::add_to(&mut map, idx, e);
                let v = self.normal_form_indexed(map);
                c[i][j] = v.clone();
                c[j][i] = v;
            }
        }
        c
    }

    /// Matrix of multiplication by `u`.
    pub fn mult_matrix(&self, u: &[K]) -> Matrix<K> {
        let n = self.dim();
        let cols: Vec<Vec<K>> = (0..n).map(|j| self.mul(u, &self.basis_vector(j))).collect();
        Matrix::from_fn(n, n, |i, j| cols[j][i].clone())
    }
}

fn index_label(n: i64) -> String {
    match n {
        0 => "1".into(),
        1 => "x".into(),
        -1 => "y".into(),
        n if n > 0 => format!("x^{n}"),
        n => format!("y^{}", -n),
    }
}

impl NodeAlgebra<RatFn> {
    /// The algebra over the polynomial ring of base coordinates, with
    /// coefficients as rational functions in `eps, a.., b.., c`.
    pub fn symbolic(p: usize, q: usize, basis: NodeBasis) -> Result<Self> {
        if p < 2 || q < 2 {
            return Err(Error::InvalidExponent(p.min(q)));
        }
        let ring = PolyRing::new(&node_parameter_names(p, q));
        let v = |s: &str| RatFn::from_poly(ring.var(s));
        let a = (1..p).map(|i| v(&format!("a{i}"))).collect();
        let b = (1..q).map(|j| v(&format!("b{j}"))).collect();
        NodeAlgebra::new(p, q, v("eps"), a, b, basis)
    }
}

/// Normal form of `g` with the canonical basis.
pub fn node_normal_form<K: Field>(g: &MultiPoly<K>, alg: &NodeAlgebra<K>) -> Vec<K> {
    alg.normal_form(g)
}

pub fn node_structure_constants<K: Field>(alg: &NodeAlgebra<K>) -> Vec<Vec<Vec<K>>> {
    alg.structure_constants()
}
