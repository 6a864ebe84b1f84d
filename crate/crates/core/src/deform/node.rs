//! Miniversal deformation of `f = x^p + y^q` on the node `xy = 0`.
//!
//! The total space has coordinates `(x, y, a, b, c)` and maps to the base
//! `(eps, a, b, c)` by `eps = xy`. The frame of logarithmic fields along the
//! discriminant `eps = 0` is `eps ∂eps, ∂a_i, ∂b_j, ∂c`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::vfield::VectorFieldPoly;
use crate::algebra::linalg::Matrix;
use crate::algebra::poly::{var_list, MultiPoly, Poly, PolyRing};
use crate::algebra::ratfun::RatFn;
use crate::error::{Error, Result};
use crate::quotient::node::{node_parameter_names, NodeAlgebra, NodeBasis};
use crate::scalar::{Field, Rational};

/// A field of the logarithmic frame on the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeField {
    EpsDEps,
    DA(usize),
    DB(usize),
    DC,
}

impl NodeField {
    pub fn name(&self) -> String {
        match self {
            NodeField::EpsDEps => "eps*d/deps".into(),
            NodeField::DA(i) => format!("d/da{i}"),
            NodeField::DB(j) => format!("d/db{j}"),
            NodeField::DC => "d/dc".into(),
        }
    }

    pub fn parse(s: &str, p: usize, q: usize) -> Result<Self> {
        let f = match s {
            "eps*d/deps" => NodeField::EpsDEps,
            "d/dc" => NodeField::DC,
            _ => {
                let bad = || Error::NotInFrame(s.to_string());
                let rest = s.strip_prefix("d/d").ok_or_else(bad)?;
                let (kind, idx) = rest.split_at(1.min(rest.len()));
                let i: usize = idx.parse().map_err(|_| bad())?;
                match kind {
                    "a" if (1..p).contains(&i) => NodeField::DA(i),
                    "b" if (1..q).contains(&i) => NodeField::DB(i),
                    _ => return Err(bad()),
                }
            }
        };
        Ok(f)
    }
}

impl fmt::Display for NodeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Lift of `eps ∂eps` to the total space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsLift {
    /// `x ∂x`
    X,
    /// `y ∂y`
    Y,
    /// `(x ∂x + y ∂y) / 2`
    Symmetric,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeFamily {
    pub p: usize,
    pub q: usize,
    pub coordinates: Vec<String>,
    pub parameters: Vec<String>,
    /// `F = c + Σ a_i x^i + x^p + Σ b_j y^j + y^q`
    pub f: Poly,
    /// First component of the projection, `xy`.
    pub pi1: Poly,
    /// `H = x ∂F/∂x − y ∂F/∂y`
    pub h: Poly,
    pub discriminant: Poly,
    #[serde(skip)]
    ring: PolyRing,
}

pub fn build_node_family(p: usize, q: usize) -> Result<NodeFamily> {
    NodeFamily::new(p, q)
}

impl NodeFamily {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        for e in [p, q] {
            if e < 2 {
                return Err(Error::InvalidExponent(e));
            }
        }
        let parameters = node_parameter_names(p, q);
        let mut names = vec!["x".to_string(), "y".to_string()];
        names.extend(parameters.iter().cloned());
        let ring = PolyRing::new(&names);
        let x: Poly = ring.var("x");
        let y: Poly = ring.var("y");
        let mut f = &ring.var::<Rational>("c") + &(&x.pow(p as u32) + &y.pow(q as u32));
        for i in 1..p {
            f = &f + &(&ring.var::<Rational>(&format!("a{i}")) * &x.pow(i as u32));
        }
        for j in 1..q {
            f = &f + &(&ring.var::<Rational>(&format!("b{j}")) * &y.pow(j as u32));
        }
        let h = &(&x * &f.partial("x")?) - &(&y * &f.partial("y")?);
        Ok(NodeFamily {
            p,
            q,
            coordinates: vec!["x".into(), "y".into()],
            parameters,
            f,
            pi1: &x * &y,
            h,
            discriminant: ring.var("eps"),
            ring,
        })
    }

    pub fn vars(&self) -> &Arc<[String]> {
        self.ring.vars()
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn base_dim(&self) -> usize {
        self.p + self.q
    }

    /// Frame order `eps ∂eps, ∂a_{p−1}..∂a_1, ∂b_{q−1}..∂b_1, ∂c`.
    pub fn frame(&self) -> Vec<NodeField> {
        let mut v = vec![NodeField::EpsDEps];
        v.extend((1..self.p).rev().map(NodeField::DA));
        v.extend((1..self.q).rev().map(NodeField::DB));
        v.push(NodeField::DC);
        v
    }

    pub fn frame_position(&self, u: NodeField) -> usize {
        self.frame().iter().position(|&v| v == u).expect("field outside the frame")
    }

    /// The base coordinate a frame field differentiates along; `ε∂ε` is
    /// logarithmic in its coordinate.
    pub fn parameter_of(&self, u: NodeField) -> usize {
        match u {
            NodeField::EpsDEps => 0,
            NodeField::DA(i) => i,
            NodeField::DB(j) => self.p - 1 + j,
            NodeField::DC => self.p + self.q - 1,
        }
    }

    /// Index of a base coordinate in [`NodeFamily::parameters`].
    pub fn parameter_index(&self, name: &str) -> Option<usize> {
        self.parameters.iter().position(|p| p == name)
    }

    /// Base coordinates as rational functions on the base.
    pub fn symbolic_base(&self) -> Vec<RatFn> {
        let r = PolyRing::new(&self.parameters);
        self.parameters.iter().map(|n| RatFn::from_poly(r.var(n))).collect()
    }

    fn check_base<K: Field>(&self, base: &[K]) -> Result<()> {
        if base.len() != self.base_dim() {
            return Err(Error::BadBasePoint { expected: self.base_dim(), got: base.len() });
        }
        Ok(())
    }

    pub fn algebra<K: Field>(&self, base: &[K]) -> Result<NodeAlgebra<K>> {
        self.check_base(base)?;
        let (p, q) = (self.p, self.q);
        NodeAlgebra::new(p, q, base[0].clone(), base[1..p].to_vec(), base[p..p + q - 1].to_vec(), NodeBasis::KeepXp)
    }

    /// `g(x, y, base)` as a polynomial in `(x, y)` with coefficients in `K`.
    pub fn specialize<K: Field>(&self, g: &Poly, base: &[K]) -> Result<MultiPoly<K>> {
        self.check_base(base)?;
        let xy = var_list(&["x", "y"]);
        let g = if g.nvars() == 0 { MultiPoly::constant_in(self.vars(), g.constant_term()) } else { g.remap(self.vars())? };
        let mut out = MultiPoly::zero_in(&xy);
        for (e, c) in g.terms() {
            let mut k = K::from_rational(c);
            for (v, &d) in base.iter().zip(&e[2..]) {
                if d > 0 {
                    k = k * v.pow(d);
                }
            }
            out.add_term(vec![e[0], e[1]], k);
        }
        Ok(out)
    }

    /// Class of `g` in the algebra at `base`.
    pub fn class_of<K: Field>(&self, g: &Poly, base: &[K]) -> Result<Vec<K>> {
        let alg = self.algebra(base)?;
        Ok(alg.normal_form(&self.specialize(g, base)?))
    }

    /// The lift of a frame field to the total space, acting on
    /// `x, y, a.., b.., c`.
    pub fn lift(&self, u: NodeField, how: EpsLift) -> VectorFieldPoly<Rational> {
        let mut targets = vec!["x".to_string(), "y".to_string()];
        targets.extend(self.parameters[1..].iter().cloned());
        let targets: Arc<[String]> = targets.into();
        let mut coeffs: Vec<Poly> = vec![self.ring.zero(); targets.len()];
        let slot = |name: &str| targets.iter().position(|t| t == name).unwrap();
        match u {
            NodeField::EpsDEps => {
                let (x, y): (Poly, Poly) = (self.ring.var("x"), self.ring.var("y"));
                let half = Rational::from_frac(1, 2);
                match how {
                    EpsLift::X => coeffs[0] = x,
                    EpsLift::Y => coeffs[1] = y,
                    EpsLift::Symmetric => {
                        coeffs[0] = x.scale(&half);
                        coeffs[1] = y.scale(&half);
                    }
                }
            }
            NodeField::DA(i) => coeffs[slot(&format!("a{i}"))] = self.ring.one(),
            NodeField::DB(j) => coeffs[slot(&format!("b{j}"))] = self.ring.one(),
            NodeField::DC => coeffs[slot("c")] = self.ring.one(),
        }
        VectorFieldPoly::new(&targets, coeffs)
    }

    /// The derivative of `F` along the lift of `u`, as a polynomial.
    pub fn tprime_poly(&self, u: NodeField, how: EpsLift) -> Result<Poly> {
        self.lift(u, how).apply(&self.f)
    }
}

/// `t'F(u)`: class of the derivative of `F` along a lift of `u`.
pub fn tprime_node<K: Field>(u: NodeField, fam: &NodeFamily, base: &[K], how: EpsLift) -> Result<Vec<K>> {
    if let NodeField::DA(i) | NodeField::DB(i) = u {
        let limit = if matches!(u, NodeField::DA(_)) { fam.p } else { fam.q };
        if i == 0 || i >= limit {
            return Err(Error::NotInFrame(u.name()));
        }
    }
    fam.class_of(&fam.tprime_poly(u, how)?, base)
}

/// Matrix of `t'F` with columns indexed by the frame and rows by the
/// algebra basis `1, x, …, x^p, y, …, y^(q−1)`.
pub fn tprime_matrix<K: Field>(fam: &NodeFamily, base: &[K], how: EpsLift) -> Result<Matrix<K>> {
    let cols: Vec<Vec<K>> = fam.frame().into_iter().map(|u| tprime_node(u, fam, base, how)).collect::<Result<_>>()?;
    let n = fam.base_dim();
    Ok(Matrix::from_fn(n, n, |i, j| cols[j][i].clone()))
}
