//! Dense univariate polynomials, used for residues and characteristic
//! polynomials.

use std::fmt;


use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: K) -> Self {
        Self::new(vec![-r, K::one()])
    }

    pub fn monomial(k: usize, c: K) -> Self {
        let mut v = vec![K::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![K::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * K::from_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Euclidean division `(quotient, remainder)`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![K::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() / lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].clone() - c.clone() * dc.clone();
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        // extended Euclid on (m, self)
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut t0, mut t1) = (Self::zero(), Self::constant(K::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(t0.scale(&r0.leading().inv()).rem(m))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Reads a polynomial in a single variable; fails if other variables
    /// occur.
    pub fn from_multi(p: &MultiPoly<K>, var: usize) -> Result<Self> {
        let mut v: Vec<K> = vec![];
        for (e, c) in p.terms() {
            if e.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
                return Err(Error::UnknownVariable(format!("{} is not univariate", p)));
            }
            let k = e[var] as usize;
            if v.len() <= k {
                v.resize(k + 1, K::zero());
            }
            v[k] = v[k].clone() + c.clone();
        }
        Ok(Self::new(v))
    }
}

impl<K: Field> fmt::Display for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn p(v: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(v.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let f = p(&[-1, 2, -1]).scale(&int(-1)).mul(&p(&[2, 1]));
        assert!(!f.is_squarefree());
        assert_eq!(f.gcd(&f.derivative()), p(&[-1, 1]));
        assert!(p(&[-1, 0, 1]).is_squarefree());
    }

    #[test]
    fn modular_inverse() {
        let m = p(&[-4, 0, 1]);
        let a = p(&[0, 2]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!(a.mul(&inv).rem(&m), p(&[1]));
        assert_eq!(inv, UniPoly::new(vec![int(0), rat(1, 8)]));
        assert!(p(&[-2, 1]).inverse_mod(&m).is_none());
    }
}
