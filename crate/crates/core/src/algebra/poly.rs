//! Sparse multivariate polynomials over a [`Field`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{rational_string, Field, Rational};

/// Exponent vector, one entry per variable of the owning polynomial.
pub type Exponents = Vec<u32>;

/// Multivariate polynomial with a named variable list.
///
/// Zero coefficients are never stored. A polynomial built with an empty
/// variable list is a pure constant and combines with any other polynomial.
#[derive(Clone, Debug)]
pub struct MultiPoly<K> {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponents, K>,
}

pub fn var_list(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

impl<K: Field> MultiPoly<K> {
    pub fn zero_in(vars: &Arc<[String]>) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_in(vars: &Arc<[String]>, c: K) -> Self {
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one_in(vars: &Arc<[String]>) -> Self {
        Self::constant_in(vars, K::one())
    }

    /// Constant without a variable list.
    pub fn scalar(c: K) -> Self {
        Self::constant_in(&Arc::from(Vec::<String>::new()), c)
    }

    pub fn var_at(vars: &Arc<[String]>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, K::one())
    }

    pub fn var(vars: &Arc<[String]>, name: &str) -> Result<Self> {
        let i = index_of(vars, name)?;
        Ok(Self::var_at(vars, i))
    }

    pub fn monomial(vars: &Arc<[String]>, exps: Exponents, c: K) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, K)>>(vars: &Arc<[String]>, it: I) -> Self {
        let mut p = Self::zero_in(vars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        index_of(&self.vars, name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &K)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponents, K> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> K {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(K::zero)
    }

    pub fn coeff(&self, e: &[u32]) -> K {
        self.terms.get(e).cloned().unwrap_or_else(K::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Adds `c·x^e` in place.
    pub fn add_term(&mut self, e: Exponents, c: K) {
        if c.is_zero() {
            return;
        }
        assert_eq!(e.len(), self.vars.len(), "exponent length differs from variable count");
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Re-expresses the polynomial in a larger (or permuted) variable list.
    pub fn remap(&self, vars: &Arc<[String]>) -> Result<Self> {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| index_of(vars, v))
            .collect::<Result<_>>()?;
        let mut p = Self::zero_in(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (k, &x) in e.iter().enumerate() {
                ne[idx[k]] += x;
            }
            p.add_term(ne, c.clone());
        }
        Ok(p)
    }

    /// Same polynomial over a variable list that omits variables not
    /// occurring in it.
    pub fn restrict(&self, vars: &Arc<[String]>) -> Result<Self> {
        let mut idx = vec![];
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(k) => idx.push(Some(k)),
                None if self.degree_in(i) == 0 => idx.push(None),
                None => return Err(Error::UnknownVariable(v.clone())),
            }
        }
        let mut p = Self::zero_in(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (k, &x) in e.iter().enumerate() {
                if let Some(j) = idx[k] {
                    ne[j] += x;
                }
            }
            p.add_term(ne, c.clone());
        }
        Ok(p)
    }

    fn promoted(&self, vars: &Arc<[String]>) -> Self {
        debug_assert!(self.vars.is_empty());
        Self::constant_in(vars, self.constant_term())
    }

    fn aligned(a: &Self, b: &Self) -> Result<(Option<Self>, Option<Self>)> {
        if Arc::ptr_eq(&a.vars, &b.vars) || a.vars == b.vars {
            Ok((None, None))
        } else if a.vars.is_empty() {
            Ok((Some(a.promoted(&b.vars)), None))
        } else if b.vars.is_empty() {
            Ok((None, Some(b.promoted(&a.vars))))
        } else {
            Err(Error::VariableMismatch { left: a.vars.to_vec(), right: b.vars.to_vec() })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (pa, pb) = Self::aligned(self, other)?;
        let a = pa.as_ref().unwrap_or(self);
        let b = pb.as_ref().unwrap_or(other);
        let mut r = a.clone();
        for (e, c) in &b.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (pa, pb) = Self::aligned(self, other)?;
        let a = pa.as_ref().unwrap_or(self);
        let b = pb.as_ref().unwrap_or(other);
        let mut r = Self::zero_in(&a.vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                r.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(r)
    }

    fn neg_ref(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Self::zero_in(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * k.clone())).collect(),
        }
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &[u32]) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant_in(&self.vars, K::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_at(&self, i: usize) -> Self {
        let mut r = Self::zero_in(&self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                r.add_term(ne, c.clone() * K::from_int(e[i] as i64));
            }
        }
        r
    }

    pub fn partial(&self, name: &str) -> Result<Self> {
        Ok(self.partial_at(self.var_index(name)?))
    }

    /// Full evaluation at a point (one value per variable).
    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = K::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t * x.pow(k);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitutes values for some variables, keeping the variable list.
    pub fn eval_partial(&self, subs: &[(usize, K)]) -> Self {
        let mut r = Self::zero_in(&self.vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let mut t = c.clone();
            for (i, v) in subs {
                if ne[*i] > 0 {
                    t = t * v.pow(ne[*i]);
                    ne[*i] = 0;
                }
            }
            r.add_term(ne, t);
        }
        r
    }

    /// Replaces variable `i` by the polynomial `q` (same variable list).
    pub fn substitute(&self, i: usize, q: &Self) -> Self {
        let d = self.degree_in(i) as usize;
        let mut powers = vec![Self::one_in(&self.vars)];
        for k in 1..=d {
            let next = &powers[k - 1] * q;
            powers.push(next);
        }
        let mut r = Self::zero_in(&self.vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[i] as usize;
            ne[i] = 0;
            let t = powers[k].shift(&ne).scale(c);
            r = &r + &t;
        }
        r
    }

    pub fn map_coeffs<L: Field, F: Fn(&K) -> L>(&self, f: F) -> MultiPoly<L> {
        let mut r = MultiPoly::<L>::zero_in(&self.vars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    /// Lexicographically leading term.
    pub fn lex_leading(&self) -> Option<(&Exponents, &K)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (pa, pb) = Self::aligned(self, d).ok()?;
        let a = pa.as_ref().unwrap_or(self);
        let b = pb.as_ref().unwrap_or(d);
        let (lb, lc) = b.lex_leading()?;
        let (lb, lc) = (lb.clone(), lc.clone());
        if !lc.is_unit() {
            return None;
        }
        let mut q = Self::zero_in(&a.vars);
        let mut r = a.clone();
        while let Some((le, c)) = r.lex_leading() {
            if !le.iter().zip(&lb).all(|(x, y)| x >= y) {
                return None;
            }
            let te: Exponents = le.iter().zip(&lb).map(|(x, y)| x - y).collect();
            let tc = c.clone() / lc.clone();
            r = &r - &b.shift(&te).scale(&tc);
            q.add_term(te, tc);
        }
        Some(q)
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return vec![0; self.nvars()] };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Divides by a monomial that is known to divide every term.
    pub fn unshift(&self, e: &[u32]) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.iter().zip(e).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }
}

fn index_of(vars: &[String], name: &str) -> Result<usize> {
    vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
}

impl<K: Field> PartialEq for MultiPoly<K> {
    fn eq(&self, other: &Self) -> bool {
        match Self::aligned(self, other) {
            Ok((pa, pb)) => {
                let a = pa.as_ref().unwrap_or(self);
                let b = pb.as_ref().unwrap_or(other);
                a.terms == b.terms
            }
            Err(_) => false,
        }
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a, K: Field> $tr<&'a MultiPoly<K>> for &'a MultiPoly<K> {
            type Output = MultiPoly<K>;
            fn $m(self, o: &'a MultiPoly<K>) -> MultiPoly<K> {
                self.$imp(o).expect("polynomial variable lists differ")
            }
        }
        impl<K: Field> $tr for MultiPoly<K> {
            type Output = MultiPoly<K>;
            fn $m(self, o: MultiPoly<K>) -> MultiPoly<K> {
                (&self).$imp(&o).expect("polynomial variable lists differ")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl<K: Field> Neg for MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<K: Field> Neg for &MultiPoly<K> {
    type Output = MultiPoly<K>;
    fn neg(self) -> MultiPoly<K> {
        self.neg_ref()
    }
}

impl<K: Field> fmt::Display for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// JSON form: `{"vars": [...], "terms": [[[e0, e1, ...], "num/den"], ...]}`.
impl Serialize for MultiPoly<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            vars: &'a [String],
            terms: Vec<(&'a Exponents, String)>,
        }
        Repr {
            vars: &self.vars,
            terms: self.terms.iter().map(|(e, c)| (e, rational_string(c))).collect(),
        }
        .serialize(s)
    }
}

/// Polynomial ring context: a shared variable list with convenience
/// constructors.
#[derive(Clone, Debug)]
pub struct PolyRing {
    vars: Arc<[String]>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        PolyRing { vars: names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into() }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn var<K: Field>(&self, name: &str) -> MultiPoly<K> {
        MultiPoly::var(&self.vars, name).expect("unknown variable")
    }

    pub fn constant<K: Field>(&self, c: K) -> MultiPoly<K> {
        MultiPoly::constant_in(&self.vars, c)
    }

    pub fn zero<K: Field>(&self) -> MultiPoly<K> {
        MultiPoly::zero_in(&self.vars)
    }

    pub fn one<K: Field>(&self) -> MultiPoly<K> {
        MultiPoly::one_in(&self.vars)
    }
}

pub type Poly = MultiPoly<Rational>;


#[cfg(test)]
mod props {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -5i64..=5), 0..6).prop_map(|ts| {
            let vars = var_list(&["x", "y", "z"]);
            Poly::from_terms(&vars, ts.into_iter().map(|((a, b, c), k)| (vec![a, b, c], int(k))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!(a.terms().all(|(_, k)| !num_traits::Zero::is_zero(k)));
        }
    }
}
