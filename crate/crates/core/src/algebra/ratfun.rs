//! Quotients of multivariate polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use crate::scalar::{Field, Rational};

/// `num / den` with a nonzero denominator.
///
/// Kept in a light canonical form: common monomial factors are cancelled,
/// exact polynomial quotients are taken when the denominator divides the
/// numerator, and the denominator is made monic in lex order. Equality is
/// decided by cross multiplication, so it never depends on how far the
/// simplification got.
#[derive(Clone, Debug)]
pub struct RationalFunction<K> {
    num: MultiPoly<K>,
    den: MultiPoly<K>,
}

pub type RatFn = RationalFunction<Rational>;

impl<K: Field> RationalFunction<K> {
    pub fn new(num: MultiPoly<K>, den: MultiPoly<K>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut r = RationalFunction { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: MultiPoly<K>) -> Self {
        let one = MultiPoly::constant_in(p.vars(), K::one());
        RationalFunction { num: p, den: one }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(MultiPoly::scalar(c))
    }

    pub fn numer(&self) -> &MultiPoly<K> {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly<K> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn to_poly(&self) -> Option<MultiPoly<K>> {
        if self.den.is_constant() {
            Some(self.num.scale(&self.den.constant_term().inv()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::constant_in(self.num.vars(), K::one());
            return;
        }
        if self.den.is_constant() {
            let c = self.den.constant_term();
            if !c.is_one() {
                self.num = self.num.scale(&c.inv());
            }
            self.den = MultiPoly::constant_in(self.den.vars(), K::one());
            return;
        }
        let (a, b) = (self.num.monomial_content(), self.den.monomial_content());
        if a.len() == b.len() {
            let common: Vec<u32> = a.iter().zip(&b).map(|(x, y)| (*x).min(*y)).collect();
            if common.iter().any(|&e| e > 0) {
                self.num = self.num.unshift(&common);
                self.den = self.den.unshift(&common);
            }
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = MultiPoly::constant_in(self.den.vars(), K::one());
            return;
        }
        if self.den.is_constant() {
            let c = self.den.constant_term();
            self.num = self.num.scale(&c.inv());
            self.den = MultiPoly::constant_in(self.den.vars(), K::one());
            return;
        }
        if let Some((_, lc)) = self.den.lex_leading() {
            let lc = lc.clone();
            if !lc.is_one() && lc.is_unit() {
                let inv = lc.inv();
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    /// Value at a point, or `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[K]) -> Option<K> {
        let d = if self.den.nvars() == 0 { self.den.constant_term() } else { self.den.eval(point) };
        if !d.is_unit() {
            return None;
        }
        let n = if self.num.nvars() == 0 { self.num.constant_term() } else { self.num.eval(point) };
        Some(n / d)
    }

    /// Partial derivative in variable `i` of the given variable list.
    pub fn partial_at(&self, i: usize) -> Self {
        let dn = if self.num.nvars() == 0 { MultiPoly::scalar(K::zero()) } else { self.num.partial_at(i) };
        if self.den.is_constant() {
            return Self::new(dn, self.den.clone());
        }
        let dd = self.den.partial_at(i);
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::new(top, &self.den * &self.den)
    }

    pub fn map_coeffs<L: Field, F: Fn(&K) -> L + Copy>(&self, f: F) -> RationalFunction<L> {
        RationalFunction::new(self.num.map_coeffs(f), self.den.map_coeffs(f))
    }

    pub fn eval_partial(&self, subs: &[(usize, K)]) -> Self {
        let n = if self.num.nvars() == 0 { self.num.clone() } else { self.num.eval_partial(subs) };
        let d = if self.den.nvars() == 0 { self.den.clone() } else { self.den.eval_partial(subs) };
        Self::new(n, d)
    }
}

impl<K: Field> PartialEq for RationalFunction<K> {
    fn eq(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        &self.num * &o.den == &o.num * &self.den
    }
}

impl<K: Field> Add for RationalFunction<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if o.num.is_zero() {
            return self;
        }
        if self.num.is_zero() {
            return o;
        }
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den);
        }
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<K: Field> Sub for RationalFunction<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<K: Field> Mul for RationalFunction<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            let vars = if self.num.nvars() > 0 { self.num.vars().clone() } else { o.num.vars().clone() };
            return Self::from_poly(MultiPoly::zero_in(&vars));
        }
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<K: Field> Div for RationalFunction<K> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(!o.num.is_zero(), "division by the zero rational function");
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl<K: Field> Neg for RationalFunction<K> {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl<K: Field> Zero for RationalFunction<K> {
    fn zero() -> Self {
        Self::constant(K::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<K: Field> One for RationalFunction<K> {
    fn one() -> Self {
        Self::constant(K::one())
    }
}

impl<K: Field> fmt::Display for RationalFunction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<K: Field> Field for RationalFunction<K> {
    fn from_int(n: i64) -> Self {
        Self::constant(K::from_int(n))
    }
}
