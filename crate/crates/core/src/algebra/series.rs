//! Truncated Laurent series in one variable.
//!
//! A series stores the coefficients of `w^low, ..., w^(order-1)`; everything
//! from `w^order` on is unknown. Arithmetic propagates the order so that a
//! result never claims more precision than its inputs support.

use std::fmt;


use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<K> {
    var: String,
    low: i64,
    coeffs: Vec<K>,
    order: i64,
}

impl<K: Field> TruncSeries<K> {
    /// Series with coefficients for `w^low, w^(low+1), ...` known below
    /// `order`. Missing coefficients below `order` are zero.
    pub fn new(var: &str, low: i64, mut coeffs: Vec<K>, order: i64) -> Self {
        let len = (order - low).max(0) as usize;
        coeffs.resize(len, K::zero());
        let mut s = TruncSeries { var: var.to_string(), low: low.min(order), coeffs, order };
        s.trim();
        s
    }

    /// Builds a series from sparse `(exponent, coefficient)` pairs.
    pub fn from_terms(var: &str, terms: &[(i64, K)], order: i64) -> Self {
        let low = terms.iter().map(|(e, _)| *e).min().unwrap_or(order).min(order);
        let mut coeffs = vec![K::zero(); (order - low).max(0) as usize];
        for (e, c) in terms {
            if *e < order {
                let i = (*e - low) as usize;
                coeffs[i] = coeffs[i].clone() + c.clone();
            }
        }
        Self::new(var, low, coeffs, order)
    }

    pub fn one(var: &str, order: i64) -> Self {
        Self::from_terms(var, &[(0, K::one())], order)
    }

    /// The monomial `c·w^k`.
    pub fn monomial(var: &str, k: i64, c: K, order: i64) -> Self {
        Self::from_terms(var, &[(k, c)], order)
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Exclusive upper bound on known exponents.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Exponent of the first nonzero coefficient, `order` for `O(w^order)`.
    pub fn valuation(&self) -> i64 {
        self.low
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Result<K> {
        if k >= self.order {
            return Err(Error::TruncationExceeded { exponent: k, order: self.order });
        }
        if k < self.low {
            return Ok(K::zero());
        }
        Ok(self.coeffs[(k - self.low) as usize].clone())
    }

    /// Coefficient of `w^-1`.
    pub fn residue(&self) -> Result<K> {
        self.coeff(-1)
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self::new(&self.var, self.low, self.coeffs.clone(), order)
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let low = self.low.min(o.low).min(order);
        let n = (order - low) as usize;
        let mut v = vec![K::zero(); n];
        for (k, c) in v.iter_mut().enumerate() {
            let e = low + k as i64;
            *c = self.coeff(e).unwrap_or_else(|_| K::zero()) + o.coeff(e).unwrap_or_else(|_| K::zero());
        }
        Self::new(&self.var, low, v, order)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.var, self.low, self.coeffs.iter().map(|c| -c.clone()).collect(), self.order)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::new(&self.var, self.low, self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(), self.order)
    }

    /// Multiplication by `w^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(&self.var, self.low + k, self.coeffs.clone(), self.order + k)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = (self.order + o.low).min(o.order + self.low);
        let low = (self.low + o.low).min(order);
        let n = (order - low) as usize;
        let mut v = vec![K::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(&self.var, low, v, order)
    }

    /// Multiplicative inverse; the leading coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() || !self.coeffs[0].is_unit() {
            return Err(Error::LeadingCoefficientNotOne(
                self.coeffs.first().map(|c| c.to_string()).unwrap_or_else(|| "0".into()),
            ));
        }
        let n = self.coeffs.len();
        let inv = ps_inv(&self.coeffs, n);
        Ok(Self::new(&self.var, -self.low, inv, n as i64 - self.low))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Integer power, negative exponents through [`TruncSeries::inverse`].
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        if e == 0 {
            return Ok(Self::one(&self.var, self.order - self.low));
        }
        let mut acc = base.clone();
        for _ in 1..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn unit_part(&self) -> (i64, Vec<K>) {
        (self.low, self.coeffs.clone())
    }

    /// `n`-th root of a series whose leading term is exactly `1·w^0`,
    /// computed by Newton iteration with precision doubling.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRootIndex);
        }
        let (v, c) = self.unit_part();
        if v != 0 || c.is_empty() || !c[0].is_one() {
            let lead = if c.is_empty() { "0".to_string() } else { format!("{}·{}^{}", c[0], self.var, v) };
            return Err(Error::LeadingCoefficientNotOne(lead));
        }
        let len = c.len();
        let nk = K::from_int(n as i64);
        let mut r = vec![K::one()];
        let mut prec = 1usize;
        while prec < len {
            prec = (2 * prec).min(len);
            r.resize(prec, K::zero());
            // r <- ((n-1) r + s / r^(n-1)) / n
            let rpow = ps_pow(&r, n - 1, prec);
            let q = ps_mul(&c[..prec.min(c.len())], &ps_inv(&rpow, prec), prec);
            r = (0..prec)
                .map(|k| (K::from_int(n as i64 - 1) * r[k].clone() + q[k].clone()) / nk.clone())
                .collect();
        }
        Ok(Self::new(&self.var, 0, r, self.order))
    }

    /// Principal logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeff(0)?;
        if self.low < 0 || !c0.is_one() {
            let shown = if self.low < 0 { format!("pole of order {}", -self.low) } else { c0.to_string() };
            return Err(Error::LogConstantNotOne(shown));
        }
        let n = self.order as usize;
        let a = self.dense(n);
        Ok(Self::new(&self.var, 0, ps_log(&a, n), self.order))
    }

    pub fn exp(&self) -> Result<Self> {
        if self.low <= 0 {
            let c0 = self.coeff(0)?;
            if self.low < 0 || !c0.is_zero() {
                return Err(Error::ExpConstantNotZero(c0.to_string()));
            }
        }
        let n = self.order.max(0) as usize;
        let a = self.dense(n);
        Ok(Self::new(&self.var, 0, ps_exp(&a, n), self.order))
    }

    /// Dense coefficients of `w^0..w^(n-1)` (requires `low >= 0`).
    fn dense(&self, n: usize) -> Vec<K> {
        (0..n as i64).map(|k| self.coeff(k).unwrap_or_else(|_| K::zero())).collect()
    }

    pub fn derivative(&self) -> Self {
        let v: Vec<K> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.clone() * K::from_int(self.low + k as i64))
            .collect();
        Self::new(&self.var, self.low - 1, v, self.order - 1)
    }

    /// `self(inner)` for a power series `self` and an inner series of
    /// positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.low < 0 || inner.low < 1 {
            return Err(Error::BadComposition);
        }
        let v = inner.low;
        let order = if self.coeffs.len() > 1 || self.low > 0 {
            (self.order * v).min(inner.order + (self.low.max(1) - 1) * v)
        } else {
            self.order * v
        };
        let mut acc = Self::new(&inner.var, 0, vec![], order);
        let mut p = Self::one(&inner.var, order);
        for k in 0..self.order {
            if k * v >= order {
                break;
            }
            let c = self.coeff(k)?;
            if !c.is_zero() {
                acc = acc.add(&p.scale(&c));
            }
            p = p.mul(inner).truncate(order);
        }
        Ok(acc.truncate(order))
    }

    /// Compositional inverse of `c1·w + c2·w^2 + ...` with `c1 != 0`.
    pub fn reversion(&self) -> Result<Self> {
        if self.low != 1 || !self.coeffs[0].is_unit() {
            return Err(Error::ZeroLinearTerm);
        }
        let n = self.order as usize;
        let f = self.dense(n);
        Ok(Self::new(&self.var, 0, ps_reversion(&f, n), self.order))
    }
}

impl<K: Field> fmt::Display for TruncSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, "({c})*{}^{} + ", self.var, self.low + k as i64)?;
            }
        }
        write!(f, "O({}^{})", self.var, self.order)
    }
}

// Dense power-series kernels on coefficient vectors of w^0..w^(n-1).

pub(crate) fn ps_mul<K: Field>(a: &[K], b: &[K], n: usize) -> Vec<K> {
    let mut v = vec![K::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            v[i + j] = v[i + j].clone() + x.clone() * y.clone();
        }
    }
    v
}

pub(crate) fn ps_inv<K: Field>(a: &[K], n: usize) -> Vec<K> {
    let a0 = a[0].inv();
    let mut v: Vec<K> = Vec::with_capacity(n);
    v.push(a0.clone());
    for k in 1..n {
        let mut s = K::zero();
        for j in 1..=k.min(a.len() - 1) {
            s = s + a[j].clone() * v[k - j].clone();
        }
        v.push(-(s * a0.clone()));
    }
    v
}

pub(crate) fn ps_pow<K: Field>(a: &[K], e: u32, n: usize) -> Vec<K> {
    let mut acc = vec![K::zero(); n];
    acc[0] = K::one();
    for _ in 0..e {
        acc = ps_mul(&acc, a, n);
    }
    acc
}

fn ps_log<K: Field>(a: &[K], n: usize) -> Vec<K> {
    // log a = integral(a' / a)
    let da: Vec<K> = (1..n.max(1)).map(|k| a[k].clone() * K::from_int(k as i64)).collect();
    if n == 0 {
        return vec![];
    }
    let q = ps_mul(&da, &ps_inv(a, n), n.saturating_sub(1));
    let mut out = vec![K::zero(); n];
    for k in 1..n {
        out[k] = q[k - 1].clone() / K::from_int(k as i64);
    }
    out
}

fn ps_exp<K: Field>(a: &[K], n: usize) -> Vec<K> {
    // e' = a' e  =>  k e_k = sum_{j=1..k} j a_j e_{k-j}
    if n == 0 {
        return vec![];
    }
    let mut e = vec![K::zero(); n];
    e[0] = K::one();
    for k in 1..n {
        let mut s = K::zero();
        for j in 1..=k {
            if !a[j].is_zero() {
                s = s + K::from_int(j as i64) * a[j].clone() * e[k - j].clone();
            }
        }
        e[k] = s / K::from_int(k as i64);
    }
    e
}

fn ps_compose<K: Field>(f: &[K], g: &[K], n: usize) -> Vec<K> {
    // Horner with g(0) = 0
    let mut acc = vec![K::zero(); n];
    for c in f.iter().take(n).rev() {
        acc = ps_mul(&acc, g, n);
        acc[0] = acc[0].clone() + c.clone();
    }
    acc
}

fn ps_reversion<K: Field>(f: &[K], n: usize) -> Vec<K> {
    // Newton: g <- g - (f(g) - w) / f'(g)
    let df: Vec<K> = (1..n).map(|k| f[k].clone() * K::from_int(k as i64)).collect();
    let mut g = vec![K::zero(); n.min(2)];
    if n > 1 {
        g[1] = f[1].inv();
    }
    let mut prec = 2usize.min(n);
    while prec < n {
        prec = (2 * prec).min(n);
        g.resize(prec, K::zero());
        let mut fg = ps_compose(&f[..prec], &g, prec);
        fg[1] = fg[1].clone() - K::one();
        let dfg = ps_compose(&df[..prec.min(df.len())], &g, prec);
        let corr = ps_mul(&fg, &ps_inv(&dfg, prec), prec);
        for k in 0..prec {
            g[k] = g[k].clone() - corr[k].clone();
        }
    }
    g.resize(n, K::zero());
    g
}
