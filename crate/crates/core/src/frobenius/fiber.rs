//! Restriction of the node family to a smooth fibre `xy = ε₀`, written as
//! `ℂ*` with coordinate `s`: `x = s`, `y = ε₀/s`.
//!
//! The two punctures are `∞₁` (`s → 0`, where `y → ∞`) and `∞₂`
//! (`s → ∞`, where `x → ∞`). Near each puncture the relative form
//! `α = dx∧dy/dπ₁` restricts to `dz/z` in the local coordinate `z`
//! vanishing there (`z = 1/y` at `∞₁`, `z = 1/x` at `∞₂`); in terms of `s`
//! this is `σ·ds/s` with `σ = +1` at `∞₁` and `σ = −1` at `∞₂`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::poly::{MultiPoly, Poly};
use crate::algebra::series::TruncSeries;
use crate::algebra::unipoly::UniPoly;
use crate::deform::node::{EpsLift, NodeFamily};
use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

/// Sign of `α = σ·ds/s` near `∞₁`.
pub const SIGMA_INFINITY_1: i32 = 1;
/// Sign of `α = σ·ds/s` near `∞₂`.
pub const SIGMA_INFINITY_2: i32 = -1;

/// A Laurent polynomial in `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<K> {
    terms: BTreeMap<i64, K>,
}

impl<K: Field> Laurent<K> {
    pub fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, K)>>(it: I) -> Self {
        let mut l = Self::zero();
        for (e, c) in it {
            l.add_term(e, c);
        }
        l
    }

    fn add_term(&mut self, e: i64, c: K) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.remove(&e).map(|o| o + c.clone()).unwrap_or(c);
        if !v.is_zero() {
            self.terms.insert(e, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: i64) -> K {
        self.terms.get(&e).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn low(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn scale(&self, k: &K) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone() * k.clone())))
    }

    pub fn shift(&self, k: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                r.add_term(e + f, c.clone() * d.clone());
            }
        }
        r
    }

    /// `s ↦ 1/s`.
    pub fn invert_variable(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e - 1, c.clone() * K::from_int(*e))))
    }

    /// `s^-low · self` as a polynomial.
    pub fn to_unipoly(&self) -> (i64, UniPoly<K>) {
        let low = self.low().unwrap_or(0);
        let n = (self.high().unwrap_or(0) - low + 1).max(0) as usize;
        let mut v = vec![K::zero(); n];
        for (e, c) in &self.terms {
            v[(e - low) as usize] = c.clone();
        }
        (low, UniPoly::new(v))
    }

    /// Truncated series of `self` in the variable `var`.
    pub fn to_series(&self, var: &str, order: i64) -> TruncSeries<K> {
        let t: Vec<(i64, K)> = self.terms.iter().map(|(e, c)| (*e, c.clone())).collect();
        TruncSeries::from_terms(var, &t, order)
    }
}

impl<K: Field> fmt::Display for Laurent<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("({c})*s^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `[s^0]` of the expansion of `num/den` at `s = 0`.
pub fn constant_coefficient_at_zero<K: Field>(num: &Laurent<K>, den: &Laurent<K>) -> Result<K> {
    let (Some(d0), Some(n0)) = (den.low(), num.low()) else {
        return if den.is_zero() { Err(Error::SingularFiber) } else { Ok(K::zero()) };
    };
    // num/den = num · s^-d0 · D^-1 with D(0) = c0 ≠ 0
    let need = d0 - n0;
    if need < 0 {
        return Ok(K::zero());
    }
    let c0 = den.coeff(d0);
    if !c0.is_unit() {
        return Err(Error::SingularFiber);
    }
    let d = den.shift(-d0).scale(&c0.inv()).to_series("s", need + 1);
    let dinv = d.inverse()?;
    let mut acc = K::zero();
    for (e, c) in num.terms() {
        let k = d0 - e;
        if (0..=need).contains(&k) {
            acc = acc + c.clone() * dinv.coeff(k)?;
        }
    }
    Ok(acc / c0)
}

/// `[w^0]` of the expansion of `num/den` at `s = ∞`, `w = 1/s`.
pub fn constant_coefficient_at_infinity<K: Field>(num: &Laurent<K>, den: &Laurent<K>) -> Result<K> {
    constant_coefficient_at_zero(&num.invert_variable(), &den.invert_variable())
}

/// Restriction of the family to the fibre over a base point.
#[derive(Clone, Debug)]
pub struct FiberModel<K> {
    pub p: usize,
    pub q: usize,
    pub base: Vec<K>,
    pub lift: EpsLift,
    /// `F_b(s)`
    pub f: Laurent<K>,
    /// `H_b(s) = x∂F/∂x − y∂F/∂y`; equals `s·F_b'(s)`.
    pub h: Laurent<K>,
    /// `t'F` of each frame field, restricted to the fibre, in frame order.
    pub images: Vec<Laurent<K>>,
}

/// Restricts a polynomial in `x, y` to the fibre `x = s`, `y = ε₀/s`.
pub fn restrict_to_fiber<K: Field>(g: &MultiPoly<K>, eps: &K) -> Laurent<K> {
    Laurent::from_terms(g.terms().map(|(e, c)| (e[0] as i64 - e[1] as i64, c.clone() * eps.pow(e[1]))))
}

impl<K: Field> FiberModel<K> {
    /// Builds the fibre model without testing smoothness (for base points
    /// over rings where a gcd is not available).
    pub fn new_unchecked(fam: &NodeFamily, base: &[K], lift: EpsLift) -> Result<Self> {
        if base.len() != fam.base_dim() {
            return Err(Error::BadBasePoint { expected: fam.base_dim(), got: base.len() });
        }
        let eps = base[0].clone();
        if eps.is_zero() {
            return Err(Error::OnDiscriminant);
        }
        let on_fiber = |g: &Poly| -> Result<Laurent<K>> { Ok(restrict_to_fiber(&fam.specialize(g, base)?, &eps)) };
        let f = on_fiber(&fam.f)?;
        let h = on_fiber(&fam.h)?;
        let images =
            fam.frame().into_iter().map(|u| on_fiber(&fam.tprime_poly(u, lift)?)).collect::<Result<Vec<_>>>()?;
        Ok(FiberModel { p: fam.p, q: fam.q, base: base.to_vec(), lift, f, h, images })
    }

    pub fn eps(&self) -> &K {
        &self.base[0]
    }

    /// `s^q·H_b(s)`, a polynomial of degree `p + q`.
    pub fn h_polynomial(&self) -> UniPoly<K> {
        let (low, poly) = self.h.to_unipoly();
        debug_assert_eq!(low, -(self.q as i64));
        poly
    }
}

impl FiberModel<Rational> {
    /// The fibre over `base`, required to be smooth: `s^q·H_b` squarefree.
    pub fn new(fam: &NodeFamily, base: &[Rational], lift: EpsLift) -> Result<Self> {
        let fm = Self::new_unchecked(fam, base, lift)?;
        if !fm.is_smooth() {
            return Err(Error::SingularFiber);
        }
        Ok(fm)
    }

    pub fn is_smooth(&self) -> bool {
        self.h_polynomial().is_squarefree()
    }
}

/// The fibre over a rational base point with the symmetric lift of `ε∂ε`.
pub fn fiber_restrict(fam: &NodeFamily, base: &[Rational]) -> Result<FiberModel<Rational>> {
    FiberModel::new(fam, base, EpsLift::Symmetric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn fiber_of_the_2_2_family() {
        let fam = NodeFamily::new(2, 2).unwrap();
        let fm = fiber_restrict(&fam, &[int(1), int(0), int(0), int(0)]).unwrap();
        assert_eq!(fm.f, Laurent::from_terms([(2, int(1)), (-2, int(1))]));
        assert_eq!(fm.h, Laurent::from_terms([(2, int(2)), (-2, int(-2))]));
        // s^4 - 1 is squarefree
        assert_eq!(fm.h_polynomial(), UniPoly::new(vec![int(-2), int(0), int(0), int(0), int(2)]));
        assert!(fm.is_smooth());
    }

    #[test]
    fn h_is_the_logarithmic_derivative() {
        let fam = NodeFamily::new(3, 2).unwrap();
        let base = [rat(2, 3), int(1), int(-2), rat(1, 2), int(5)];
        let fm = fiber_restrict(&fam, &base).unwrap();
        // direct substitution oracle: F = c + a1 s + a2 s^2 + s^3 + b1 ε/s + ε^2/s^2
        let e = rat(2, 3);
        let f = Laurent::from_terms([
            (0, int(5)),
            (1, int(1)),
            (2, int(-2)),
            (3, int(1)),
            (-1, rat(1, 2) * e.clone()),
            (-2, e.clone() * e.clone()),
        ]);
        assert_eq!(fm.f, f);
        assert_eq!(fm.h, f.derivative().shift(1));
        assert_eq!(fm.h_polynomial().degree(), Some(5));
    }

    #[test]
    fn discriminant_and_singular_fibers() {
        let fam = NodeFamily::new(2, 2).unwrap();
        assert_eq!(fiber_restrict(&fam, &[int(0), int(0), int(0), int(0)]).unwrap_err(), Error::OnDiscriminant);
        // s^2·H = 2s^4 + a1 s^3 − b1 s − 2 at ε = 1 has a double root at s = 1 iff a1 = b1 = −4
        let err = fiber_restrict(&fam, &[int(1), int(-4), int(-4), int(0)]).unwrap_err();
        assert_eq!(err, Error::SingularFiber);
    }

    #[test]
    fn constant_coefficients() {
        // 1/(1 - s) at 0: 1; s^2/(s^2 + s^3) at 0: 1
        let one = Laurent::from_terms([(0, int(1))]);
        let den = Laurent::from_terms([(0, int(1)), (1, int(-1))]);
        assert_eq!(constant_coefficient_at_zero(&one, &den).unwrap(), int(1));
        let num = Laurent::from_terms([(3, int(1))]);
        let den = Laurent::from_terms([(2, int(1)), (3, int(1))]);
        assert_eq!(constant_coefficient_at_zero(&num, &den).unwrap(), int(0));
        // s/(s + s^2) = 1/(1+s) → 1 at 0; at ∞: s/(s^2(1 + 1/s)) → 0
        let num = Laurent::from_terms([(1, int(1))]);
        let den = Laurent::from_terms([(1, int(1)), (2, int(1))]);
        assert_eq!(constant_coefficient_at_zero(&num, &den).unwrap(), int(1));
        assert_eq!(constant_coefficient_at_infinity(&num, &den).unwrap(), int(0));
    }
}
