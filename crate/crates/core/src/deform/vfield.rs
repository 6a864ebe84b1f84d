//! Polynomial vector fields.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::algebra::poly::MultiPoly;
use crate::error::Result;
use crate::scalar::{Field, Rational};

/// `Σ coeffs[i] ∂/∂targets[i]`; coefficients live in the same polynomial
/// ring as the functions the field is applied to.
#[derive(Clone, Debug)]
pub struct VectorFieldPoly<K> {
    targets: Arc<[String]>,
    coeffs: Vec<MultiPoly<K>>,
}

impl<K: Field> VectorFieldPoly<K> {
    pub fn new(targets: &Arc<[String]>, coeffs: Vec<MultiPoly<K>>) -> Self {
        assert_eq!(targets.len(), coeffs.len());
        VectorFieldPoly { targets: targets.clone(), coeffs }
    }

    pub fn targets(&self) -> &Arc<[String]> {
        &self.targets
    }

    pub fn coeffs(&self) -> &[MultiPoly<K>] {
        &self.coeffs
    }

    pub fn coeff(&self, name: &str) -> Option<&MultiPoly<K>> {
        self.targets.iter().position(|t| t == name).map(|i| &self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The derivative of `g` along the field.
    pub fn apply(&self, g: &MultiPoly<K>) -> Result<MultiPoly<K>> {
        let mut acc = MultiPoly::zero_in(g.vars());
        for (t, c) in self.targets.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let d = g.partial(t)?;
            if !d.is_zero() {
                acc = acc.try_add(&c.try_mul(&d)?)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, k: &K) -> Self {
        VectorFieldPoly { targets: self.targets.clone(), coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect() }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        assert_eq!(self.targets, o.targets);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(VectorFieldPoly { targets: self.targets.clone(), coeffs })
    }

    /// `[self, o]`
    pub fn bracket(&self, o: &Self) -> Result<Self> {
        assert_eq!(self.targets, o.targets);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(u, v)| self.apply(v)?.try_sub(&o.apply(u)?))
            .collect::<Result<_>>()?;
        Ok(VectorFieldPoly { targets: self.targets.clone(), coeffs })
    }

    pub fn map_coeffs<F: Fn(&MultiPoly<K>) -> MultiPoly<K>>(&self, f: F) -> Self {
        VectorFieldPoly { targets: self.targets.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<K: Field> PartialEq for VectorFieldPoly<K> {
    fn eq(&self, o: &Self) -> bool {
        self.targets == o.targets && self.coeffs == o.coeffs
    }
}

impl<K: Field> fmt::Display for VectorFieldPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .targets
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| format!("({c})*d/d{t}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for VectorFieldPoly<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.targets.len()))?;
        for (t, c) in self.targets.iter().zip(&self.coeffs) {
            m.serialize_entry(t, &c.to_string())?;
        }
        m.end()
    }
}
