//! Seeded sampling of small rational base points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deform::curve::DeterminantalCurveFamily;
use crate::deform::node::NodeFamily;
use crate::error::{Error, Result};
use crate::fmanifold::curve::curve_algebra_at;
use crate::frobenius::fiber::fiber_restrict;
use crate::scalar::Rational;

/// Numerators are drawn from `−HEIGHT..=HEIGHT`, denominators from `1..=DENOM`.
pub const HEIGHT: i64 = 9;
pub const DENOM: i64 = 5;
const MAX_ATTEMPTS: usize = 200;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-HEIGHT..=HEIGHT);
        let d = self.rng.gen_range(1..=DENOM);
        Rational::new(n.into(), d.into())
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != Rational::from_integer(0.into()) {
                return r;
            }
        }
    }

    pub fn point(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.rational()).collect()
    }

    /// A base point of the node family with `ε ≠ 0` and smooth critical
    /// locus on the fibre.
    pub fn node_point(&mut self, fam: &NodeFamily) -> Result<Vec<Rational>> {
        for _ in 0..MAX_ATTEMPTS {
            let mut b = vec![self.nonzero_rational()];
            b.extend(self.point(fam.base_dim() - 1));
            if fiber_restrict(fam, &b).is_ok() {
                return Ok(b);
            }
        }
        Err(Error::SingularFiber)
    }

    /// A base point of the curve family where the fibre algebra has full
    /// dimension.
    pub fn curve_point(&mut self, fam: &DeterminantalCurveFamily) -> Result<Vec<Rational>> {
        let mut last = Error::SingularFiber;
        for _ in 0..MAX_ATTEMPTS {
            let mut b: Vec<Rational> = (0..fam.matrix_parameters.len()).map(|_| self.nonzero_rational()).collect();
            b.extend(self.point(fam.parameters.len() - b.len()));
            match curve_algebra_at(fam, &b) {
                Ok(_) => return Ok(b),
                Err(e) => last = e,
            }
        }
        Err(last)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let (mut a, mut b) = (Sampler::new(7), Sampler::new(7));
        assert_eq!(a.point(10), b.point(10));
        let fam = NodeFamily::new(2, 3).unwrap();
        let p = Sampler::new(3).node_point(&fam).unwrap();
        assert_eq!(p, Sampler::new(3).node_point(&fam).unwrap());
        assert_ne!(p[0], Rational::from_integer(0.into()));
    }
}
