//! Restriction of the node multiplication to the stratum `ε = 0`.
//!
//! On `ε = 0` the field `ε∂ε` vanishes, so the frame loses it and the algebra
//! is divided by its image `x∂F/∂x`:
//! `K[x, y]/(xy, H, x∂F/∂x)` restricted to the stratum.

use super::structure::{structure_from_images, FStructure, Tensor3};
use crate::algebra::linalg::Matrix;
use crate::algebra::poly::{MultiPoly, Poly};
use crate::deform::node::{EpsLift, NodeFamily, NodeField};
use crate::error::{Error, Result};
use crate::frobenius::euler::euler_in_frame;
use crate::quotient::groebner::{quotient_dimension_retry, MonomialQuotient};
use crate::scalar::{Dual, Field, Rational};

/// Ideals accepted by [`restrict_to_stratum`].
pub const SUPPORTED_STRATA: &[&str] = &["eps"];

/// The node frame without `ε∂ε`.
pub fn stratum_frame(fam: &NodeFamily) -> Vec<NodeField> {
    fam.frame().into_iter().filter(|&u| u != NodeField::EpsDEps).collect()
}

fn full_base<K: Field>(point: &[K]) -> Vec<K> {
    let mut b = vec![K::zero()];
    b.extend_from_slice(point);
    b
}

fn stratum_generators<K: Field>(fam: &NodeFamily, base: &[K]) -> Result<Vec<MultiPoly<K>>> {
    let x: Poly = fam.ring().var("x");
    let y: Poly = fam.ring().var("y");
    let xfx = &x * &fam.f.partial("x")?;
    [&x * &y, fam.h.clone(), xfx].iter().map(|g| fam.specialize(g, base)).collect()
}

/// The restricted algebra at a point `(a.., b.., c)` of the stratum.
pub fn stratum_algebra<K: Field>(fam: &NodeFamily, point: &[K]) -> Result<MonomialQuotient<K>> {
    let expected = fam.base_dim() - 1;
    if point.len() != expected {
        return Err(Error::BadBasePoint { expected, got: point.len() });
    }
    let base = full_base(point);
    let q = quotient_dimension_retry(&stratum_generators(fam, &base)?, (fam.p + fam.q) as u32 + 2)?;
    if q.dimension() != expected {
        return Err(Error::DimensionDrop { expected, got: q.dimension() });
    }
    Ok(q)
}

/// Images of the remaining frame fields in the restricted algebra.
pub fn stratum_images<K: Field>(fam: &NodeFamily, point: &[K], alg: &MonomialQuotient<K>) -> Result<Matrix<K>> {
    let base = full_base(point);
    let cols: Vec<Vec<K>> = stratum_frame(fam)
        .into_iter()
        .map(|u| alg.normal_form(&fam.specialize(&fam.lift(u, EpsLift::Symmetric).apply(&fam.f)?, &base)?))
        .collect::<Result<_>>()?;
    let n = cols.len();
    Ok(Matrix::from_fn(alg.dimension(), n, |i, j| cols[j][i].clone()))
}

fn stratum_structure<K: Field>(fam: &NodeFamily, point: &[K]) -> Result<Tensor3<K>> {
    let alg = stratum_algebra(fam, point)?;
    let t = stratum_images(fam, point, &alg)?;
    structure_from_images(&t, |u, v| alg.normal_form(&(&alg.from_vector(u) * &alg.from_vector(v))))
}

/// The multiplication on the stratum given by `ideal` at `point`, a list of
/// the remaining coordinates `(a.., b.., c)`.
pub fn restrict_to_stratum(fam: &NodeFamily, ideal: &str, point: &[Rational]) -> Result<FStructure<Rational>> {
    let name = ideal.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if !SUPPORTED_STRATA.contains(&name) {
        return Err(Error::UnsupportedStratum(ideal.to_string()));
    }
    let c = stratum_structure(fam, point)?;
    let frame = stratum_frame(fam);
    let dc = frame
        .iter()
        .map(|&u| {
            // coordinates on the stratum are the base coordinates after ε
            let m = fam.parameter_of(u) - 1;
            let dual: Vec<Dual<Rational>> = point
                .iter()
                .enumerate()
                .map(|(k, v)| if k == m { Dual::variable(v.clone()) } else { Dual::constant(v.clone()) })
                .collect();
            let cd = stratum_structure(fam, &dual)?;
            Ok(cd.into_iter().map(|r| r.into_iter().map(|v| v.into_iter().map(|x| x.du).collect()).collect()).collect())
        })
        .collect::<Result<Vec<Tensor3<Rational>>>>()?;
    let base = full_base(point);
    let comps: Vec<Poly> = euler_in_frame(fam).into_iter().skip(1).collect();
    let euler = comps.iter().map(|e| e.eval(&base)).collect();
    let deuler = frame.iter().map(|&u| comps.iter().map(|e| e.partial_at(fam.parameter_of(u)).eval(&base)).collect()).collect();
    let unit = frame.iter().position(|&u| u == NodeField::DC).unwrap();
    FStructure::new(frame.iter().map(|u| u.name()).collect(), c, dc, unit, euler, deuler)
}
