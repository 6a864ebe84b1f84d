//! Residues of univariate rational forms.

use super::poly::MultiPoly;
use super::series::TruncSeries;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Coefficient of `w^-1` of a Laurent expansion at `w = 0`.
pub fn residue_at_zero<K: Field>(s: &TruncSeries<K>) -> Result<K> {
    s.residue()
}

/// Sum of the residues of `numer/denom · ds` at the roots of `denom`.
///
/// Evaluated without locating the roots: for squarefree `d` the sum equals
/// the trace of multiplication by `n · (d')^{-1}` on `K[s]/(d)`.
pub fn residue_sum_at_roots<K: Field>(numer: &UniPoly<K>, denom: &UniPoly<K>) -> Result<K> {
    let deg = match denom.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::ConstantDenominator),
    };
    let dd = denom.derivative();
    let inv = dd.inverse_mod(denom).ok_or(Error::NotSquarefree)?;
    let r = numer.mul(&inv).rem(denom);
    Ok(trace_of_multiplication(&r, denom, deg))
}

fn trace_of_multiplication<K: Field>(r: &UniPoly<K>, d: &UniPoly<K>, deg: usize) -> K {
    let mut acc = K::zero();
    let mut cur = r.clone();
    let s = UniPoly::monomial(1, K::one());
    for k in 0..deg {
        acc = acc + cur.coeff(k);
        cur = cur.mul(&s).rem(d);
    }
    acc
}

/// [`residue_sum_at_roots`] for univariate polynomials given as
/// [`MultiPoly`] in their only variable.
pub fn residue_sum_at_roots_multi<K: Field>(numer: &MultiPoly<K>, denom: &MultiPoly<K>) -> Result<K> {
    let n = if numer.nvars() == 0 { UniPoly::constant(numer.constant_term()) } else { UniPoly::from_multi(numer, 0)? };
    let d = if denom.nvars() == 0 { UniPoly::constant(denom.constant_term()) } else { UniPoly::from_multi(denom, 0)? };
    residue_sum_at_roots(&n, &d)
}

/// Residues of `n(s)/d(s) · s^k ds` at `s = 0` and at `s = ∞`.
pub fn residues_at_zero_and_infinity<K: Field>(n: &UniPoly<K>, d: &UniPoly<K>, k: i64) -> Result<(K, K)> {
    let dn = d.degree().ok_or(Error::ConstantDenominator)?;
    let nn = n.degree().unwrap_or(0) as i64;
    // at 0: [s^(-1-k)] n/d
    let need = -1 - k;
    let at_zero = if n.is_zero() {
        K::zero()
    } else {
        let order = need.abs() + 2 * dn as i64 + 2;
        let ns = TruncSeries::new("s", 0, n.coeffs().to_vec(), order);
        let ds = TruncSeries::new("s", 0, d.coeffs().to_vec(), order);
        ns.div(&ds)?.coeff(need)?
    };
    // at infinity, w = 1/s: n/d s^k ds = -(n~(w)/d~(w)) w^(dn-nn-k-2) dw
    let rev = |p: &UniPoly<K>, deg: usize| -> Vec<K> { (0..=deg).map(|i| p.coeff(deg - i)).collect() };
    let shift = dn as i64 - nn - k - 2;
    let need_inf = -1 - shift;
    let at_inf = if need_inf < 0 || n.is_zero() {
        K::zero()
    } else {
        let order = need_inf + 1;
        let ns = TruncSeries::new("w", 0, rev(n, nn as usize), order);
        let ds = TruncSeries::new("w", 0, rev(d, dn), order);
        -ns.div(&ds)?.coeff(need_inf)?
    };
    Ok((at_zero, at_inf))
}


#[cfg(test)]
mod props {
    use super::*;
    use num_traits::Zero;
    use crate::scalar::{int, Rational};
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn global_residue_theorem(
            n in prop::collection::vec(-6i64..=6, 1..5),
            d in prop::collection::vec(-6i64..=6, 2..5),
            k in -3i64..=3,
        ) {
            let n = UniPoly::new(n.into_iter().map(int).collect::<Vec<Rational>>());
            let d = UniPoly::new(d.into_iter().map(int).collect::<Vec<Rational>>());
            prop_assume!(d.degree().unwrap_or(0) >= 1 && !d.coeff(0).is_zero() && d.is_squarefree());
            // n s^k with k < 0 is folded in as n · (s^-1 mod d)^|k| for the
            // roots, which are all nonzero
            let sk = if k >= 0 {
                UniPoly::monomial(k as usize, int(1))
            } else {
                let inv = UniPoly::monomial(1, int(1)).inverse_mod(&d).unwrap();
                (0..-k).fold(UniPoly::constant(int(1)), |a, _| a.mul(&inv).rem(&d))
            };
            let roots = residue_sum_at_roots(&n.mul(&sk), &d).unwrap();
            let (z, inf) = residues_at_zero_and_infinity(&n, &d, k).unwrap();
            prop_assert_eq!(z + inf + roots, int(0));
        }
    }
}
