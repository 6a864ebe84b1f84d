//! The residue pairing on logarithmic fields,
//! `⟨u, v⟩ = −Res_{∞₁} t'F(u)t'F(v)/H·α + Res_{∞₂} t'F(u)t'F(v)/H·α`.

use serde::Serialize;

use super::fiber::{constant_coefficient_at_infinity, constant_coefficient_at_zero, FiberModel, Laurent};
use crate::algebra::linalg::Matrix;
use crate::algebra::residue::residue_sum_at_roots;
use crate::algebra::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::{rational_string, Field, Rational};

/// The two summands of the pairing of a pair of frame fields.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingTerms<K> {
    /// `−Res_{∞₁}(…)α`
    pub infinity1: K,
    /// `Res_{∞₂}(…)α`
    pub infinity2: K,
}

impl<K: Field> PairingTerms<K> {
    pub fn total(&self) -> K {
        self.infinity1.clone() + self.infinity2.clone()
    }
}

/// Pairing of two functions on the fibre, given as Laurent polynomials.
pub fn pair_functions<K: Field>(g: &Laurent<K>, h: &Laurent<K>, fm: &FiberModel<K>) -> Result<PairingTerms<K>> {
    let gh = g.mul(h);
    // α = ds/s at ∞₁, −ds/s at ∞₂; residues of φ·ds/s are [s^0]φ at s = 0
    // and −[w^0]φ at s = ∞
    let r1 = constant_coefficient_at_zero(&gh, &fm.h)?;
    let r2 = constant_coefficient_at_infinity(&gh, &fm.h)?;
    Ok(PairingTerms { infinity1: -r1, infinity2: r2 })
}

/// `⟨u, v⟩` for frame positions `u`, `v`.
pub fn pairing_terms<K: Field>(u: usize, v: usize, fm: &FiberModel<K>) -> Result<PairingTerms<K>> {
    let n = fm.images.len();
    if u >= n || v >= n {
        return Err(Error::DimensionMismatch(format!("frame position out of range 0..{n}")));
    }
    pair_functions(&fm.images[u], &fm.images[v], fm)
}

pub fn pairing<K: Field>(u: usize, v: usize, fm: &FiberModel<K>) -> Result<K> {
    Ok(pairing_terms(u, v, fm)?.total())
}

/// Gram matrix of the pairing on the frame, split into its two summands.
#[derive(Clone, Debug)]
pub struct PairingMatrix<K> {
    pub infinity1: Matrix<K>,
    pub infinity2: Matrix<K>,
    pub total: Matrix<K>,
}

pub fn pairing_matrix<K: Field>(fm: &FiberModel<K>) -> Result<PairingMatrix<K>> {
    let n = fm.images.len();
    let mut m1 = Matrix::zeros(n, n);
    let mut m2 = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = pairing_terms(i, j, fm)?;
            m1[(i, j)] = t.infinity1.clone();
            m1[(j, i)] = t.infinity1;
            m2[(i, j)] = t.infinity2.clone();
            m2[(j, i)] = t.infinity2;
        }
    }
    let total = m1.add(&m2);
    Ok(PairingMatrix { infinity1: m1, infinity2: m2, total })
}

/// `P(k, l) = (k + l)·c_{k+l}` for `1 ≤ k, l ≤ n − 1`, with `c_n = 1` and
/// `c_m = 0` for `m > n`; `coeffs[i]` is `c_{i+1}`.
pub fn hankel_block<K: Field>(coeffs: &[K], n: usize) -> Matrix<K> {
    Matrix::from_fn(n - 1, n - 1, |k, l| {
        let m = k + l + 2;
        let c = match m.cmp(&n) {
            std::cmp::Ordering::Less => coeffs[m - 1].clone(),
            std::cmp::Ordering::Equal => K::one(),
            std::cmp::Ordering::Greater => K::zero(),
        };
        c * K::from_int(m as i64)
    })
}

/// Reverses rows and columns: converts between ascending index order and
/// the descending order used by the frame.
pub fn reverse_indices<K: Field>(m: &Matrix<K>) -> Matrix<K> {
    let (r, c) = (m.nrows(), m.ncols());
    Matrix::from_fn(r, c, |i, j| m[(r - 1 - i, c - 1 - j)].clone())
}

/// Residues of `t'F(u)t'F(v)/H·ds/s` at `s = 0`, at `s = ∞` and summed over
/// the zeros of `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueBalance<K> {
    pub at_zero: K,
    pub at_infinity: K,
    pub at_critical_points: K,
}

impl<K: Field> ResidueBalance<K> {
    pub fn sum(&self) -> K {
        self.at_zero.clone() + self.at_infinity.clone() + self.at_critical_points.clone()
    }
}

pub fn residue_balance<K: Field>(u: usize, v: usize, fm: &FiberModel<K>) -> Result<ResidueBalance<K>> {
    let gh = fm.images[u].mul(&fm.images[v]);
    let at_zero = constant_coefficient_at_zero(&gh, &fm.h)?;
    let at_infinity = -constant_coefficient_at_infinity(&gh, &fm.h)?;
    // gh/(H s) ds = s^m N(s) / Hq(s) ds with Hq = s^q H
    let hq = fm.h_polynomial();
    let at_critical_points = if gh.is_zero() {
        K::zero()
    } else {
        let (low, n) = gh.to_unipoly();
        let m = low + fm.q as i64 - 1;
        let numer = if m >= 0 {
            n.mul(&UniPoly::monomial(m as usize, K::one()))
        } else {
            let inv = UniPoly::monomial((-m) as usize, K::one()).inverse_mod(&hq).ok_or(Error::SingularFiber)?;
            n.mul(&inv).rem(&hq)
        };
        residue_sum_at_roots(&numer, &hq).map_err(|e| match e {
            Error::NotSquarefree => Error::SingularFiber,
            e => e,
        })?
    };
    Ok(ResidueBalance { at_zero, at_infinity, at_critical_points })
}

/// Global residue theorem for the pairing integrand of `(u, v)`.
pub fn residue_theorem_check<K: Field>(fm: &FiberModel<K>, u: usize, v: usize) -> Result<bool> {
    Ok(residue_balance(u, v, fm)?.sum().is_zero())
}

/// Serializable form of a rational pairing matrix.
#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub frame: Vec<String>,
    pub infinity1: Vec<Vec<String>>,
    pub infinity2: Vec<Vec<String>>,
    pub total: Vec<Vec<String>>,
}

pub fn matrix_strings(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(rational_string).collect()).collect()
}

impl PairingReport {
    pub fn new(frame: Vec<String>, pm: &PairingMatrix<Rational>) -> Self {
        PairingReport {
            frame,
            infinity1: matrix_strings(&pm.infinity1),
            infinity2: matrix_strings(&pm.infinity2),
            total: matrix_strings(&pm.total),
        }
    }
}
