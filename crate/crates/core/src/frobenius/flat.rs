//! Flat coordinates of the residue pairing.
//!
//! At `∞₂` (`x → ∞`) put `w = 1/x` and `G(w) = w^p·F`, a power series with
//! `G(0) = 1`. Then `u = w·G^{−1/p}` satisfies `F = u^{−p}` and
//! `log(xu) = −(1/p)·log G(w(u)) = t₀ + t₁u + … + t_{p−1}u^{p−1} + O(u^p)`.
//! The same construction at `∞₁` with `w' = 1/y`, `q` and `b` gives `v`
//! and `s_j`.

use serde::Serialize;

use super::fiber::FiberModel;
use super::pairing::pairing_matrix;
use crate::algebra::linalg::Matrix;
use crate::algebra::poly::MultiPoly;
use crate::algebra::series::TruncSeries;
use crate::deform::node::{EpsLift, NodeFamily, NodeField};
use crate::error::{Error, Result};
use crate::scalar::{rational_string, Dual, Field, Rational};

/// Which puncture a chart lives at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Puncture {
    /// `y → ∞`, local coordinate `1/y`
    Infinity1,
    /// `x → ∞`, local coordinate `1/x`
    Infinity2,
}

/// `z^n·F` at the puncture, as a series in the local coordinate `z`, for
/// `F` specialized to a polynomial in `x, y` with coefficients in `K`.
pub fn normalized_series<K: Field>(f: &MultiPoly<K>, eps: &K, p: usize, q: usize, at: Puncture, order: i64) -> TruncSeries<K> {
    let terms: Vec<(i64, K)> = f
        .terms()
        .map(|(e, c)| {
            let (i, j) = (e[0] as i64, e[1] as i64);
            match at {
                // x^i y^j = ε^j w^(j−i)
                Puncture::Infinity2 => (p as i64 + j - i, c.clone() * eps.pow(e[1])),
                // x^i y^j = ε^i w'^(i−j)
                Puncture::Infinity1 => (q as i64 + i - j, c.clone() * eps.pow(e[0])),
            }
        })
        .collect();
    let var = match at {
        Puncture::Infinity1 => "w1",
        Puncture::Infinity2 => "w",
    };
    TruncSeries::from_terms(var, &terms, order)
}

/// Local chart at one puncture.
#[derive(Clone, Debug)]
pub struct PunctureChart<K> {
    pub pole_order: usize,
    /// `z^n·F` in the local coordinate `z`.
    pub g: TruncSeries<K>,
    /// The coordinate with `F = u^{−n}`, as a series in `z`.
    pub u: TruncSeries<K>,
    /// Inverse expansion `z(u)`.
    pub z_of_u: TruncSeries<K>,
    /// `log(u/z)` as a series in `u`.
    pub log_ratio: TruncSeries<K>,
}

impl<K: Field> PunctureChart<K> {
    pub fn new(g: TruncSeries<K>, n: usize) -> Result<Self> {
        let u = g.nth_root(n as u32)?.inverse()?.shift(1);
        let z_of_u = u.reversion()?;
        let log_ratio = g.log()?.scale(&K::from_frac(-1, n as i64)).compose(&z_of_u)?;
        Ok(PunctureChart { pole_order: n, g, u, z_of_u, log_ratio })
    }

    /// Coefficients of `u^1 .. u^(n−1)` in `log(u/z)`.
    pub fn flat_values(&self) -> Result<Vec<K>> {
        (1..self.pole_order as i64).map(|i| self.log_ratio.coeff(i)).collect()
    }

    /// `G(z(u))·(u/z(u))^n − 1`; vanishes up to the truncation order.
    pub fn roundtrip_residual(&self) -> Result<TruncSeries<K>> {
        let gz = self.g.compose(&self.z_of_u)?;
        let ratio = self.z_of_u.shift(-1).powi(-(self.pole_order as i64))?;
        Ok(gz.mul(&ratio).sub(&TruncSeries::one(self.z_of_u.var(), ratio.order())))
    }
}

/// Flat coordinates `t₁..t_{p−1}` and `s₁..s_{q−1}` at a base point, with
/// the charts they come from. `t₀ = s₀ = log 1 = 0` since the leading
/// coefficients of `F` at both punctures are 1.
#[derive(Clone, Debug)]
pub struct FlatChart<K> {
    pub order: i64,
    pub at_infinity2: PunctureChart<K>,
    pub at_infinity1: PunctureChart<K>,
    pub t: Vec<K>,
    pub s: Vec<K>,
}

pub fn min_truncation(p: usize, q: usize) -> i64 {
    (p + q + 2) as i64
}

pub fn default_truncation(p: usize, q: usize) -> i64 {
    (p + q + 4) as i64
}

pub fn flat_coordinates<K: Field>(fam: &NodeFamily, base: &[K], order: i64) -> Result<FlatChart<K>> {
    let (p, q) = (fam.p, fam.q);
    if order < min_truncation(p, q) {
        return Err(Error::TruncationExceeded { exponent: min_truncation(p, q), order });
    }
    let f = fam.specialize(&fam.f, base)?;
    let eps = &base[0];
    if !eps.is_unit() {
        return Err(Error::OnDiscriminant);
    }
    let at_infinity2 = PunctureChart::new(normalized_series(&f, eps, p, q, Puncture::Infinity2, order), p)?;
    let at_infinity1 = PunctureChart::new(normalized_series(&f, eps, p, q, Puncture::Infinity1, order), q)?;
    let t = at_infinity2.flat_values()?;
    let s = at_infinity1.flat_values()?;
    Ok(FlatChart { order, at_infinity2, at_infinity1, t, s })
}

/// Pairing of `∂t_i, ∂t_j` (and `∂s_i, ∂s_j`) from local representatives:
/// on the fibre `t'F(∂t_i) ≡ −H·u^i` near `∞₂` and `t'F(∂s_j) ≡ H·v^j`
/// near `∞₁`, so the entries are `[z^0](H·u^{i+j})` and `−[z^0](H·v^{i+j})`.
/// Indices run `1..p` (resp. `1..q`) ascending.
pub fn flat_pairing_local<K: Field>(fam: &NodeFamily, base: &[K], chart: &FlatChart<K>) -> Result<(Matrix<K>, Matrix<K>)> {
    let (p, q) = (fam.p, fam.q);
    let h = fam.specialize(&fam.h, base)?;
    let eps = &base[0];
    let order = chart.order + (p + q) as i64;
    // H = z^−n·(z^n H); reuse the normalization with pole order n
    let h2 = normalized_series(&h, eps, p, q, Puncture::Infinity2, order).shift(-(p as i64));
    let h1 = normalized_series(&h, eps, p, q, Puncture::Infinity1, order).shift(-(q as i64));
    let block = |hz: &TruncSeries<K>, u: &TruncSeries<K>, n: usize, sign: K| -> Result<Matrix<K>> {
        let mut m = Matrix::zeros(n - 1, n - 1);
        for i in 1..n {
            for j in 1..n {
                m[(i - 1, j - 1)] = sign.clone() * hz.mul(&u.powi((i + j) as i64)?).coeff(0)?;
            }
        }
        Ok(m)
    };
    Ok((block(&h2, &chart.at_infinity2.u, p, K::one())?, block(&h1, &chart.at_infinity1.u, q, -K::one())?))
}

/// `D[k][m] = X_m(T_k)` for the frame `X` and flat coordinates
/// `T = (log ε, t_{p−1}..t₁, s_{q−1}..s₁, c)`, computed exactly with dual
/// numbers, one base coordinate at a time.
pub fn flat_jacobian(fam: &NodeFamily, base: &[Rational], order: i64) -> Result<Matrix<Rational>> {
    let (p, q) = (fam.p, fam.q);
    let n = p + q;
    let frame = fam.frame();
    let mut d = Matrix::zeros(n, n);
    for (col, &u) in frame.iter().enumerate() {
        let m = fam.parameter_of(u);
        let dual: Vec<Dual<Rational>> = base
            .iter()
            .enumerate()
            .map(|(k, b)| if k == m { Dual::variable(b.clone()) } else { Dual::constant(b.clone()) })
            .collect();
        let chart = flat_coordinates(fam, &dual, order)?;
        let scale = if m == 0 { base[0].clone() } else { Rational::from_int(1) };
        let mut column = vec![Rational::from_int(0); n];
        column[0] = if m == 0 { Rational::from_int(1) } else { Rational::from_int(0) };
        for (k, t) in chart.t.iter().enumerate() {
            // t_{k+1} sits at row p−1−k
            column[p - 1 - k] = t.du.clone() * scale.clone();
        }
        for (k, s) in chart.s.iter().enumerate() {
            column[p - 1 + q - 1 - k] = s.du.clone() * scale.clone();
        }
        column[n - 1] = if u == NodeField::DC { Rational::from_int(1) } else { Rational::from_int(0) };
        for (row, v) in column.into_iter().enumerate() {
            d[(row, col)] = v;
        }
    }
    Ok(d)
}

/// Outcome of the two computations of the flat pairing.
#[derive(Clone, Debug)]
pub struct FlatPairingCheck {
    /// Gram matrix in the flat frame via the Jacobian and the residue pairing.
    pub transported: Matrix<Rational>,
    /// `t`-block and `s`-block from local series, ascending indices.
    pub local_t: Matrix<Rational>,
    pub local_s: Matrix<Rational>,
    pub expected: Matrix<Rational>,
}

impl FlatPairingCheck {
    pub fn routes_agree(&self) -> bool {
        let (p, q) = (self.local_t.nrows() + 1, self.local_s.nrows() + 1);
        let t: Vec<usize> = (1..p).rev().collect();
        let s: Vec<usize> = (p..p + q - 1).rev().collect();
        self.transported.submatrix(&t, &t) == self.local_t && self.transported.submatrix(&s, &s) == self.local_s
    }

    pub fn matches_expected(&self) -> bool {
        self.transported == self.expected
    }
}

/// `[[0,0,0,1],[0,T,0,0],[0,0,S,0],[1,0,0,0]]` with `T = p·δ_{i+j,p}` and
/// `S = q·δ_{i+j,q}`.
pub fn expected_flat_gram(p: usize, q: usize) -> Matrix<Rational> {
    let n = p + q;
    Matrix::from_fn(n, n, |i, j| {
        let v = if (i == 0 && j == n - 1) || (i == n - 1 && j == 0) {
            1
        } else if (1..p).contains(&i) && (1..p).contains(&j) && i + j == p {
            p as i64
        } else if (p..n - 1).contains(&i) && (p..n - 1).contains(&j) && i + j == 2 * p + q - 2 {
            q as i64
        } else {
            0
        };
        Rational::from_int(v)
    })
}

pub fn flat_pairing_check(fam: &NodeFamily, base: &[Rational], order: i64) -> Result<FlatPairingCheck> {
    let chart = flat_coordinates(fam, base, order)?;
    let (local_t, local_s) = flat_pairing_local(fam, base, &chart)?;
    let d = flat_jacobian(fam, base, order)?;
    let dinv = d.inverse()?;
    let g = pairing_matrix(&FiberModel::new(fam, base, EpsLift::Symmetric)?)?.total;
    let transported = dinv.transpose().mul(&g).mul(&dinv);
    Ok(FlatPairingCheck { transported, local_t, local_s, expected: expected_flat_gram(fam.p, fam.q) })
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatChartReport {
    pub truncation: i64,
    pub t0: String,
    pub s0: String,
    pub t: Vec<String>,
    pub s: Vec<String>,
}

impl FlatChartReport {
    pub fn new(chart: &FlatChart<Rational>) -> Self {
        FlatChartReport {
            truncation: chart.order,
            t0: "log(1)".into(),
            s0: "log(1)".into(),
            t: chart.t.iter().map(rational_string).collect(),
            s: chart.s.iter().map(rational_string).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn base(p: usize, q: usize, k: i64) -> Vec<Rational> {
        let mut b = vec![rat(k + 2, k + 1)];
        for i in 1..p + q {
            b.push(rat((i as i64 * 5 + k) % 7 - 3, (i as i64 * k) % 3 + 1));
        }
        b
    }

    #[test]
    fn pure_powers_have_zero_flat_values() {
        let fam = NodeFamily::new(3, 2).unwrap();
        let chart = flat_coordinates(&fam, &[rat(1, 2), int(0), int(0), int(0), int(0)], 9).unwrap();
        assert_eq!(chart.t, vec![int(0), int(0)]);
        assert_eq!(chart.s, vec![int(0)]);
        // u = w(1 + ε^q w^(p+q))^(−1/p): first correction at w^(1+p+q)
        let u = &chart.at_infinity2.u;
        assert_eq!(u.coeff(1).unwrap(), int(1));
        for k in 2..=5 {
            assert_eq!(u.coeff(k).unwrap(), int(0));
        }
        assert_eq!(u.coeff(6).unwrap(), rat(-1, 12));
    }

    #[test]
    fn t_depends_only_on_a() {
        let fam = NodeFamily::new(3, 3).unwrap();
        let b0 = base(3, 3, 1);
        let c0 = flat_coordinates(&fam, &b0, 10).unwrap();
        let mut b1 = b0.clone();
        b1[3] = rat(9, 2);
        b1[4] = int(-7);
        b1[0] = rat(5, 3);
        b1[5] = int(11);
        let c1 = flat_coordinates(&fam, &b1, 10).unwrap();
        assert_eq!(c0.t, c1.t);
        let mut b2 = b0.clone();
        b2[1] = int(4);
        let c2 = flat_coordinates(&fam, &b2, 10).unwrap();
        assert_eq!(c0.s, c2.s);
        assert_ne!(c0.t, c2.t);
    }

    #[test]
    fn first_flat_value_oracle() {
        // p = 2: G = 1 + a1 w + …; t1 = −(1/2)·[u] log G(w(u)) = −a1/2
        let fam = NodeFamily::new(2, 3).unwrap();
        let chart = flat_coordinates(&fam, &[int(1), int(3), int(0), int(0), int(0)], 8).unwrap();
        assert_eq!(chart.t, vec![rat(-3, 2)]);
    }

    #[test]
    fn roundtrip() {
        let fam = NodeFamily::new(3, 4).unwrap();
        let chart = flat_coordinates(&fam, &base(3, 4, 2), 12).unwrap();
        for c in [&chart.at_infinity1, &chart.at_infinity2] {
            let r = c.roundtrip_residual().unwrap();
            assert!(r.is_zero(), "{r}");
            assert!(r.order() >= 12);
        }
    }

    #[test]
    fn truncation_too_small() {
        let fam = NodeFamily::new(2, 2).unwrap();
        let err = flat_coordinates(&fam, &base(2, 2, 1), 5).unwrap_err();
        assert_eq!(err, Error::TruncationExceeded { exponent: 6, order: 5 });
    }

    #[test]
    fn flat_pairing_examples() {
        let fam = NodeFamily::new(2, 3).unwrap();
        let chk = flat_pairing_check(&fam, &base(2, 3, 1), 9).unwrap();
        assert_eq!(chk.local_t[(0, 0)], int(2));
        assert!(chk.routes_agree());
        assert!(chk.matches_expected(), "{}", chk.transported);
        let fam = NodeFamily::new(3, 2).unwrap();
        let chk = flat_pairing_check(&fam, &base(3, 2, 2), 9).unwrap();
        assert_eq!(chk.local_t[(0, 1)], int(3));
        assert_eq!(chk.transported[(1, 3)], int(0));
        assert!(chk.routes_agree());
        assert!(chk.matches_expected(), "{}", chk.transported);
    }
}
