//! Multiplications on a commuting frame of vector fields, with the first
//! derivatives of their structure constants along the frame.

use serde::Serialize;

use crate::algebra::linalg::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// `t[i][j][k]`: the `X_k`-component of `X_i ⋆ X_j`.
pub type Tensor3<K> = Vec<Vec<Vec<K>>>;

pub fn zero_tensor<K: Field>(n: usize) -> Tensor3<K> {
    vec![vec![vec![K::zero(); n]; n]; n]
}

/// A multiplication `⋆` on the frame `X_0..X_{n−1}` (pairwise commuting),
/// its unit and Euler field, and their derivatives along the frame.
#[derive(Clone, Debug)]
pub struct FStructure<K> {
    pub frame: Vec<String>,
    pub c: Tensor3<K>,
    /// `dc[m][i][j][k] = X_m(c[i][j][k])`
    pub dc: Vec<Tensor3<K>>,
    pub unit: usize,
    /// `E = Σ euler[m]·X_m`
    pub euler: Vec<K>,
    /// `deuler[n][m] = X_n(euler[m])`
    pub deuler: Vec<Vec<K>>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    pub commutative: bool,
    pub associative: bool,
    pub unital: bool,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.commutative && self.associative && self.unital
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IntegrabilityReport {
    pub pairs_checked: usize,
    /// Frame pairs `(i, j)` for which the identity fails.
    pub violations: Vec<(usize, usize)>,
}

impl IntegrabilityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<K: Field> FStructure<K> {
    pub fn new(frame: Vec<String>, c: Tensor3<K>, dc: Vec<Tensor3<K>>, unit: usize, euler: Vec<K>, deuler: Vec<Vec<K>>) -> Result<Self> {
        let n = frame.len();
        let shape_ok = c.len() == n
            && c.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n))
            && (dc.is_empty() || dc.len() == n)
            && euler.len() == n
            && (deuler.is_empty() || deuler.len() == n)
            && unit < n;
        if !shape_ok {
            return Err(Error::DimensionMismatch(format!("structure tensor does not match a frame of {n} fields")));
        }
        Ok(FStructure { frame, c, dc, unit, euler, deuler })
    }

    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<K> {
        (0..self.dim()).map(|k| if k == i { K::one() } else { K::zero() }).collect()
    }

    /// `u ⋆ v` for frame coordinates `u`, `v`.
    pub fn product(&self, u: &[K], v: &[K]) -> Vec<K> {
        let n = self.dim();
        let mut out = vec![K::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let w = u[i].clone() * v[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *o = o.clone() + w.clone() * self.c[i][j][k].clone();
                    }
                }
            }
        }
        out
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim();
        let mut r = AxiomReport { commutative: true, associative: true, unital: true, failures: vec![] };
        for i in 0..n {
            for j in 0..n {
                if self.c[i][j] != self.c[j][i] {
                    r.commutative = false;
                    r.failures.push(format!("commutativity ({i},{j})"));
                }
            }
        }
        for j in 0..n {
            if self.c[self.unit][j] != self.basis_vector(j) {
                r.unital = false;
                r.failures.push(format!("unit row at {j}"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // (X_i ⋆ X_j) ⋆ X_k = X_i ⋆ (X_j ⋆ X_k)
                    let left = self.product(&self.c[i][j], &self.basis_vector(k));
                    let right = self.product(&self.basis_vector(i), &self.c[j][k]);
                    if left != right {
                        r.associative = false;
                        r.failures.push(format!("associativity ({i},{j},{k})"));
                    }
                }
            }
        }
        r
    }

    /// `Lie_Y(⋆)` for `Y = Σ y[m]·X_m` with `dy[n][m] = X_n(y[m])`:
    /// `(Lie_Y ⋆)(X_k, X_l) = [Y, X_k⋆X_l] − [Y, X_k]⋆X_l − X_k⋆[Y, X_l]`.
    pub fn lie_of_product(&self, y: &[K], dy: &[Vec<K>]) -> Result<Tensor3<K>> {
        let n = self.dim();
        if self.dc.len() != n {
            return Err(Error::DimensionMismatch("frame derivatives of the structure constants are missing".into()));
        }
        let mut out = zero_tensor(n);
        for k in 0..n {
            for l in k..n {
                let mut v = vec![K::zero(); n];
                for (m, ym) in y.iter().enumerate() {
                    if ym.is_zero() {
                        continue;
                    }
                    for (o, d) in v.iter_mut().zip(&self.dc[m][k][l]) {
                        *o = o.clone() + ym.clone() * d.clone();
                    }
                }
                for (np, ckl) in self.c[k][l].iter().enumerate() {
                    if ckl.is_zero() {
                        continue;
                    }
                    for (o, d) in v.iter_mut().zip(&dy[np]) {
                        *o = o.clone() - ckl.clone() * d.clone();
                    }
                }
                for (m, d) in dy[k].iter().enumerate() {
                    if d.is_zero() {
                        continue;
                    }
                    for (o, cm) in v.iter_mut().zip(&self.c[m][l]) {
                        *o = o.clone() + d.clone() * cm.clone();
                    }
                }
                for (m, d) in dy[l].iter().enumerate() {
                    if d.is_zero() {
                        continue;
                    }
                    for (o, cm) in v.iter_mut().zip(&self.c[k][m]) {
                        *o = o.clone() + d.clone() * cm.clone();
                    }
                }
                out[l][k] = v.clone();
                out[k][l] = v;
            }
        }
        Ok(out)
    }

    /// `Lie_{X_u}(⋆)`.
    pub fn lie_along_frame(&self, u: usize) -> Result<Tensor3<K>> {
        let n = self.dim();
        self.lie_of_product(&self.basis_vector(u), &vec![vec![K::zero(); n]; n])
    }

    fn times(&self, t: &Tensor3<K>, v: &[K], left: bool) -> Tensor3<K> {
        t.iter()
            .map(|row| row.iter().map(|w| if left { self.product(v, w) } else { self.product(w, v) }).collect())
            .collect()
    }

    /// `Lie_{X_i⋆X_j}(⋆) = Lie_{X_i}(⋆)⋆X_j + X_i⋆Lie_{X_j}(⋆)` for every
    /// pair of frame fields.
    pub fn check_integrability(&self) -> Result<IntegrabilityReport> {
        let n = self.dim();
        let lies: Vec<Tensor3<K>> = (0..n).map(|u| self.lie_along_frame(u)).collect::<Result<_>>()?;
        let mut rep = IntegrabilityReport::default();
        for i in 0..n {
            for j in i..n {
                let y = &self.c[i][j];
                let dy: Vec<Vec<K>> = (0..n).map(|m| self.dc[m][i][j].clone()).collect();
                let lhs = self.lie_of_product(y, &dy)?;
                let a = self.times(&lies[i], &self.basis_vector(j), false);
                let b = self.times(&lies[j], &self.basis_vector(i), true);
                let rhs: Tensor3<K> = a
                    .iter()
                    .zip(&b)
                    .map(|(ra, rb)| {
                        ra.iter().zip(rb).map(|(va, vb)| va.iter().zip(vb).map(|(x, y)| x.clone() + y.clone()).collect()).collect()
                    })
                    .collect();
                rep.pairs_checked += 1;
                if lhs != rhs {
                    rep.violations.push((i, j));
                }
            }
        }
        Ok(rep)
    }

    /// `Lie_E(⋆)`.
    pub fn lie_euler(&self) -> Result<Tensor3<K>> {
        self.lie_of_product(&self.euler, &self.deuler)
    }

    /// `Lie_E(⋆) = ⋆`.
    pub fn check_euler(&self) -> Result<bool> {
        Ok(self.lie_euler()? == self.c)
    }

    /// Matrix of `E⋆` on frame coordinates: column `l` is `E ⋆ X_l`.
    pub fn euler_multiplication(&self) -> Matrix<K> {
        let n = self.dim();
        let cols: Vec<Vec<K>> = (0..n).map(|l| self.product(&self.euler, &self.basis_vector(l))).collect();
        Matrix::from_fn(n, n, |k, l| cols[l][k].clone())
    }

    /// `⟨u⋆v, w⟩ = ⟨u, v⋆w⟩` for all frame triples, for a Gram matrix on the
    /// frame.
    pub fn is_frobenius(&self, gram: &Matrix<K>) -> bool {
        let n = self.dim();
        let pair = |a: &[K], b: &[K]| -> K {
            let gb = gram.mul_vec(b);
            a.iter().zip(&gb).fold(K::zero(), |s, (x, y)| s + x.clone() * y.clone())
        };
        (0..n).all(|u| {
            (0..n).all(|v| {
                (0..n).all(|w| pair(&self.c[u][v], &self.basis_vector(w)) == pair(&self.basis_vector(u), &self.c[v][w]))
            })
        })
    }

    /// Entrywise image of the structure under a ring map.
    pub fn map<L: Field, F: Fn(&K) -> L>(&self, f: F) -> FStructure<L> {
        let t = |x: &Tensor3<K>| -> Tensor3<L> { x.iter().map(|r| r.iter().map(|v| v.iter().map(&f).collect()).collect()).collect() };
        FStructure {
            frame: self.frame.clone(),
            c: t(&self.c),
            dc: self.dc.iter().map(t).collect(),
            unit: self.unit,
            euler: self.euler.iter().map(&f).collect(),
            deuler: self.deuler.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }
}

/// Structure constants from the images `T_k` of the frame in an algebra:
/// `T·c_ij = T_i·T_j`, with `mul` the algebra product on coordinate vectors.
pub fn structure_from_images<K: Field, M: Fn(&[K], &[K]) -> Result<Vec<K>>>(images: &Matrix<K>, mul: M) -> Result<Tensor3<K>> {
    let n = images.ncols();
    let cols: Vec<Vec<K>> = (0..n).map(|j| images.column(j)).collect();
    let mut rhs = vec![];
    for i in 0..n {
        for j in i..n {
            rhs.push(mul(&cols[i], &cols[j])?);
        }
    }
    let sol = images.solve_many(&rhs)?;
    let mut c = zero_tensor(n);
    let mut it = sol.into_iter();
    for i in 0..n {
        for j in i..n {
            let v = it.next().unwrap();
            c[j][i] = v.clone();
            c[i][j] = v;
        }
    }
    Ok(c)
}
