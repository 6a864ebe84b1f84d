//! Dense exact linear algebra over any [`Field`].

use std::fmt;
use std::ops::{Index, IndexMut};

use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![K::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = K::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> K>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<K>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<L: Field, F: Fn(&K) -> L>(&self, f: F) -> Matrix<L> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-K::one()))
    }

    pub fn scale(&self, k: &K) -> Self {
        self.map(|a| a.clone() * k.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        Self::from_fn(self.rows, o.cols, |i, j| {
            let mut s = K::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if !a.is_zero() {
                    s = s + a.clone() * o[(k, j)].clone();
                }
            }
            s
        })
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = K::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() {
                        s = s + a.clone() * x.clone();
                    }
                }
                s
            })
            .collect()
    }

    pub fn trace(&self) -> K {
        (0..self.rows.min(self.cols)).fold(K::zero(), |s, i| s + self[(i, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m[(i, c)].is_unit()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = m[(r, j)].clone();
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel.
    pub fn nullspace(&self) -> Vec<Vec<K>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![K::zero(); self.cols];
                v[f] = K::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self · x = b` when the system is consistent, not
    /// necessarily square or of full rank.
    pub fn particular_solution(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![K::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> K {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return K::one();
        }
        let mut m = self.clone();
        let mut sign = K::one();
        let mut prev = K::one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| m[(i, k)].is_unit()) else {
                if (k..n).all(|i| m[(i, k)].is_zero()) {
                    return K::zero();
                }
                return self.det_by_expansion();
            };
            if p != k {
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[(k, k)].clone() * m[(i, j)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = v / prev.clone();
                }
                m[(i, k)] = K::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    // Laplace expansion, for rings like dual numbers where no unit pivot
    // may exist even though the determinant is well defined.
    fn det_by_expansion(&self) -> K {
        let n = self.rows;
        if n == 1 {
            return self[(0, 0)].clone();
        }
        let mut s = K::zero();
        for j in 0..n {
            if self[(0, j)].is_zero() {
                continue;
            }
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = self.submatrix(&rows, &cols).det_by_expansion();
            let t = self[(0, j)].clone() * minor;
            s = if j % 2 == 0 { s + t } else { s - t };
        }
        s
    }

    /// Solves `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[K]) -> Result<Vec<K>> {
        let cols: Vec<Vec<K>> = vec![b.to_vec()];
        let x = self.solve_many(&cols)?;
        Ok(x.into_iter().next().unwrap())
    }

    /// Solves for several right-hand sides at once using fraction-free
    /// elimination followed by back substitution.
    pub fn solve_many(&self, rhs: &[Vec<K>]) -> Result<Vec<Vec<K>>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} system is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        if rhs.iter().any(|b| b.len() != n) {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let w = n + rhs.len();
        let mut m = Self::from_fn(n, w, |i, j| if j < n { self[(i, j)].clone() } else { rhs[j - n][i].clone() });
        let mut prev = K::one();
        for k in 0..n {
            let p = (k..n).find(|&i| m[(i, k)].is_unit()).ok_or(Error::SingularMatrix)?;
            m.swap_rows(k, p);
            for i in k + 1..n {
                for j in k + 1..w {
                    let v = m[(k, k)].clone() * m[(i, j)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                    m[(i, j)] = v / prev.clone();
                }
                m[(i, k)] = K::zero();
            }
            prev = m[(k, k)].clone();
        }
        let mut out = Vec::with_capacity(rhs.len());
        for r in 0..rhs.len() {
            let mut x = vec![K::zero(); n];
            for i in (0..n).rev() {
                let mut s = m[(i, n + r)].clone();
                for j in i + 1..n {
                    if !m[(i, j)].is_zero() {
                        s = s - m[(i, j)].clone() * x[j].clone();
                    }
                }
                x[i] = s / m[(i, i)].clone();
            }
            out.push(x);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.rows;
        let e: Vec<Vec<K>> = (0..n).map(|j| (0..n).map(|i| if i == j { K::one() } else { K::zero() }).collect()).collect();
        let cols = self.solve_many(&e)?;
        Ok(Self::from_fn(n, n, |i, j| cols[j][i].clone()))
    }

    /// Characteristic polynomial `det(t·I − self)` by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> UniPoly<K> {
        assert!(self.is_square());
        let n = self.rows;
        let mut c = vec![K::zero(); n + 1];
        c[n] = K::one();
        let mut m = Self::zeros(n, n);
        let id = Self::identity(n);
        for k in 1..=n {
            m = self.mul(&m).add(&id.scale(&c[n - k + 1]));
            let am = self.mul(&m);
            c[n - k] = -(am.trace() / K::from_int(k as i64));
        }
        UniPoly::new(c)
    }
}

impl<K> Index<(usize, usize)> for Matrix<K> {
    type Output = K;
    fn index(&self, (i, j): (usize, usize)) -> &K {
        &self.data[i * self.cols + j]
    }
}

impl<K> IndexMut<(usize, usize)> for Matrix<K> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut K {
        &mut self.data[i * self.cols + j]
    }
}

impl<K: Field> fmt::Display for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// Solves `a · x = b` exactly by fraction-free elimination.
pub fn mat_solve<K: Field>(a: &Matrix<K>, b: &[K]) -> Result<Vec<K>> {
    a.solve(b)
}
