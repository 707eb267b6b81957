//! Exact determinants and Pfaffians over any [`Field`].

use crate::algebra::Field;
use crate::error::{Error, Result};

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F: Field> {
    dim: usize,
    entries: Vec<F>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Contract("matrix is not square".into()));
        }
        Ok(Self {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Result<F>) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j)?);
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![F::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = F::one();
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            self.get(i, i).is_zero() && (i + 1..self.dim).all(|j| *self.get(i, j) == -self.get(j, i).clone())
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.dim {
            self.entries.swap(a * self.dim + j, b * self.dim + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.dim {
            self.entries.swap(i * self.dim + a, i * self.dim + b);
        }
    }

    /// Determinant by Gaussian elimination, taking the first nonzero entry
    /// of each column as pivot.
    pub fn det(&self) -> F {
        let n = self.dim;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            let pinv = pivot.inv().expect("nonzero pivot");
            det = det * pivot;
            for r in c + 1..n {
                if m.get(r, c).is_zero() {
                    continue;
                }
                let f = m.get(r, c).clone() * pinv.clone();
                for k in c..n {
                    let v = m.get(r, k).clone() - f.clone() * m.get(c, k).clone();
                    m.set(r, k, v);
                }
            }
        }
        det
    }

    /// Pfaffian of a skew-symmetric matrix of even dimension.
    ///
    /// Small matrices use first-row expansion; from dimension 6 up the
    /// matrix is reduced by skew congruences, pairing each row with the
    /// first later column holding a nonzero entry.
    pub fn pfaffian(&self) -> Result<F> {
        if self.dim % 2 == 1 {
            return Err(Error::Contract(format!(
                "Pfaffian needs even dimension, got {}",
                self.dim
            )));
        }
        if !self.is_skew_symmetric() {
            return Err(Error::Contract("Pfaffian needs a skew-symmetric matrix".into()));
        }
        if self.dim < 6 {
            Ok(self.pfaffian_expansion())
        } else {
            Ok(self.pfaffian_elimination())
        }
    }

    /// Recursive expansion along the first row. Exponential; kept for
    /// small dimensions and as an independent check of the elimination.
    pub fn pfaffian_expansion(&self) -> F {
        let idx: Vec<usize> = (0..self.dim).collect();
        self.pf_expand(&idx)
    }

    fn pf_expand(&self, idx: &[usize]) -> F {
        if idx.is_empty() {
            return F::one();
        }
        let first = idx[0];
        let mut acc = F::zero();
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let entry = self.get(first, j);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != 0 && p != pos)
                .map(|(_, &k)| k)
                .collect();
            let term = entry.clone() * self.pf_expand(&rest);
            // sign (-1)^(pos-1)
            acc = if pos % 2 == 1 { acc + term } else { acc - term };
        }
        acc
    }

    fn pfaffian_elimination(&self) -> F {
        let n = self.dim;
        let mut m = self.clone();
        let mut pf = F::one();
        let mut k = 0;
        while k < n {
            let Some(p) = (k + 1..n).find(|&j| !m.get(k, j).is_zero()) else {
                return F::zero();
            };
            if p != k + 1 {
                m.swap_rows(p, k + 1);
                m.swap_cols(p, k + 1);
                pf = -pf;
            }
            let piv = m.get(k, k + 1).clone();
            pf = pf * piv.clone();
            let pinv = piv.inv().expect("nonzero pivot");
            // Clear row/column k beyond k+1 using row/column k+1, then row/column
            // k+1 beyond k+1 using row/column k. Each step is a congruence
            // by a unit triangular matrix, which leaves the Pfaffian unchanged.
            for i in k + 2..n {
                let f = m.get(k, i).clone() * pinv.clone();
                if !f.is_zero() {
                    m.add_congruence(i, k + 1, &f);
                }
            }
            let back = -pinv;
            for i in k + 2..n {
                let g = m.get(k + 1, i).clone() * back.clone();
                if !g.is_zero() {
                    m.add_congruence(i, k, &g);
                }
            }
            k += 2;
        }
        pf
    }

    /// row_i -= f·row_src, then col_i -= f·col_src.
    fn add_congruence(&mut self, i: usize, src: usize, f: &F) {
        let n = self.dim;
        for j in 0..n {
            let v = self.get(i, j).clone() - f.clone() * self.get(src, j).clone();
            self.set(i, j, v);
        }
        for r in 0..n {
            let v = self.get(r, i).clone() - f.clone() * self.get(r, src).clone();
            self.set(r, i, v);
        }
    }
}
