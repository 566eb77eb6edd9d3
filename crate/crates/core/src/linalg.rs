//! Dense symmetric positive-definite solves.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Symmetric matrix stored as a full row-major `n × n` array.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Zero matrix of order `n`.
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Order of the matrix.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Add `v` to entries `(i, j)` and `(j, i)` (once when `i == j`).
    pub fn add_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
        if i != j {
            self.data[j * self.n + i] += v;
        }
    }

    /// Add `v` to entry `(i, j)` with `i ≥ j` only; call
    /// [`SymMatrix::mirror_lower`] once accumulation is complete.
    pub fn add_lower(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i >= j);
        self.data[i * self.n + j] += v;
    }

    /// Copy the lower triangle onto the upper one.
    pub fn mirror_lower(&mut self) {
        for i in 0..self.n {
            for j in 0..i {
                self.data[j * self.n + i] = self.data[i * self.n + j];
            }
        }
    }

    /// Largest diagonal entry.
    pub fn max_diagonal(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).fold(0.0, f64::max)
    }

    /// Add `mu` to every diagonal entry.
    pub fn add_diagonal(&mut self, mu: f64) {
        for i in 0..self.n {
            self.data[i * self.n + i] += mu;
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.data
            .chunks_exact(self.n.max(1))
            .take(self.n)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Lower-triangular Cholesky factor `L` with `A = L Lᵀ`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    /// Factor `a`; fails if a pivot is not positive.
    pub fn factor(a: &SymMatrix) -> Result<Self> {
        let n = a.n;
        let mut l = a.data.clone();
        for j in 0..n {
            let row_j = &mut l[j * n..j * n + n];
            let d = row_j[j] - row_j[..j].iter().map(|v| v * v).sum::<f64>();
            if !(d > 0.0) {
                return Err(Error::NotPositiveDefinite);
            }
            let d = libm::sqrt(d);
            row_j[j] = d;
            row_j[j + 1..].iter_mut().for_each(|v| *v = 0.0);
            for i in j + 1..n {
                let (head, tail) = l.split_at_mut(i * n);
                let row_j = &head[j * n..j * n + j];
                let row_i = &mut tail[..n];
                let s: f64 = row_i[..j].iter().zip(row_j).map(|(a, b)| a * b).sum();
                row_i[j] = (row_i[j] - s) / d;
            }
        }
        Ok(Cholesky { n, l })
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
        let mut y = b.to_vec();
        for i in 0..n {
            let row = &self.l[i * n..i * n + i];
            let s: f64 = row.iter().zip(&y[..i]).map(|(a, b)| a * b).sum();
            y[i] = (y[i] - s) / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.l[k * n + i] * y[k];
            }
            y[i] = s / self.l[i * n + i];
        }
        Ok(y)
    }

    /// Cheap condition estimate `(max Lᵢᵢ / min Lᵢᵢ)²`, a lower bound on the
    /// 2-norm condition number.
    pub fn condition_estimate(&self) -> f64 {
        let diag = (0..self.n).map(|i| self.l[i * self.n + i]);
        let (lo, hi) = diag.fold((f64::INFINITY, 0.0f64), |(lo, hi), d| (lo.min(d), hi.max(d)));
        if self.n == 0 {
            1.0
        } else {
            (hi / lo) * (hi / lo)
        }
    }
}
