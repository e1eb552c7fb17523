//! Dense matrices over a ring engine.
//!
//! Zero-row and zero-column matrices are first-class: they present free and
//! zero modules and show up constantly as boundary cases of the homological
//! operations.

use crate::engine::{Elem, RingEngine};
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    engine: RingEngine,
    rows: usize,
    cols: usize,
    data: Vec<Elem>, // row-major
}

impl Matrix {
    pub fn zero(engine: RingEngine, rows: usize, cols: usize) -> Matrix {
        let data = vec![engine.zero(); rows * cols];
        Matrix { engine, rows, cols, data }
    }

    pub fn identity(engine: RingEngine, n: usize) -> Matrix {
        let mut m = Matrix::zero(engine.clone(), n, n);
        for i in 0..n {
            m.set(i, i, engine.one());
        }
        m
    }

    pub fn from_rows(engine: RingEngine, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
        }
        let data: Vec<Elem> = rows
            .into_iter()
            .flatten()
            .map(|e| engine.canon(e))
            .collect();
        Ok(Matrix { engine, rows: r, cols: c, data })
    }

    pub fn from_fn(
        engine: RingEngine,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(engine.canon(f(i, j)));
            }
        }
        Matrix { engine, rows, cols, data }
    }

    pub fn engine(&self) -> &RingEngine {
        &self.engine
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Elem) {
        self.data[i * self.cols + j] = self.engine.canon(e);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.engine.is_zero(e))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.engine.clone(), self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.engine.require_same(&other.engine)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(
            self.engine.clone(),
            self.rows,
            other.cols,
            |i, j| {
                let mut acc = self.engine.zero();
                for k in 0..self.cols {
                    let t = self.engine.mul(self.get(i, k), other.get(k, j));
                    acc = self.engine.add(&acc, &t);
                }
                acc
            },
        ))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.engine.require_same(&other.engine)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        Ok(Matrix::from_fn(self.engine.clone(), self.rows, self.cols, |i, j| {
            self.engine.add(self.get(i, j), other.get(i, j))
        }))
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.engine.clone(), self.rows, self.cols, |i, j| {
            self.engine.neg(self.get(i, j))
        })
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.engine.require_same(&other.engine)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack".into()));
        }
        Ok(Matrix::from_fn(
            self.engine.clone(),
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    /// Vertical concatenation [self; other].
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.engine.require_same(&other.engine)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        Ok(Matrix::from_fn(
            self.engine.clone(),
            self.rows + other.rows,
            self.cols,
            |i, j| {
                if i < self.rows {
                    self.get(i, j).clone()
                } else {
                    other.get(i - self.rows, j).clone()
                }
            },
        ))
    }

    /// Block diagonal [self 0; 0 other].
    pub fn block_diag(&self, other: &Matrix) -> Result<Matrix> {
        self.engine.require_same(&other.engine)?;
        Ok(Matrix::from_fn(
            self.engine.clone(),
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| {
                if i < self.rows && j < self.cols {
                    self.get(i, j).clone()
                } else if i >= self.rows && j >= self.cols {
                    other.get(i - self.rows, j - self.cols).clone()
                } else {
                    self.engine.zero()
                }
            },
        ))
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.engine.clone(), self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.engine.clone(), self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]).clone()
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.engine.clone(), idx.len(), self.cols, |i, j| {
            self.get(idx[i], j).clone()
        })
    }

    /// Rows `0..k` of the matrix.
    pub fn top_rows(&self, k: usize) -> Matrix {
        Matrix::from_fn(self.engine.clone(), k, self.cols, |i, j| self.get(i, j).clone())
    }

    pub fn column_is_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.engine.is_zero(self.get(i, j)))
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        (0..self.cols).all(|j| self.engine.is_zero(self.get(i, j)))
    }

    /// Drop columns that are entirely zero.
    pub fn drop_zero_columns(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.cols).filter(|&j| !self.column_is_zero(j)).collect();
        self.select_columns(&keep)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    pub fn row_add_multiple(&mut self, dst: usize, src: usize, c: &Elem) {
        for j in 0..self.cols {
            let t = self.engine.mul(self.get(src, j), c);
            let v = self.engine.add(self.get(dst, j), &t);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += c * col[src]
    pub fn col_add_multiple(&mut self, dst: usize, src: usize, c: &Elem) {
        for i in 0..self.rows {
            let t = self.engine.mul(self.get(i, src), c);
            let v = self.engine.add(self.get(i, dst), &t);
            self.set(i, dst, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Elem) {
        for j in 0..self.cols {
            let v = self.engine.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &Elem) {
        for i in 0..self.rows {
            let v = self.engine.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    /// Determinant by cofactor expansion. Intended for the small unimodular
    /// certificates, not for bulk computation.
    pub fn determinant(&self) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.engine.one());
        }
        if n == 1 {
            return Ok(self.get(0, 0).clone());
        }
        let mut acc = self.engine.zero();
        for j in 0..n {
            if self.engine.is_zero(self.get(0, j)) {
                continue;
            }
            let minor = Matrix::from_fn(self.engine.clone(), n - 1, n - 1, |r, c| {
                let cc = if c < j { c } else { c + 1 };
                self.get(r + 1, cc).clone()
            });
            let mut term = self.engine.mul(self.get(0, j), &minor.determinant()?);
            if j % 2 == 1 {
                term = self.engine.neg(&term);
            }
            acc = self.engine.add(&acc, &term);
        }
        Ok(acc)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Convenience constructor over the integers for tests and examples.
pub fn int_matrix(rows: &[&[i64]]) -> Matrix {
    let engine = RingEngine::Integers;
    Matrix::from_rows(
        engine.clone(),
        rows.iter()
            .map(|r| r.iter().map(|&v| engine.from_i64(v)).collect())
            .collect(),
    )
    .expect("rectangular literal")
}

/// Convenience constructor over Z/n.
pub fn mod_matrix(n: u64, rows: &[&[i64]]) -> Matrix {
    let engine = RingEngine::integers_mod(n).expect("valid modulus");
    Matrix::from_rows(
        engine.clone(),
        rows.iter()
            .map(|r| r.iter().map(|&v| engine.from_i64(v)).collect())
            .collect(),
    )
    .expect("rectangular literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_matrices_are_legal() {
        let z = RingEngine::Integers;
        let a = Matrix::zero(z.clone(), 0, 3);
        let b = Matrix::zero(z.clone(), 3, 0);
        assert!(a.is_zero());
        let prod = a.mul(&b).unwrap();
        assert_eq!((prod.rows(), prod.cols()), (0, 0));
        let prod = b.mul(&a).unwrap();
        assert_eq!((prod.rows(), prod.cols()), (3, 3));
        assert!(prod.is_zero());
        assert_eq!(Matrix::identity(z, 0).determinant().unwrap(), Elem::int(1));
    }

    #[test]
    fn multiply_and_determinant() {
        let a = int_matrix(&[&[1, 2], &[3, 4]]);
        let b = int_matrix(&[&[0, 1], &[1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, int_matrix(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.determinant().unwrap(), Elem::int(-2));
        let c = int_matrix(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]);
        assert_eq!(c.determinant().unwrap(), Elem::int(5));
    }

    #[test]
    fn row_and_column_ops_match_elementary_matrices() {
        let mut a = int_matrix(&[&[1, 2], &[3, 4]]);
        a.row_add_multiple(1, 0, &Elem::int(-3));
        assert_eq!(a, int_matrix(&[&[1, 2], &[0, -2]]));
        a.swap_cols(0, 1);
        assert_eq!(a, int_matrix(&[&[2, 1], &[-2, 0]]));
    }

    #[test]
    fn engine_mismatch_rejected() {
        let a = int_matrix(&[&[1]]);
        let b = mod_matrix(4, &[&[1]]);
        assert!(a.mul(&b).is_err());
    }
}
