//! Dense matrices with entries in a finite field.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_elems(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Row-major element encodings. Panics on values outside the field.
    pub fn from_values(field: &Field, rows: usize, cols: usize, values: &[u32]) -> Matrix {
        let data = values
            .iter()
            .map(|&v| field.elem(v as u64).expect("value outside the field"))
            .collect();
        Matrix::from_elems(field, rows, cols, data)
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::from_elems(field, rows, cols, data)
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        let q = field.size();
        Matrix::from_fn(field, rows, cols, |_, _| Elem(rng.gen_range(0..q)))
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(out.get(i, j), f.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension("matrix sum of different shapes".into()));
        }
        let f = &self.field;
        Ok(Matrix::from_fn(f, self.rows, self.cols, |i, j| {
            f.add(self.get(i, j), rhs.get(i, j))
        }))
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        Matrix::from_fn(f, self.rows, self.cols, |i, j| f.neg(self.get(i, j)))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn row_echelon(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Determinant by Gaussian elimination. Panics on non-square input.
    pub fn det(&self) -> Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Elem::ZERO;
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(&self.field, n))?;
        let (red, pivots) = aug.row_echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(&self.field, n, n, |i, j| red.get(i, n + j)))
    }

    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows {
            return Err(Error::Dimension("hstack with different row counts".into()));
        }
        Ok(Matrix::from_fn(
            &self.field,
            self.rows,
            self.cols + rhs.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j)
                } else {
                    rhs.get(i, j - self.cols)
                }
            },
        ))
    }

    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.cols {
            return Err(Error::Dimension(
                "vstack with different column counts".into(),
            ));
        }
        Ok(Matrix::from_fn(
            &self.field,
            self.rows + rhs.rows,
            self.cols,
            |i, j| {
                if i < self.rows {
                    self.get(i, j)
                } else {
                    rhs.get(i - self.rows, j)
                }
            },
        ))
    }

    /// Block-diagonal matrix with the given square or rectangular blocks.
    pub fn block_diag(field: &Field, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Element encodings row by row.
    pub fn to_values(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).value()).collect())
            .collect()
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && self.field.same(&other.field)
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_values())
    }
}

/// All invertible n x n matrices over a field, by exhaustive filtering.
pub fn general_linear_group(field: &Field, n: usize) -> Vec<Matrix> {
    let q = field.size() as u64;
    let total = q
        .checked_pow((n * n) as u32)
        .expect("enumeration too large");
    (0..total)
        .filter_map(|mut code| {
            let data = (0..n * n)
                .map(|_| {
                    let e = Elem((code % q) as u32);
                    code /= q;
                    e
                })
                .collect();
            let m = Matrix::from_elems(field, n, n, data);
            m.is_invertible().then_some(m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_det() {
        let f3 = Field::prime(3).unwrap();
        let m = Matrix::from_values(&f3, 2, 2, &[1, 2, 2, 1]);
        // det = 1 - 4 = -3 = 0 mod 3
        assert_eq!(m.det(), Elem::ZERO);
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_values(&f3, 2, 2, &[0, 1, 1, 0]);
        assert_eq!(m.det(), f3.from_int(-1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&f3, 2));
        assert_eq!(
            Matrix::from_values(&f3, 2, 2, &[1, 2, 2, 1])
                .inverse()
                .unwrap_err(),
            Error::Singular
        );
    }

    #[test]
    fn gl_sizes() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(general_linear_group(&f2, 1).len(), 1);
        assert_eq!(general_linear_group(&f2, 2).len(), 6);
        let f3 = Field::prime(3).unwrap();
        assert_eq!(general_linear_group(&f3, 2).len(), 48);
    }

    #[test]
    fn empty_matrices() {
        let f2 = Field::prime(2).unwrap();
        let e = Matrix::zeros(&f2, 0, 0);
        assert_eq!(e.det(), Elem::ONE);
        assert_eq!(e.rank(), 0);
    }
}
