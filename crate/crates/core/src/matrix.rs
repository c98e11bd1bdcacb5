//! Small dense matrices over a [`Scalar`] ring.
//!
//! Series coefficients and realization data are all `Matrix<S>`; scalar
//! series are 1×1. Arithmetic keeps the ring order (left factor on the
//! left), which matters for quaternion entries.

use crate::error::{Error, Result};
use crate::scalar::{Magnitude, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    /// 1×1 matrix holding `s`.
    pub fn scalar(s: S) -> Self {
        Matrix { rows: 1, cols: 1, data: vec![s] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; `cols` fixes the width when there
    /// are no rows or rows are empty.
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// The single entry of a 1×1 matrix.
    pub fn as_scalar(&self) -> Option<&S> {
        (self.rows == 1 && self.cols == 1).then(|| &self.data[0])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Panics on shape mismatch; callers validate shapes first.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix add shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sub shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.shape(), other.shape(), "matrix add shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = a.clone() + b.clone();
        }
    }

    /// Ordered product `self · other`. Panics if inner dimensions differ.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix mul inner dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        self.mul_add_into(other, &mut out);
        out
    }

    /// `acc += self · other`.
    pub fn mul_add_into(&self, other: &Self, acc: &mut Self) {
        assert_eq!(self.cols, other.rows, "matrix mul inner dimension mismatch");
        assert_eq!(acc.shape(), (self.rows, other.cols), "accumulator shape mismatch");
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut acc.data[i * other.cols + j];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
    }

    /// `s · self` (entrywise left multiplication).
    pub fn scale_left(&self, s: &S) -> Self {
        self.map(|a| s.clone() * a.clone())
    }

    /// `self · s` (entrywise right multiplication).
    pub fn scale_right(&self, s: &S) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale_left(&S::from_rational(r))
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Squared Frobenius norm, exact for exact rings.
    pub fn frobenius_sqr(&self) -> S::Magnitude {
        self.data.iter().fold(<S::Magnitude as Magnitude>::zero(), |acc, x| acc + x.norm_sqr())
    }

    pub fn frobenius(&self) -> f64 {
        self.frobenius_sqr().to_f64().sqrt()
    }

    /// Largest entrywise `|a - b|`. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "matrix compare shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a.clone() - b.clone()).abs()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(S::abs).fold(0.0, f64::max)
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Inverse by Gauss–Jordan elimination with partial pivoting.
    ///
    /// Only row operations (left multiplications) are used, so the result is
    /// the two-sided inverse over non-commutative rings as well.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape(format!("cannot invert a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .max_by(|&r, &s| a.get(r, col).abs().total_cmp(&a.get(s, col).abs()));
            let Some(p) = pivot else {
                return Err(Error::Singular(format!("no pivot in column {col}")));
            };
            if p != col {
                a.swap_rows(p, col);
                inv.swap_rows(p, col);
            }
            let pinv = a.get(col, col).inv().ok_or_else(|| Error::Singular(format!("zero pivot in column {col}")))?;
            a.scale_row_left(col, &pinv);
            inv.scale_row_left(col, &pinv);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                a.sub_row_multiple(r, col, &factor);
                inv.sub_row_multiple(r, col, &factor);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r: usize, s: usize) {
        for j in 0..self.cols {
            self.data.swap(r * self.cols + j, s * self.cols + j);
        }
    }

    fn scale_row_left(&mut self, r: usize, s: &S) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = s.clone() * self.data[idx].clone();
        }
    }

    /// row_r -= factor · row_src
    fn sub_row_multiple(&mut self, r: usize, src: usize, factor: &S) {
        for j in 0..self.cols {
            let v = factor.clone() * self.data[src * self.cols + j].clone();
            let idx = r * self.cols + j;
            self.data[idx] = self.data[idx].clone() - v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn rat(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| ratio(v, 1)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn exact_inverse_round_trips() {
        let a = rat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert_eq!(inv.mul(&a), Matrix::identity(3));
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = rat(&[&[1, 2], &[2, 4]]);
        assert!(matches!(a.inverse(), Err(Error::Singular(_))));
    }

    #[test]
    fn pivoting_handles_zero_diagonal() {
        let a = rat(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.inverse().unwrap(), a);
    }

    #[test]
    fn ragged_rows_rejected() {
        let r = Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0]], 2);
        assert!(matches!(r, Err(Error::Shape(_))));
    }

    #[test]
    fn stacking_shapes() {
        let a = rat(&[&[1, 2]]);
        let b = rat(&[&[3, 4]]);
        assert_eq!(a.vstack(&b), rat(&[&[1, 2], &[3, 4]]));
        assert_eq!(a.hstack(&b), rat(&[&[1, 2, 3, 4]]));
    }
}
