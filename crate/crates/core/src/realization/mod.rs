//! Realizations `W(z) = D + C(I_N − zA)^{-1} zB` with
//! `zA = Σ_k z_k A_k` and `zB = Σ_k z_k B_k`.
//!
//! The same data read through the Wick product gives
//! `D + C(I − Σ H_k A_k)^{-◊} ◊ Σ H_k B_k`, and through the CK product
//! `D + C∘(I − ζA)^{-∘}∘ζB`; all three share one coefficient map, so
//! [`Realization::to_series`] only changes the basis tag.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multiindex::MultiIndex;
use crate::scalar::Scalar;
use crate::series::{Basis, TruncatedSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct Realization<S> {
    d: Matrix<S>,
    c: Matrix<S>,
    a: Vec<Matrix<S>>,
    b: Vec<Matrix<S>>,
}

/// Value of a realization at a point, with the Frobenius condition number
/// of the pencil `I − zA` that was solved.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation<S> {
    pub value: Matrix<S>,
    pub condition: f64,
}

impl<S: Scalar> Realization<S> {
    /// `d`: p×q, `c`: p×N, each `a[k]`: N×N, each `b[k]`: N×q.
    pub fn new(d: Matrix<S>, c: Matrix<S>, a: Vec<Matrix<S>>, b: Vec<Matrix<S>>) -> Result<Self> {
        let (p, q) = d.shape();
        let n = c.cols();
        if c.rows() != p {
            return Err(Error::Shape(format!("C has {} rows, D has {p}", c.rows())));
        }
        if a.len() != b.len() {
            return Err(Error::Shape(format!("{} A matrices but {} B matrices", a.len(), b.len())));
        }
        for (k, ak) in a.iter().enumerate() {
            if ak.shape() != (n, n) {
                return Err(Error::Shape(format!("A_{} is {:?}, expected {n}x{n}", k + 1, ak.shape())));
            }
        }
        for (k, bk) in b.iter().enumerate() {
            if bk.shape() != (n, q) {
                return Err(Error::Shape(format!("B_{} is {:?}, expected {n}x{q}", k + 1, bk.shape())));
            }
        }
        Ok(Realization { d, c, a, b })
    }

    /// The constant function `D` (state dimension 0, no variables).
    pub fn constant(d: Matrix<S>) -> Self {
        let p = d.rows();
        Realization { d, c: Matrix::zeros(p, 0), a: Vec::new(), b: Vec::new() }
    }

    pub fn d(&self) -> &Matrix<S> {
        &self.d
    }

    pub fn c(&self) -> &Matrix<S> {
        &self.c
    }

    pub fn a(&self) -> &[Matrix<S>] {
        &self.a
    }

    pub fn b(&self) -> &[Matrix<S>] {
        &self.b
    }

    /// Output shape `(p, q)`.
    pub fn shape(&self) -> (usize, usize) {
        self.d.shape()
    }

    pub fn state_dim(&self) -> usize {
        self.c.cols()
    }

    pub fn num_vars(&self) -> usize {
        self.a.len()
    }

    /// Extends the variable list with zero matrices up to `m` variables.
    pub fn pad_vars(&self, m: usize) -> Self {
        let n = self.state_dim();
        let q = self.shape().1;
        let mut out = self.clone();
        while out.a.len() < m {
            out.a.push(Matrix::zeros(n, n));
            out.b.push(Matrix::zeros(n, q));
        }
        out
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Realization<T> {
        let conv = |m: &Matrix<S>| Matrix::from_fn(m.rows(), m.cols(), |i, j| f(m.get(i, j)));
        Realization {
            d: conv(&self.d),
            c: conv(&self.c),
            a: self.a.iter().map(conv).collect(),
            b: self.b.iter().map(conv).collect(),
        }
    }

    // Σ_k z_k M_k as a homogeneous degree-one series.
    fn linear_series(mats: &[Matrix<S>], shape: (usize, usize), degree: u32) -> TruncatedSeries<S> {
        let m = mats.len() as u32;
        if degree == 0 {
            return TruncatedSeries::zero(Basis::Monomial, 0, m, shape);
        }
        TruncatedSeries::from_terms(
            Basis::Monomial,
            degree,
            m,
            shape,
            mats.iter().enumerate().map(|(k, mk)| (MultiIndex::unit(k as u32 + 1), mk.clone())),
        )
        .expect("unit indices fit the truncation")
    }

    /// `(I − zA)^{-1}` as an N×N series.
    fn resolvent_series(&self, degree: u32) -> Result<TruncatedSeries<S>> {
        let n = self.state_dim();
        let za = Self::linear_series(&self.a, (n, n), degree);
        TruncatedSeries::identity(Basis::Monomial, degree, self.num_vars() as u32, n).sub(&za)?.wick_inv()
    }

    /// Series expansion to total degree `degree`, tagged with `basis`.
    pub fn to_series(&self, degree: u32, basis: Basis) -> Result<TruncatedSeries<S>> {
        let (p, q) = self.shape();
        let n = self.state_dim();
        let m = self.num_vars() as u32;
        let zb = Self::linear_series(&self.b, (n, q), degree);
        let tail = self.resolvent_series(degree)?.wick_mul(&zb)?;
        let out = TruncatedSeries::constant(Basis::Monomial, degree, m, self.c.clone())
            .wick_mul(&tail)?
            .add(&TruncatedSeries::constant(Basis::Monomial, degree, m, self.d.clone()))?;
        debug_assert_eq!(out.shape(), (p, q));
        Ok(out.with_basis(basis))
    }

    /// Direct evaluation by solving `(I − zA) X = zB`. Coordinates beyond
    /// the variable count are ignored; missing ones are zero.
    pub fn eval(&self, z: &[S]) -> Result<Evaluation<S>> {
        let n = self.state_dim();
        let q = self.shape().1;
        let mut pencil = Matrix::identity(n);
        let mut rhs = Matrix::zeros(n, q);
        for (k, zk) in z.iter().enumerate().take(self.num_vars()) {
            if zk.is_zero() {
                continue;
            }
            pencil = pencil.sub(&self.a[k].scale_left(zk));
            rhs.add_assign(&self.b[k].scale_left(zk));
        }
        let inv = pencil.inverse().map_err(|_| Error::Singular("I - zA is singular at this point".into()))?;
        let condition = if n == 0 { 1.0 } else { pencil.frobenius() * inv.frobenius() };
        let value = self.d.add(&self.c.mul(&inv.mul(&rhs)));
        Ok(Evaluation { value, condition })
    }

    /// Cascade `W₁ W₂` by the block construction
    /// `A_ℓ = [[A¹_ℓ, B¹_ℓC²], [0, A²_ℓ]]`, `B_ℓ = [B¹_ℓD²; B²_ℓ]`,
    /// `C = [C¹, D¹C²]`, `D = D¹D²`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let (p1, q1) = self.shape();
        let (p2, q2) = other.shape();
        if q1 != p2 {
            return Err(Error::Shape(format!("cannot cascade {p1}x{q1} with {p2}x{q2}")));
        }
        let m = self.num_vars().max(other.num_vars());
        let (r1, r2) = (self.pad_vars(m), other.pad_vars(m));
        let (n1, n2) = (r1.state_dim(), r2.state_dim());
        let mut a = Vec::with_capacity(m);
        let mut b = Vec::with_capacity(m);
        for l in 0..m {
            let top = r1.a[l].hstack(&r1.b[l].mul(&r2.c));
            let bottom = Matrix::zeros(n2, n1).hstack(&r2.a[l]);
            a.push(top.vstack(&bottom));
            b.push(r1.b[l].mul(&r2.d).vstack(&r2.b[l]));
        }
        let c = r1.c.hstack(&r1.d.mul(&r2.c));
        let d = r1.d.mul(&r2.d);
        debug_assert_eq!(d.shape(), (p1, q2));
        Realization::new(d, c, a, b)
    }

    /// `W₁ + W₂` by block-diagonal concatenation of the state spaces.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!("cannot add {:?} and {:?} realizations", self.shape(), other.shape())));
        }
        let m = self.num_vars().max(other.num_vars());
        let (r1, r2) = (self.pad_vars(m), other.pad_vars(m));
        let (n1, n2) = (r1.state_dim(), r2.state_dim());
        let mut a = Vec::with_capacity(m);
        let mut b = Vec::with_capacity(m);
        for l in 0..m {
            let top = r1.a[l].hstack(&Matrix::zeros(n1, n2));
            let bottom = Matrix::zeros(n2, n1).hstack(&r2.a[l]);
            a.push(top.vstack(&bottom));
            b.push(r1.b[l].vstack(&r2.b[l]));
        }
        Realization::new(r1.d.add(&r2.d), r1.c.hstack(&r2.c), a, b)
    }

    /// `W^{-1} = D^{-1} − D^{-1}C(I − z(A − BD^{-1}C))^{-1} zBD^{-1}`.
    pub fn inverse(&self) -> Result<Self> {
        let (p, q) = self.shape();
        if p != q {
            return Err(Error::Shape(format!("cannot invert a {p}x{q} realization")));
        }
        let d_inv = self.d.inverse().map_err(|_| Error::Singular("feedthrough D is not invertible".into()))?;
        let d_inv_c = d_inv.mul(&self.c);
        let a = self.a.iter().zip(&self.b).map(|(ak, bk)| ak.sub(&bk.mul(&d_inv_c))).collect();
        let b = self.b.iter().map(|bk| bk.mul(&d_inv)).collect();
        Realization::new(d_inv.clone(), d_inv_c.neg(), a, b)
    }

    /// `C(I − zA)^{-1} f` for an N×r injection `f`.
    pub fn state_output_series(&self, f: &Matrix<S>, degree: u32) -> Result<TruncatedSeries<S>> {
        let n = self.state_dim();
        if f.rows() != n {
            return Err(Error::Shape(format!("injection has {} rows, state dimension is {n}", f.rows())));
        }
        let m = self.num_vars() as u32;
        let c = TruncatedSeries::constant(Basis::Monomial, degree, m, self.c.clone());
        let f = TruncatedSeries::constant(Basis::Monomial, degree, m, f.clone());
        c.wick_mul(&self.resolvent_series(degree)?)?.wick_mul(&f)
    }

    /// `R_k[C(I − zA)^{-1} f] − C(I − zA)^{-1} A_k f`, truncated at
    /// `degree − 1`.
    ///
    /// Vanishes when the `A_j` commute. With non-commuting `A_j` the
    /// residual is generally nonzero. A variable `k` beyond the realization
    /// has `A_k = 0`.
    pub fn leibenzon_identity_residual(&self, f: &Matrix<S>, k: u32, degree: u32) -> Result<TruncatedSeries<S>> {
        if k == 0 {
            return Err(Error::Invalid("variables are 1-based".into()));
        }
        let lhs = self.state_output_series(f, degree)?.leibenzon(k);
        let n = self.state_dim();
        let ak_f = match self.a.get(k as usize - 1) {
            Some(ak) => ak.mul(f),
            None => Matrix::zeros(n, f.cols()),
        };
        let rhs = self.state_output_series(&ak_f, degree)?;
        lhs.sub(&rhs).map(|r| r.truncate(degree.saturating_sub(1)))
    }

    /// True when the series of `self` agrees with `series` on every
    /// coefficient (same basis and truncation) within `tol`.
    pub fn is_witness_for(&self, series: &TruncatedSeries<S>, tol: f64) -> bool {
        if series.shape() != self.shape() {
            return false;
        }
        match self.to_series(series.degree(), series.basis()) {
            Ok(own) => own.max_abs_diff(series) <= tol,
            Err(_) => false,
        }
    }
}

/// Whether `r` realizes the truncated series `f`.
pub fn is_rational_witness<S: Scalar>(f: &TruncatedSeries<S>, r: &Realization<S>, tol: f64) -> bool {
    r.is_witness_for(f, tol)
}

#[cfg(test)]
mod tests;
