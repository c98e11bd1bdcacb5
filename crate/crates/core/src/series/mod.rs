//! Truncated formal power series over matrix coefficients.
//!
//! One type covers chaos expansions `Σ c_α H_α`, their Hermite transforms
//! `Σ c_α z^α` and Fueter expansions `Σ ζ^α f_α`: all three share the
//! convolution product `(F ◊ G)_α = Σ_{β≤α} F_β G_{α−β}` and differ only in
//! the [`Basis`] tag. Series are truncated by total degree and carry a hard
//! cap on variable positions.

mod kq;
mod leibenzon;
mod norms;

pub use kq::{kq_membership, KqMembership};
pub use norms::{NormReport, NormRoots, Space};

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multiindex::{enumerate, MultiIndex};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `H_α`, the white noise chaos basis.
    Chaos,
    /// `z^α`.
    Monomial,
    /// Fueter monomials `ζ^α`.
    Fueter,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    basis: Basis,
    degree: u32,
    max_var: u32,
    shape: (usize, usize),
    terms: BTreeMap<MultiIndex, Matrix<S>>,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn zero(basis: Basis, degree: u32, max_var: u32, shape: (usize, usize)) -> Self {
        TruncatedSeries { basis, degree, max_var, shape, terms: BTreeMap::new() }
    }

    pub fn constant(basis: Basis, degree: u32, max_var: u32, value: Matrix<S>) -> Self {
        let mut s = Self::zero(basis, degree, max_var, value.shape());
        if !value.is_zero() {
            s.terms.insert(MultiIndex::zero(), value);
        }
        s
    }

    pub fn identity(basis: Basis, degree: u32, max_var: u32, n: usize) -> Self {
        Self::constant(basis, degree, max_var, Matrix::identity(n))
    }

    /// Builds a series from `(α, coefficient)` pairs, summing repeats.
    ///
    /// Terms beyond the truncation degree or outside `{1..max_var}` are
    /// rejected, as are coefficients of the wrong shape.
    pub fn from_terms(
        basis: Basis,
        degree: u32,
        max_var: u32,
        shape: (usize, usize),
        terms: impl IntoIterator<Item = (MultiIndex, Matrix<S>)>,
    ) -> Result<Self> {
        let mut s = Self::zero(basis, degree, max_var, shape);
        for (alpha, c) in terms {
            s.check_key(&alpha)?;
            if c.shape() != shape {
                return Err(Error::Shape(format!(
                    "coefficient at {alpha} is {:?}, series shape is {shape:?}",
                    c.shape()
                )));
            }
            s.accumulate(alpha, &c);
        }
        Ok(s)
    }

    /// Scalar (1×1) series from `(α, value)` pairs.
    pub fn from_scalars(
        basis: Basis,
        degree: u32,
        max_var: u32,
        terms: impl IntoIterator<Item = (MultiIndex, S)>,
    ) -> Result<Self> {
        Self::from_terms(basis, degree, max_var, (1, 1), terms.into_iter().map(|(a, v)| (a, Matrix::scalar(v))))
    }

    fn check_key(&self, alpha: &MultiIndex) -> Result<()> {
        if alpha.weight() > self.degree as u64 {
            return Err(Error::Invalid(format!("term {alpha} exceeds truncation degree {}", self.degree)));
        }
        if alpha.max_position() > self.max_var {
            return Err(Error::Invalid(format!("term {alpha} uses a variable beyond max_var {}", self.max_var)));
        }
        Ok(())
    }

    // Adds `c` at `alpha`, keeping the map free of exact zeros.
    fn accumulate(&mut self, alpha: MultiIndex, c: &Matrix<S>) {
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c.clone());
                }
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn max_var(&self) -> u32 {
        self.max_var
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored terms in graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Matrix<S>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Option<&Matrix<S>> {
        self.terms.get(alpha)
    }

    pub fn coeff_or_zero(&self, alpha: &MultiIndex) -> Matrix<S> {
        self.terms.get(alpha).cloned().unwrap_or_else(|| Matrix::zeros(self.shape.0, self.shape.1))
    }

    pub fn constant_term(&self) -> Matrix<S> {
        self.coeff_or_zero(&MultiIndex::zero())
    }

    /// Scalar coefficient of a 1×1 series (zero when absent).
    pub fn scalar_coeff(&self, alpha: &MultiIndex) -> S {
        self.terms.get(alpha).and_then(|m| m.as_scalar().cloned()).unwrap_or_else(S::zero)
    }

    /// Same coefficients under another basis tag.
    pub fn with_basis(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }

    /// Drops terms above `degree` and lowers the truncation accordingly.
    /// Never raises the truncation degree.
    pub fn truncate(&self, degree: u32) -> Self {
        let degree = degree.min(self.degree);
        let terms = self
            .terms
            .iter()
            .filter(|(a, _)| a.weight() <= degree as u64)
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        TruncatedSeries { terms, degree, ..self.clone_header() }
    }

    fn clone_header(&self) -> Self {
        TruncatedSeries {
            basis: self.basis,
            degree: self.degree,
            max_var: self.max_var,
            shape: self.shape,
            terms: BTreeMap::new(),
        }
    }

    /// Applies `f` to every scalar entry (e.g. real → complex).
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TruncatedSeries<T> {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| {
                let m = Matrix::from_fn(c.rows(), c.cols(), |i, j| f(c.get(i, j)));
                (a.clone(), m)
            })
            .filter(|(_, m)| !m.is_zero())
            .collect();
        TruncatedSeries { basis: self.basis, degree: self.degree, max_var: self.max_var, shape: self.shape, terms }
    }

    fn require_basis(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::Basis { expected: self.basis, found: other.basis });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_basis(other)?;
        if self.shape != other.shape {
            return Err(Error::Shape(format!("cannot add {:?} and {:?} series", self.shape, other.shape)));
        }
        let degree = self.degree.min(other.degree);
        let mut out = Self::zero(self.basis, degree, self.max_var.max(other.max_var), self.shape);
        for (a, c) in self.terms.iter().chain(other.terms.iter()) {
            if a.weight() <= degree as u64 {
                out.accumulate(a.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(a, c)| (a.clone(), c.neg())).collect();
        TruncatedSeries { terms, ..self.clone_header() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Right scalar multiple `F·λ` (coefficientwise `c_α λ`).
    pub fn scale(&self, lambda: &S) -> Self {
        let terms =
            self.terms.iter().map(|(a, c)| (a.clone(), c.scale_right(lambda))).filter(|(_, c)| !c.is_zero()).collect();
        TruncatedSeries { terms, ..self.clone_header() }
    }

    /// Wick (Cauchy, CK) product: `(F ◊ G)_α = Σ_{β≤α} F_β G_{α−β}`,
    /// `F` on the left, truncated at the smaller degree.
    pub fn wick_mul(&self, other: &Self) -> Result<Self> {
        self.require_basis(other)?;
        let (p, r) = self.shape;
        let (r2, q) = other.shape;
        if r != r2 {
            return Err(Error::Shape(format!("cannot multiply {:?} by {:?} series", self.shape, other.shape)));
        }
        let degree = self.degree.min(other.degree) as u64;
        let mut acc: BTreeMap<MultiIndex, Matrix<S>> = BTreeMap::new();
        for (a, fa) in &self.terms {
            let wa = a.weight();
            if wa > degree {
                break;
            }
            for (b, gb) in &other.terms {
                if wa + b.weight() > degree {
                    break;
                }
                let slot = acc.entry(a.add(b)).or_insert_with(|| Matrix::zeros(p, q));
                fa.mul_add_into(gb, slot);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries {
            basis: self.basis,
            degree: degree as u32,
            max_var: self.max_var.max(other.max_var),
            shape: (p, q),
            terms: acc,
        })
    }

    /// `F^{n◊}`; `F^{0◊}` is the identity.
    pub fn wick_pow(&self, n: u32) -> Result<Self> {
        if self.shape.0 != self.shape.1 {
            return Err(Error::Shape(format!("power of a non-square {:?} series", self.shape)));
        }
        let mut out = Self::identity(self.basis, self.degree, self.max_var, self.shape.0);
        for _ in 0..n {
            out = out.wick_mul(self)?;
        }
        Ok(out)
    }

    /// Wick inverse up to the truncation degree.
    ///
    /// With `X_0 = F_0^{-1}`, each further coefficient is solved from lower
    /// weights: `X_α = −F_0^{-1} Σ_{0≠β≤α} F_β X_{α−β}`. This equals the
    /// truncated von Neumann series of `(I − G)^{-◊} F_0^{-1}` with
    /// `G = I − F_0^{-1}F`.
    pub fn wick_inv(&self) -> Result<Self> {
        let (n, m) = self.shape;
        if n != m {
            return Err(Error::Shape(format!("inverse of a non-square {:?} series", self.shape)));
        }
        let f0_inv = self
            .constant_term()
            .inverse()
            .map_err(|_| Error::Singular("constant coefficient is not invertible".into()))?;
        let neg_f0_inv = f0_inv.neg();
        let vars: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|a| a.entries().iter().map(|&(p, _)| p))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let higher: Vec<(&MultiIndex, &Matrix<S>)> = self.terms.iter().filter(|(a, _)| !a.is_zero()).collect();

        let mut x: BTreeMap<MultiIndex, Matrix<S>> = BTreeMap::new();
        x.insert(MultiIndex::zero(), f0_inv);
        for dense in enumerate(self.degree, vars.len() as u32).into_iter().skip(1) {
            // relabel dense positions onto the variables actually present
            let alpha = MultiIndex::from_pairs(dense.entries().iter().map(|&(i, e)| (vars[i as usize - 1], e)))?;
            let mut sum = Matrix::zeros(n, n);
            for &(beta, f_beta) in &higher {
                if beta.weight() > alpha.weight() {
                    break;
                }
                if let Some(rest) = alpha.checked_sub(beta) {
                    if let Some(x_rest) = x.get(&rest) {
                        f_beta.mul_add_into(x_rest, &mut sum);
                    }
                }
            }
            if !sum.is_zero() {
                let coeff = neg_f0_inv.mul(&sum);
                if !coeff.is_zero() {
                    x.insert(alpha, coeff);
                }
            }
        }
        x.retain(|_, c| !c.is_zero());
        Ok(TruncatedSeries { terms: x, ..self.clone_header() })
    }

    /// Hermite transform `I(H_α) = z^α`: chaos → monomial.
    pub fn hermite_transform(&self) -> Result<Self> {
        if self.basis != Basis::Chaos {
            return Err(Error::Basis { expected: Basis::Chaos, found: self.basis });
        }
        Ok(self.clone().with_basis(Basis::Monomial))
    }

    /// Inverse Hermite transform: monomial → chaos.
    pub fn inverse_hermite(&self) -> Result<Self> {
        if self.basis != Basis::Monomial {
            return Err(Error::Basis { expected: Basis::Monomial, found: self.basis });
        }
        Ok(self.clone().with_basis(Basis::Chaos))
    }

    /// `Σ z^α c_α` over the stored terms; `z[k-1]` is the value of `z_k` and
    /// missing trailing coordinates are zero.
    pub fn evaluate(&self, z: &[S]) -> Result<Matrix<S>> {
        if let Some(k) = z.iter().skip(self.max_var as usize).position(|v| !v.is_zero()) {
            return Err(Error::Invalid(format!(
                "point has a nonzero coordinate z_{} beyond max_var {}",
                self.max_var as usize + k + 1,
                self.max_var
            )));
        }
        let mut out = Matrix::zeros(self.shape.0, self.shape.1);
        'terms: for (alpha, c) in &self.terms {
            let mut zpow = S::one();
            for &(p, e) in alpha.entries() {
                let Some(v) = z.get(p as usize - 1) else { continue 'terms };
                if v.is_zero() {
                    continue 'terms;
                }
                for _ in 0..e {
                    zpow = zpow * v.clone();
                }
            }
            out.add_assign(&c.scale_left(&zpow));
        }
        Ok(out)
    }

    /// `z_k · F`: shifts every index by `e_k` and raises the truncation by
    /// one.
    pub fn mul_by_variable(&self, k: u32) -> Self {
        let terms = self.terms.iter().map(|(a, c)| (a.increment(k), c.clone())).collect();
        TruncatedSeries {
            basis: self.basis,
            degree: self.degree + 1,
            max_var: self.max_var.max(k),
            shape: self.shape,
            terms,
        }
    }

    /// Largest entrywise difference over the union of stored indices.
    /// Panics if shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape, other.shape, "series compare shape mismatch");
        let keys: BTreeSet<&MultiIndex> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().map(|a| self.coeff_or_zero(a).max_abs_diff(&other.coeff_or_zero(a))).fold(0.0, f64::max)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(Matrix::max_abs).fold(0.0, f64::max)
    }
}
