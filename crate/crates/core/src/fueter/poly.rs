use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Quaternion, QuaternionRing};
use crate::matrix::Matrix;

/// Polynomial in `V` real variables with quaternion coefficients written on
/// the right of each monomial: `Σ x^k c_k`.
///
/// Exact zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct QPoly<const V: usize, Q = Quaternion> {
    terms: BTreeMap<[u32; V], Q>,
}

/// Polynomial in `(x₁, x₂, x₃)`.
pub type QPolynomial3 = QPoly<3>;
/// Polynomial in `(x₀, x₁, x₂, x₃)`.
pub type QPolynomial4 = QPoly<4>;

impl<const V: usize, Q: QuaternionRing> QPoly<V, Q> {
    pub fn zero() -> Self {
        QPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial([0; V], c)
    }

    /// `x^exps · c`.
    pub fn monomial(exps: [u32; V], c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// The coordinate `x_i`, `i ∈ 0..V` (position in the exponent array).
    pub fn variable(i: usize) -> Self {
        let mut exps = [0; V];
        exps[i] = 1;
        Self::monomial(exps, Q::one())
    }

    /// Sums repeated exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; V], Q)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: [u32; V], c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(entry) => {
                *entry = entry.clone() + c;
                if entry.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; V], &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32; V]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `0` for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        QPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Pointwise product. Real monomials commute; coefficients multiply in
    /// order.
    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, u32::MAX)
    }

    /// Pointwise product keeping total degree `≤ degree`.
    pub fn mul_truncated(&self, other: &Self, degree: u32) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                let db: u32 = eb.iter().sum();
                if da.saturating_add(db) > degree {
                    continue;
                }
                let mut e = *ea;
                for (x, y) in e.iter_mut().zip(eb) {
                    *x += y;
                }
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// `q · p`.
    pub fn left_mul(&self, q: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, q.clone() * c.clone())))
    }

    /// `p · q`.
    pub fn right_mul(&self, q: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone() * q.clone())))
    }

    /// `∂p/∂x_i`.
    pub fn partial(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut d = *e;
            d[i] -= 1;
            (d, Q::from_i64(e[i] as i64) * c.clone())
        }))
    }

    /// Drops monomials of total degree above `degree`.
    pub fn truncate(&self, degree: u32) -> Self {
        QPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= degree)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Largest component-wise coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs_coeff()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn map_coeffs<R: QuaternionRing>(&self, f: impl Fn(&Q) -> R) -> QPoly<V, R> {
        QPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }
}

impl<const V: usize, Q: QuaternionRing> Default for QPoly<V, Q> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const V: usize> QPoly<V> {
    pub fn eval(&self, x: &[f64; V]) -> Quaternion {
        self.terms.iter().fold(Quaternion::ZERO, |acc, (e, c)| {
            let m: f64 = e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product();
            acc + c.scale(m)
        })
    }
}

impl<const V: usize, Q: fmt::Debug> fmt::Debug for QPoly<V, Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Term {
    exps: Vec<u32>,
    value: Quaternion,
}

impl<const V: usize> Serialize for QPoly<V> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self.terms.iter().map(|(e, c)| Term { exps: e.to_vec(), value: *c }).collect();
        terms.serialize(s)
    }
}

impl<'de, const V: usize> Deserialize<'de> for QPoly<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        let mut p = Self::zero();
        for t in terms {
            let exps: [u32; V] = t
                .exps
                .as_slice()
                .try_into()
                .map_err(|_| D::Error::custom(format!("expected {V} exponents, got {}", t.exps.len())))?;
            if t.value.0.iter().any(|x| !x.is_finite()) {
                return Err(D::Error::custom("non-finite coefficient"));
            }
            p.add_term(exps, t.value);
        }
        Ok(p)
    }
}

/// Matrix of 4-variable quaternionic polynomials, combined with the CK
/// product.
#[derive(Clone, PartialEq, Debug)]
pub struct QPolyMatrix<Q = Quaternion> {
    rows: usize,
    cols: usize,
    data: Vec<QPoly<4, Q>>,
}

impl<Q: QuaternionRing> QPolyMatrix<Q> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QPolyMatrix { rows, cols, data: vec![QPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, QPoly::constant(Q::one()));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> QPoly<4, Q>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QPolyMatrix { rows, cols, data }
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

    pub fn get(&self, i: usize, j: usize) -> &QPoly<4, Q> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: QPoly<4, Q>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub(other.get(i, j)))
    }

    /// Constant matrix.
    pub fn constant(m: &Matrix<Q>) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| QPoly::constant(m.get(i, j).clone()))
    }

    pub fn truncate(&self, degree: u32) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).truncate(degree))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }
}
