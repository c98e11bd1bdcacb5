//! Reproducing kernels on the unit ball of ℓ₂ and multiplier checks.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::realization::Realization;
use crate::series::TruncatedSeries;

/// Default PSD tolerance on the smallest Gram eigenvalue.
pub const PSD_TOLERANCE: f64 = -1e-10;

const POLE_EPS: f64 = 1e-14;

/// Finitely supported point of ℓ₂(ℂ) with 1-based coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Point {
    entries: Vec<(u32, Complex64)>,
    norm_sqr: f64,
}

impl L2Point {
    pub fn zero() -> Self {
        L2Point { entries: Vec::new(), norm_sqr: 0.0 }
    }

    /// Sums repeated positions and drops zeros.
    pub fn new(pairs: impl IntoIterator<Item = (u32, Complex64)>) -> Result<Self> {
        let mut entries: Vec<(u32, Complex64)> = Vec::new();
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort_by_key(|&(k, _)| k);
        for (k, v) in pairs {
            if k == 0 {
                return Err(Error::Invalid("coordinates are 1-based".into()));
            }
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Invalid(format!("non-finite coordinate {k}")));
            }
            match entries.last_mut() {
                Some((last, acc)) if *last == k => *acc += v,
                _ => entries.push((k, v)),
            }
        }
        entries.retain(|(_, v)| *v != Complex64::new(0.0, 0.0));
        Ok(Self::from_sorted(entries))
    }

    fn from_sorted(entries: Vec<(u32, Complex64)>) -> Self {
        let norm_sqr = entries.iter().map(|(_, v)| v.norm_sqr()).sum();
        L2Point { entries, norm_sqr }
    }

    /// `dense[i]` is coordinate `i + 1`.
    pub fn from_dense(dense: &[Complex64]) -> Self {
        Self::new(dense.iter().enumerate().map(|(i, v)| (i as u32 + 1, *v))).expect("finite dense point")
    }

    pub fn to_dense(&self, len: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); len];
        for &(k, x) in &self.entries {
            if (k as usize) <= len {
                v[k as usize - 1] = x;
            }
        }
        v
    }

    pub fn entries(&self) -> &[(u32, Complex64)] {
        &self.entries
    }

    pub fn get(&self, k: u32) -> Complex64 {
        self.entries.binary_search_by_key(&k, |&(p, _)| p).map(|i| self.entries[i].1).unwrap_or_default()
    }

    /// `Σ |z_k|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.norm_sqr
    }

    pub fn max_position(&self) -> u32 {
        self.entries.last().map_or(0, |&(k, _)| k)
    }

    /// `⟨z, w⟩ = Σ z_k w̄_k`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let (mut i, mut j) = (0, 0);
        let mut acc = Complex64::new(0.0, 0.0);
        while i < self.entries.len() && j < other.entries.len() {
            let (p, x) = self.entries[i];
            let (q, y) = other.entries[j];
            match p.cmp(&q) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += x * y.conj();
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// `α z + β w`.
    pub fn combine(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Self {
        let mut pairs: Vec<(u32, Complex64)> = self.entries.iter().map(|&(k, v)| (k, alpha * v)).collect();
        pairs.extend(other.entries.iter().map(|&(k, v)| (k, beta * v)));
        Self::new(pairs).expect("finite combination")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(Complex64::new(1.0, 0.0), other, Complex64::new(-1.0, 0.0))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.combine(s, &Self::zero(), Complex64::new(0.0, 0.0))
    }
}

fn one_minus(ip: Complex64, what: &str) -> Result<Complex64> {
    let d = Complex64::new(1.0, 0.0) - ip;
    if d.norm() <= POLE_EPS {
        return Err(Error::Pole(format!("{what}: <z, w> = 1")));
    }
    Ok(d)
}

/// `1 / (1 − ⟨z, w⟩)`.
pub fn arveson_kernel(z: &L2Point, w: &L2Point) -> Result<Complex64> {
    Ok(one_minus(z.inner(w), "Arveson kernel")?.inv())
}

/// `exp⟨z, w⟩`.
pub fn fock_kernel(z: &L2Point, w: &L2Point) -> Complex64 {
    z.inner(w).exp()
}

/// `b_a(z) = ((1 − ‖a‖²)^{1/2} / (1 − ⟨z, a⟩)) (z − a)(I − a*a)^{-1/2}`
/// with `z, a` rows.
///
/// `v(I − a*a)^{-1/2} = v + c⟨v, a⟩a` with
/// `c = 1 / (√(1 − s)(1 + √(1 − s)))`, `s = ‖a‖²`.
pub fn blaschke(a: &L2Point, z: &L2Point) -> Result<L2Point> {
    let s = a.norm_sqr();
    if s >= 1.0 {
        return Err(Error::Invalid(format!("Blaschke center outside the ball: |a|^2 = {s}")));
    }
    let denom = one_minus(z.inner(a), "Blaschke factor")?;
    let root = (1.0 - s).sqrt();
    let c = 1.0 / (root * (1.0 + root));
    let v = z.sub(a);
    let shifted = v.combine(Complex64::new(1.0, 0.0), a, c * v.inner(a));
    Ok(shifted.scale(Complex64::new(root, 0.0) / denom))
}

/// Gram matrix of a kernel on a point list.
#[derive(Debug, Clone)]
pub struct KernelGram {
    pub points: Vec<L2Point>,
    pub gram: Matrix<Complex64>,
    pub min_eig: f64,
    /// `max |G_ij − conj(G_ji)|`.
    pub hermitian_defect: f64,
}

impl KernelGram {
    pub fn is_psd(&self) -> bool {
        self.is_psd_with(PSD_TOLERANCE)
    }

    pub fn is_psd_with(&self, tol: f64) -> bool {
        self.min_eig >= tol
    }
}

/// Smallest eigenvalue of the Hermitian part of `g`.
pub fn min_hermitian_eigenvalue(g: &Matrix<Complex64>) -> f64 {
    let n = g.rows();
    if n == 0 {
        return 0.0;
    }
    let h = DMatrix::from_fn(n, n, |i, j| (g.get(i, j) + g.get(j, i).conj()) * 0.5);
    SymmetricEigen::new(h).eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// `G_ij = K(z_i, z_j)`, assembled in parallel by rows.
pub fn kernel_gram<K>(points: &[L2Point], kernel: K) -> Result<KernelGram>
where
    K: Fn(&L2Point, &L2Point) -> Result<Complex64> + Sync,
{
    assemble(points, |i, j| kernel(&points[i], &points[j]))
}

fn assemble<K>(points: &[L2Point], entry: K) -> Result<KernelGram>
where
    K: Fn(usize, usize) -> Result<Complex64> + Sync,
{
    let n = points.len();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| entry(i, j)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let gram = Matrix::from_fn(n, n, |i, j| rows[i][j]);
    let mut hermitian_defect: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            hermitian_defect = hermitian_defect.max((gram.get(i, j) - gram.get(j, i).conj()).norm());
        }
    }
    let min_eig = min_hermitian_eigenvalue(&gram);
    Ok(KernelGram { points: points.to_vec(), gram, min_eig, hermitian_defect })
}

/// A scalar function on the ball, used as a candidate multiplier.
pub trait Multiplier: Sync {
    fn value(&self, z: &L2Point) -> Result<Complex64>;
}

/// Multiplier given by a closure.
pub struct ClosedForm<F>(pub F);

impl<F: Fn(&L2Point) -> Complex64 + Sync> Multiplier for ClosedForm<F> {
    fn value(&self, z: &L2Point) -> Result<Complex64> {
        Ok((self.0)(z))
    }
}

impl Multiplier for Realization<Complex64> {
    fn value(&self, z: &L2Point) -> Result<Complex64> {
        if self.shape() != (1, 1) {
            return Err(Error::Shape(format!("multiplier must be scalar, got {:?}", self.shape())));
        }
        let v = self.eval(&z.to_dense(self.num_vars()))?;
        Ok(*v.value.get(0, 0))
    }
}

/// Gram of `K_s(z, w) = (1 − s(z) s(w)*) / (1 − ⟨z, w⟩)`.
pub fn schur_gram(s: &dyn Multiplier, points: &[L2Point]) -> Result<KernelGram> {
    let values: Vec<Complex64> = points.iter().map(|z| s.value(z)).collect::<Result<_>>()?;
    assemble(points, |i, j| {
        let num = Complex64::new(1.0, 0.0) - values[i] * values[j].conj();
        Ok(num / one_minus(points[i].inner(&points[j]), "Schur kernel")?)
    })
}

/// A kernel `k(z, w)` given as an evaluator.
pub trait KernelFn: Sync {
    fn kernel(&self, z: &L2Point, w: &L2Point) -> Result<Complex64>;
}

impl<F: Fn(&L2Point, &L2Point) -> Complex64 + Sync> KernelFn for ClosedForm<F> {
    fn kernel(&self, z: &L2Point, w: &L2Point) -> Result<Complex64> {
        Ok((self.0)(z, w))
    }
}

/// `k(z, w) = Σ_i g_i(z) g_i(w)*` for scalar monomial series `g_i`;
/// positive by construction.
pub struct HermitianSquare {
    pub factors: Vec<TruncatedSeries<Complex64>>,
}

impl HermitianSquare {
    fn factor_values(&self, z: &L2Point) -> Result<Vec<Complex64>> {
        self.factors
            .iter()
            .map(|g| {
                if g.shape() != (1, 1) {
                    return Err(Error::Shape(format!("kernel factor must be scalar, got {:?}", g.shape())));
                }
                Ok(*g.evaluate(&z.to_dense(g.max_var() as usize))?.get(0, 0))
            })
            .collect()
    }
}

impl KernelFn for HermitianSquare {
    fn kernel(&self, z: &L2Point, w: &L2Point) -> Result<Complex64> {
        let gz = self.factor_values(z)?;
        let gw = self.factor_values(w)?;
        Ok(gz.iter().zip(&gw).map(|(a, b)| a * b.conj()).sum())
    }
}

/// `max_{i,j} |1 − s(z_i)s(z_j)* − Σ_ℓ (1 − z_{i,ℓ} z̄_{j,ℓ}) k_ℓ(z_i, z_j)|`
/// with `kernels[ℓ − 1] = k_ℓ`.
pub fn agler_residual(s: &dyn Multiplier, kernels: &[&dyn KernelFn], points: &[L2Point]) -> Result<f64> {
    let values: Vec<Complex64> = points.iter().map(|z| s.value(z)).collect::<Result<_>>()?;
    let one = Complex64::new(1.0, 0.0);
    let rows: Vec<f64> = points
        .par_iter()
        .enumerate()
        .map(|(i, z)| {
            let mut worst: f64 = 0.0;
            for (j, w) in points.iter().enumerate() {
                let lhs = one - values[i] * values[j].conj();
                let mut rhs = Complex64::new(0.0, 0.0);
                for (l, k) in kernels.iter().enumerate() {
                    let pos = l as u32 + 1;
                    rhs += (one - z.get(pos) * w.get(pos).conj()) * k.kernel(z, w)?;
                }
                worst = worst.max((lhs - rhs).norm());
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().fold(0.0, f64::max))
}

/// Taylor coefficients `c_{(a,b)}` of a function holomorphic near the
/// closed bidisc of radius `radius`, by the trapezoidal Cauchy integral on
/// `nodes × nodes` points of the torus. Returns every `(a, b)` with
/// `a + b ≤ max_degree`, in graded order.
pub fn taylor_coefficients_2d(
    f: impl Fn(Complex64, Complex64) -> Complex64,
    max_degree: u32,
    radius: f64,
    nodes: usize,
) -> Vec<((u32, u32), Complex64)> {
    let roots: Vec<Complex64> =
        (0..nodes).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / nodes as f64)).collect();
    let values: Vec<Vec<Complex64>> =
        roots.iter().map(|u| roots.iter().map(|v| f(u * radius, v * radius)).collect()).collect();
    let mut out = Vec::new();
    for deg in 0..=max_degree {
        for a in (0..=deg).rev() {
            let b = deg - a;
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, row) in values.iter().enumerate() {
                for (k, val) in row.iter().enumerate() {
                    // conj(root)^a = root^{-a}
                    let idx = (a as usize * j + b as usize * k) % nodes;
                    acc += val * roots[idx].conj();
                }
            }
            let scale = (nodes * nodes) as f64 * radius.powi(deg as i32);
            out.push(((a, b), acc / scale));
        }
    }
    out
}

/// Coefficients of `z ↦ k_w(z)` on the slice `z = (z₁, z₂, 0, …)` with
/// `w = (1, 1, 0, …)`, which equal `|α|!/α!`.
pub fn arveson_slice_coefficients(max_degree: u32) -> Vec<((u32, u32), Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    let w = L2Point::from_dense(&[one, one]);
    taylor_coefficients_2d(
        |z1, z2| arveson_kernel(&L2Point::from_dense(&[z1, z2]), &w).expect("inside the polydisc"),
        max_degree,
        0.25,
        64,
    )
}
