//! Quaternionic polynomials, the Cauchy–Kovalevskaya extension and product,
//! and Fueter monomials.
//!
//! Coefficients are always written on the right of monomials. The operator
//! `L = e₁∂₁ + e₂∂₂ + e₃∂₃` and the Cauchy–Fueter operator
//! `D = ∂₀ + e₁∂₁ + e₂∂₂ + e₃∂₃` act by left multiplication.

mod poly;
mod quaternion;

use std::collections::BTreeMap;

pub use poly::{QPoly, QPolyMatrix, QPolynomial3, QPolynomial4};
pub use quaternion::{qmul, ExactQuaternion, Quaternion, QuaternionRing};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::realization::Realization;
use crate::scalar::{Magnitude, Rational, Scalar};
use crate::series::TruncatedSeries;

/// Real polynomial in `(x₀, x₁, x₂, x₃)`.
pub type RealPoly4<M = f64> = BTreeMap<[u32; 4], M>;

fn lift(exps: &[u32; 3], x0: u32) -> [u32; 4] {
    [x0, exps[0], exps[1], exps[2]]
}

/// `L φ = Σ_i e_i ∂_i φ` on a polynomial in `(x₁, x₂, x₃)`.
fn l_operator<Q: QuaternionRing>(phi: &QPoly<3, Q>) -> QPoly<3, Q> {
    (0..3).fold(QPoly::zero(), |acc, i| acc.add(&phi.partial(i).left_mul(&Q::unit(i + 1))))
}

/// `CK(φ) = Σ_k ((−x₀)^k / k!) L^k φ`.
pub fn ck_extend<Q: QuaternionRing>(phi: &QPoly<3, Q>) -> QPoly<4, Q> {
    let mut out = QPoly::zero();
    let mut lk = phi.clone();
    let mut k = 0u32;
    let mut factor = Rational::from_integer(1.into());
    while !lk.is_zero() {
        let f = Q::from_rational(&factor);
        for (e, c) in lk.terms() {
            out.add_term(lift(e, k), f.clone() * c.clone());
        }
        k += 1;
        factor = -factor / Rational::from_integer(k.into());
        lk = l_operator(&lk);
    }
    out
}

/// Restriction to `x₀ = 0`.
pub fn restrict<Q: QuaternionRing>(f: &QPoly<4, Q>) -> QPoly<3, Q> {
    QPoly::from_terms(f.terms().filter(|(e, _)| e[0] == 0).map(|(e, c)| ([e[1], e[2], e[3]], c.clone())))
}

/// `f ∘ g = CK(R(f) R(g))`.
pub fn ck_product<Q: QuaternionRing>(f: &QPoly<4, Q>, g: &QPoly<4, Q>) -> QPoly<4, Q> {
    ck_extend(&restrict(f).mul(&restrict(g)))
}

/// `ζ^α = CK(x^α)`.
pub fn fueter_monomial<Q: QuaternionRing>(alpha: [u32; 3]) -> QPoly<4, Q> {
    ck_extend(&QPoly::monomial(alpha, Q::one()))
}

/// `ζ_ℓ = x_ℓ − e_ℓ x₀`, `ℓ ∈ 1..=3`.
pub fn fueter_variable<Q: QuaternionRing>(l: usize) -> QPoly<4, Q> {
    assert!((1..=3).contains(&l), "Fueter variables are ζ₁, ζ₂, ζ₃");
    let mut a = [0; 3];
    a[l - 1] = 1;
    fueter_monomial(a)
}

/// `Df = ∂₀f + Σ_i e_i ∂_i f`.
pub fn dirac_apply<Q: QuaternionRing>(f: &QPoly<4, Q>) -> QPoly<4, Q> {
    (1..4).fold(f.partial(0), |acc, i| acc.add(&f.partial(i).left_mul(&Q::unit(i))))
}

/// The four real residuals of `Df = 0` written for `f = f₀ + Σ e_i f_i`:
///
/// ```text
/// ∂₀f₀ − ∂₁f₁ − ∂₂f₂ − ∂₃f₃
/// ∂₀f₁ + ∂₁f₀ + ∂₂f₃ − ∂₃f₂
/// ∂₀f₂ + ∂₂f₀ + ∂₃f₁ − ∂₁f₃
/// ∂₀f₃ + ∂₃f₀ + ∂₁f₂ − ∂₂f₁
/// ```
///
/// Computed on real component polynomials, without quaternion products.
pub fn dirac_components<Q: QuaternionRing>(f: &QPoly<4, Q>) -> [RealPoly4<Q::Magnitude>; 4] {
    type M<Q> = <Q as Scalar>::Magnitude;
    let zero = <M<Q> as Magnitude>::zero();
    let comp = |c: usize| -> RealPoly4<M<Q>> {
        f.terms().map(|(e, q)| (*e, q.component(c))).filter(|(_, v)| *v != zero).collect()
    };
    let fs = [comp(0), comp(1), comp(2), comp(3)];
    let d = |p: &RealPoly4<M<Q>>, i: usize| -> RealPoly4<M<Q>> {
        p.iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, v)| {
                let mut e2 = *e;
                e2[i] -= 1;
                let k = M::<Q>::from_rational(&Rational::from_integer(e[i].into()));
                (e2, v.clone() * k)
            })
            .collect()
    };
    // (sign, variable, component) triples per equation
    const SYSTEM: [[(f64, usize, usize); 4]; 4] = [
        [(1.0, 0, 0), (-1.0, 1, 1), (-1.0, 2, 2), (-1.0, 3, 3)],
        [(1.0, 0, 1), (1.0, 1, 0), (1.0, 2, 3), (-1.0, 3, 2)],
        [(1.0, 0, 2), (1.0, 2, 0), (1.0, 3, 1), (-1.0, 1, 3)],
        [(1.0, 0, 3), (1.0, 3, 0), (1.0, 1, 2), (-1.0, 2, 1)],
    ];
    let minus = M::<Q>::from_rational(&Rational::from_integer((-1).into()));
    SYSTEM.map(|eq| {
        let mut acc = RealPoly4::new();
        for (sign, var, c) in eq {
            for (e, v) in d(&fs[c], var) {
                let v = if sign < 0.0 { v * minus.clone() } else { v };
                let slot = acc.entry(e).or_insert_with(|| zero.clone());
                *slot = slot.clone() + v;
            }
        }
        acc.retain(|_, v| *v != zero);
        acc
    })
}

impl<Q: QuaternionRing> QPolyMatrix<Q> {
    /// Entrywise restriction to `x₀ = 0`, row-major.
    pub fn restrict(&self) -> Vec<QPoly<3, Q>> {
        (0..self.rows())
            .flat_map(|i| (0..self.cols()).map(move |j| (i, j)))
            .map(|(i, j)| restrict(self.get(i, j)))
            .collect()
    }

    /// Matrix CK product `(F∘G)_{ij} = CK(Σ_k R(F_ik) R(G_kj))`, truncated
    /// at total degree `degree`.
    pub fn ck_mul(&self, other: &Self, degree: u32) -> Self {
        assert_eq!(self.cols(), other.rows(), "matrix shape mismatch");
        let rf = self.restrict();
        let rg = other.restrict();
        let (n, q) = (self.cols(), other.cols());
        Self::from_fn(self.rows(), q, |i, j| {
            let sum =
                (0..n).fold(QPoly::zero(), |acc, k| acc.add(&rf[i * n + k].mul_truncated(&rg[k * q + j], degree)));
            ck_extend(&sum)
        })
    }
}

/// `(I − G)^{-∘} = Σ_{n ≤ d} G^{n∘}`, truncated at total degree `d`.
///
/// The restriction of `G` must have zero constant term.
pub fn ck_von_neumann_inv<Q: QuaternionRing>(g: &QPolyMatrix<Q>, degree: u32) -> Result<QPolyMatrix<Q>> {
    let (n, m) = g.shape();
    if n != m {
        return Err(Error::Shape(format!("cannot invert a {n}x{m} matrix")));
    }
    if g.restrict().iter().any(|p| !p.coeff(&[0, 0, 0]).is_zero()) {
        return Err(Error::Invalid("G must have zero constant term".into()));
    }
    let mut power = QPolyMatrix::identity(n);
    let mut acc = power.clone();
    for _ in 0..degree {
        power = power.ck_mul(g, degree);
        acc = acc.add(&power);
    }
    Ok(acc)
}

/// `D + C∘(I − ζA)^{-∘}∘ζB` with `ζA = Σ_ℓ ζ_ℓ A_ℓ`, truncated at total
/// degree `degree`. At most three variables.
pub fn realization_ck<Q: QuaternionRing>(r: &Realization<Q>, degree: u32) -> Result<QPolyMatrix<Q>> {
    if r.num_vars() > 3 {
        return Err(Error::Invalid(format!("Fueter calculus has 3 variables, realization has {}", r.num_vars())));
    }
    let n = r.state_dim();
    let q = r.shape().1;
    let zeta: Vec<QPoly<4, Q>> = (1..=r.num_vars()).map(fueter_variable).collect();
    let linear = |mats: &[Matrix<Q>], cols: usize| {
        QPolyMatrix::from_fn(n, cols, |i, j| {
            mats.iter().zip(&zeta).fold(QPoly::zero(), |acc, (m, z)| acc.add(&z.right_mul(m.get(i, j))))
        })
    };
    let resolvent = ck_von_neumann_inv(&linear(r.a(), n), degree)?;
    let tail = resolvent.ck_mul(&linear(r.b(), q), degree);
    Ok(QPolyMatrix::constant(r.d()).add(&QPolyMatrix::constant(r.c()).ck_mul(&tail, degree)))
}

/// Expands a Fueter-basis series `Σ ζ^α f_α` into polynomials in
/// `(x₀, x₁, x₂, x₃)`.
pub fn fueter_series_expand<Q: QuaternionRing>(series: &TruncatedSeries<Q>) -> Result<QPolyMatrix<Q>> {
    if series.max_var() > 3 {
        return Err(Error::Invalid(format!(
            "Fueter calculus has 3 variables, series has max_var {}",
            series.max_var()
        )));
    }
    let (p, q) = series.shape();
    let mut out = QPolyMatrix::zeros(p, q);
    for (alpha, c) in series.terms() {
        let d = alpha.to_dense(3);
        let z: QPoly<4, Q> = fueter_monomial([d[0], d[1], d[2]]);
        for i in 0..p {
            for j in 0..q {
                out.set(i, j, out.get(i, j).add(&z.right_mul(c.get(i, j))));
            }
        }
    }
    Ok(out)
}

/// Reads entry `(i, j)` of a monomial series in at most three variables as
/// a polynomial in `(x₁, x₂, x₃)`.
pub fn series_entry_poly<Q: QuaternionRing>(series: &TruncatedSeries<Q>, i: usize, j: usize) -> Result<QPoly<3, Q>> {
    if series.max_var() > 3 {
        return Err(Error::Invalid(format!("series has max_var {}", series.max_var())));
    }
    Ok(QPoly::from_terms(series.terms().map(|(alpha, c)| {
        let d = alpha.to_dense(3);
        ([d[0], d[1], d[2]], c.get(i, j).clone())
    })))
}
