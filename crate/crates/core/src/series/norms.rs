//! Weighted ℓ² norms and inner products on coefficient maps.
//!
//! | space        | weight `w_α`           |
//! |--------------|------------------------|
//! | white noise  | `α!`                   |
//! | `P`          | `1`                    |
//! | Arveson      | `α!/|α|!` (1 at α = 0) |
//! | Fock         | `α!`                   |
//! | Kondratiev   | `(2ℕ)^{-qα}`           |
//!
//! Hida is the supremum of `c_α² (2ℕ)^{-qα}` instead of the sum. Matrix
//! coefficients use the squared Frobenius norm in place of `c_α²`.
//!
//! The Fock weight is `α!`, the one that makes `Σ z^α w̄^α / α!` the
//! reproducing kernel and the Hermite transform an isometry from the white
//! noise space.

use num_bigint::BigInt;

use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::multiindex::{MultiIndex, Sign};
use crate::scalar::{Magnitude, Rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    P,
    WhiteNoise,
    Arveson,
    Fock,
    Kondratiev(i32),
}

impl Space {
    /// The exact weight `w_α`.
    pub fn weight(&self, alpha: &MultiIndex) -> Rational {
        match *self {
            Space::P => Rational::from_integer(1.into()),
            Space::WhiteNoise | Space::Fock => Rational::from_integer(BigInt::from(alpha.factorial_big())),
            Space::Arveson => {
                let weight_factorial = (2..=alpha.weight()).fold(BigInt::from(1), |acc, k| acc * k);
                Rational::new(BigInt::from(alpha.factorial_big()), weight_factorial)
            }
            Space::Kondratiev(q) => alpha.two_n_pow_exact(q, Sign::Minus),
        }
    }
}

/// Squared norms of a series. Exact for exact rings.
#[derive(Debug, Clone, PartialEq)]
pub struct NormReport<M> {
    pub q: i32,
    pub white_noise_sq: M,
    pub p_space_sq: M,
    pub arveson_sq: M,
    pub fock_sq: M,
    pub kondratiev_sq: M,
    pub hida_sq: M,
}

/// Square roots of a [`NormReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRoots {
    pub white_noise: f64,
    pub p_space: f64,
    pub arveson: f64,
    pub fock: f64,
    pub kondratiev: f64,
    pub hida: f64,
}

impl<M: Magnitude> NormReport<M> {
    pub fn roots(&self) -> NormRoots {
        NormRoots {
            white_noise: self.white_noise_sq.to_f64().sqrt(),
            p_space: self.p_space_sq.to_f64().sqrt(),
            arveson: self.arveson_sq.to_f64().sqrt(),
            fock: self.fock_sq.to_f64().sqrt(),
            kondratiev: self.kondratiev_sq.to_f64().sqrt(),
            hida: self.hida_sq.to_f64().sqrt(),
        }
    }
}

impl<S: Scalar> TruncatedSeries<S> {
    /// Weighted sum `Σ w_α |c_α|²` for one space.
    pub fn norm_sq(&self, space: Space) -> S::Magnitude {
        self.terms().fold(<S::Magnitude as Magnitude>::zero(), |acc, (a, c)| {
            acc + <S::Magnitude as Magnitude>::from_rational(&space.weight(a)) * c.frobenius_sqr()
        })
    }

    pub fn norms(&self, q: i32) -> NormReport<S::Magnitude> {
        let mut hida = <S::Magnitude as Magnitude>::zero();
        for (a, c) in self.terms() {
            let v = <S::Magnitude as Magnitude>::from_rational(&a.two_n_pow_exact(q, Sign::Minus)) * c.frobenius_sqr();
            if v > hida {
                hida = v;
            }
        }
        NormReport {
            q,
            white_noise_sq: self.norm_sq(Space::WhiteNoise),
            p_space_sq: self.norm_sq(Space::P),
            arveson_sq: self.norm_sq(Space::Arveson),
            fock_sq: self.norm_sq(Space::Fock),
            kondratiev_sq: self.norm_sq(Space::Kondratiev(q)),
            hida_sq: hida,
        }
    }

    /// `⟨F, G⟩ = Σ_α w_α F_α conj(G_α)` for scalar series of one basis.
    pub fn inner_product(&self, other: &Self, space: Space) -> Result<S> {
        if self.basis != other.basis {
            return Err(Error::Basis { expected: self.basis, found: other.basis });
        }
        if self.shape != (1, 1) || other.shape != (1, 1) {
            return Err(Error::Shape("inner products need scalar series".into()));
        }
        let mut acc = S::zero();
        for (a, f) in self.terms() {
            if let Some(g) = other.coeff(a) {
                let term = f.get(0, 0).clone() * g.get(0, 0).conj();
                acc = acc + S::from_rational(&space.weight(a)) * term;
            }
        }
        Ok(acc)
    }
}
