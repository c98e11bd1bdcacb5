//! Parallel calculi on truncated formal power series.
//!
//! - [`multiindex`]: finite-support multi-indices in graded lexicographic
//!   order.
//! - [`series`]: truncated series with the Wick/Cauchy convolution
//!   product, Hermite transform, weighted norms, Leibenzon operators and
//!   `K_q(δ)` membership.
//! - [`realization`]: `D + C(I − zA)^{-1}zB` data, its series expansion,
//!   evaluation and cascade algebra.
//! - [`fueter`]: quaternions, Cauchy–Kovalevskaya extension and product,
//!   Fueter monomials.
//! - [`kernels`]: Arveson and Fock kernels, the ℓ₂ Blaschke factor, Schur
//!   kernel Gram matrices and Agler residuals.
//! - [`whitenoise`]: Hermite polynomials and seeded Monte Carlo over the
//!   chaos basis.
//! - [`json`]: the JSON interchange format shared with the command line.
//! - [`cli`]: the `wickcalc` command-line front end.

pub mod cli;
pub mod error;
pub mod fueter;
pub mod json;
pub mod kernels;
pub mod matrix;
pub mod multiindex;
pub mod realization;
pub mod scalar;
pub mod series;
pub mod whitenoise;

pub use error::{Error, Result};
pub use fueter::Quaternion;
pub use matrix::Matrix;
pub use multiindex::MultiIndex;
pub use realization::Realization;
pub use scalar::{Rational, Scalar};
pub use series::{Basis, TruncatedSeries};
