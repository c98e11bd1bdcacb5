//! Probabilists' Hermite polynomials, the chaos basis under iid standard
//! normal pairings, and seeded Monte Carlo expectations.
//!
//! Sampling: sample `i` belongs to chunk `i / CHUNK`; chunk `c` draws from
//! `ChaCha20Rng::seed_from_u64(seed)` on stream `c`, one vector of
//! coordinates at a time, using the ziggurat `StandardNormal` of
//! `rand_distr`. Chunks are reduced pairwise in chunk order, so results are
//! bit-identical for any thread count.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::series::{Basis, TruncatedSeries};

/// Samples per chunk (one RNG stream each).
pub const CHUNK: usize = 4096;

/// Smallest sample count accepted by the Monte Carlo estimators.
pub const MIN_SAMPLES: usize = 10_000;

/// `h_n` with exact integer coefficients, `coeffs[k]` multiplying `x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitePoly {
    coeffs: Vec<BigInt>,
}

impl HermitePoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

/// `h_{n+1} = x h_n − n h_{n−1}`, `h₀ = 1`, `h₁ = x`.
pub fn hermite(n: usize) -> HermitePoly {
    let mut prev = vec![BigInt::from(1)];
    if n == 0 {
        return HermitePoly { coeffs: prev };
    }
    let mut cur = vec![BigInt::zero(), BigInt::from(1)];
    for k in 1..n {
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * BigInt::from(k);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    HermitePoly { coeffs: cur }
}

/// `h_n(x)` by the three-term recurrence.
pub fn hermite_eval(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = x * cur - f64::from(k) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_α(x) = Π_k h_{α_k}(x_k)`; `x[k − 1]` is the pairing with `ζ_k`.
pub fn chaos_eval(alpha: &MultiIndex, x: &[f64]) -> Result<f64> {
    if alpha.max_position() as usize > x.len() {
        return Err(Error::Invalid(format!(
            "index {alpha} needs {} coordinates, got {}",
            alpha.max_position(),
            x.len()
        )));
    }
    Ok(alpha.entries().iter().map(|&(k, e)| hermite_eval(e, x[k as usize - 1])).product())
}

/// Seeded source of iid standard normal vectors, addressed by chunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianSampler {
    pub seed: u64,
    pub dim: usize,
}

impl GaussianSampler {
    pub const ALGORITHM: &'static str = "chacha20-stream-per-chunk/ziggurat";

    pub fn new(seed: u64, dim: usize) -> Self {
        GaussianSampler { seed, dim }
    }

    /// Calls `f` on each of the `len` sample vectors of chunk `chunk`.
    pub fn for_each_in_chunk(&self, chunk: u64, len: usize, mut f: impl FnMut(&[f64])) {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(chunk);
        let mut x = vec![0.0; self.dim];
        for _ in 0..len {
            for xi in x.iter_mut() {
                *xi = rng.sample(StandardNormal);
            }
            f(&x);
        }
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub n: usize,
    pub seed: u64,
}

#[derive(Clone, Copy)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    const EMPTY: Moments = Moments { n: 0.0, mean: 0.0, m2: 0.0 };

    fn push(&mut self, v: f64) {
        self.n += 1.0;
        let delta = v - self.mean;
        self.mean += delta / self.n;
        self.m2 += delta * (v - self.mean);
    }

    fn merge(a: Moments, b: Moments) -> Moments {
        if a.n == 0.0 {
            return b;
        }
        if b.n == 0.0 {
            return a;
        }
        let n = a.n + b.n;
        let delta = b.mean - a.mean;
        Moments { n, mean: a.mean + delta * (b.n / n), m2: a.m2 + b.m2 + delta * delta * (a.n * b.n / n) }
    }
}

fn pairwise(mut level: Vec<Vec<Moments>>) -> Vec<Moments> {
    while level.len() > 1 {
        level = level
            .chunks(2)
            .map(|pair| match pair {
                [a, b] => a.iter().zip(b).map(|(x, y)| Moments::merge(*x, *y)).collect(),
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    level.pop().unwrap_or_default()
}

/// Estimates `E[f_j(X)]`, `j < outputs`, for `X` iid normal in `dim`
/// coordinates, all from the same `n` samples. `f` writes the `outputs`
/// values for one sample into its second argument.
pub fn mc_batch<F>(dim: usize, n: usize, seed: u64, outputs: usize, f: F) -> Vec<McEstimate>
where
    F: Fn(&[f64], &mut [f64]) + Sync,
{
    let sampler = GaussianSampler::new(seed, dim);
    let chunks = n.div_ceil(CHUNK);
    let per_chunk: Vec<Vec<Moments>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = CHUNK.min(n - c * CHUNK);
            let mut acc = vec![Moments::EMPTY; outputs];
            let mut out = vec![0.0; outputs];
            sampler.for_each_in_chunk(c as u64, len, |x| {
                f(x, &mut out);
                for (m, v) in acc.iter_mut().zip(&out) {
                    m.push(*v);
                }
            });
            acc
        })
        .collect();
    let total = if per_chunk.is_empty() { vec![Moments::EMPTY; outputs] } else { pairwise(per_chunk) };
    total
        .into_iter()
        .map(|m| {
            let std_error = if m.n > 1.0 { (m.m2 / (m.n - 1.0) / m.n).sqrt() } else { f64::NAN };
            McEstimate { estimate: m.mean, std_error, n, seed }
        })
        .collect()
}

/// Estimates `E[f(X)]` for `X` iid normal in `dim` coordinates.
pub fn mc_expectation(dim: usize, n: usize, seed: u64, f: impl Fn(&[f64]) -> f64 + Sync) -> McEstimate {
    mc_batch(dim, n, seed, 1, |x, out| out[0] = f(x))[0]
}

fn check_samples(n: usize) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::Invalid(format!("need at least {MIN_SAMPLES} samples, got {n}")));
    }
    Ok(())
}

/// `E[H_α H_β]`, expected `δ_{αβ} α!`.
pub fn mc_inner(alpha: &MultiIndex, beta: &MultiIndex, n: usize, seed: u64) -> Result<McEstimate> {
    mc_inner_in(0, alpha, beta, n, seed)
}

/// [`mc_inner`] sampling at least `dim` coordinates.
pub fn mc_inner_in(dim: usize, alpha: &MultiIndex, beta: &MultiIndex, n: usize, seed: u64) -> Result<McEstimate> {
    check_samples(n)?;
    let dim = (alpha.max_position().max(beta.max_position()).max(1) as usize).max(dim);
    Ok(mc_expectation(dim, n, seed, |x| {
        chaos_eval(alpha, x).expect("dimension covers support") * chaos_eval(beta, x).expect("dimension covers support")
    }))
}

fn scalar_chaos(f: &TruncatedSeries<f64>) -> Result<Vec<(MultiIndex, f64)>> {
    if f.basis() != Basis::Chaos {
        return Err(Error::Basis { expected: Basis::Chaos, found: f.basis() });
    }
    if f.shape() != (1, 1) {
        return Err(Error::Shape(format!("expected a scalar series, got {:?}", f.shape())));
    }
    Ok(f.terms().map(|(a, c)| (a.clone(), *c.get(0, 0))).collect())
}

/// Pointwise value `Σ c_α H_α(x)` of a scalar chaos series.
pub fn series_value(terms: &[(MultiIndex, f64)], x: &[f64]) -> f64 {
    terms.iter().map(|(a, c)| c * chaos_eval(a, x).expect("dimension covers support")).sum()
}

/// `E[F]` for a real scalar chaos series, sampled in `max_var`
/// coordinates.
pub fn mc_series_moment(f: &TruncatedSeries<f64>, n: usize, seed: u64) -> Result<McEstimate> {
    check_samples(n)?;
    let terms = scalar_chaos(f)?;
    let dim = f.max_var().max(1) as usize;
    Ok(mc_expectation(dim, n, seed, |x| series_value(&terms, x)))
}

/// `E[F·G]` with the pointwise (not Wick) product.
pub fn mc_pointwise_product_moment(
    f: &TruncatedSeries<f64>,
    g: &TruncatedSeries<f64>,
    n: usize,
    seed: u64,
) -> Result<McEstimate> {
    check_samples(n)?;
    let (tf, tg) = (scalar_chaos(f)?, scalar_chaos(g)?);
    let dim = f.max_var().max(g.max_var()).max(1) as usize;
    Ok(mc_expectation(dim, n, seed, |x| series_value(&tf, x) * series_value(&tg, x)))
}
