#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use wickcalc::matrix::Matrix;
use wickcalc::scalar::{ratio, Rational};
use wickcalc::{Basis, MultiIndex, Realization, Scalar, TruncatedSeries};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nodes and weights of the `n`-point Gauss rule for the standard normal
/// density, by Golub–Welsch on the probabilists' Hermite Jacobi matrix.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let jacobi = DMatrix::from_fn(n, n, |i, j| if i.abs_diff(j) == 1 { (i.max(j) as f64).sqrt() } else { 0.0 });
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..n).map(|k| (eig.eigenvalues[k], eig.eigenvectors[(0, k)].powi(2))).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// `He_n(x) = n! Σ_m (−1)^m x^{n−2m} / (m! (n−2m)! 2^m)`.
pub fn hermite_explicit(n: u32, x: f64) -> f64 {
    let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
    (0..=n / 2)
        .map(|m| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign * fact(n) * x.powi((n - 2 * m) as i32) / (fact(m) * fact(n - 2 * m) * 2f64.powi(m as i32))
        })
        .sum()
}

/// `E[H_α H_β]` for iid standard normals, coordinatewise by quadrature.
pub fn quadrature_inner(alpha: &[u32], beta: &[u32], nodes: &[f64], weights: &[f64]) -> f64 {
    alpha
        .iter()
        .zip(beta)
        .map(|(&a, &b)| {
            nodes.iter().zip(weights).map(|(&x, &w)| w * hermite_explicit(a, x) * hermite_explicit(b, x)).sum::<f64>()
        })
        .product()
}

/// All dense exponent vectors of length `m` with total at most `d`.
pub fn dense_indices(d: u32, m: usize) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: u32, m: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(prefix, left - e, m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), d, m, &mut out);
    out
}

/// `Σ_w C A_{w₁} ⋯ A_{w_{n−1}} B_{w_n}` over all words `w` whose letter
/// counts are `alpha`; `D` for the empty word.
pub fn word_sum<S: Scalar>(r: &Realization<S>, alpha: &[u32]) -> Matrix<S> {
    let n: u32 = alpha.iter().sum();
    if n == 0 {
        return r.d().clone();
    }
    let (p, q) = r.shape();
    let mut total = Matrix::zeros(p, q);
    let mut counts = alpha.to_vec();
    let mut word = Vec::new();
    words(&mut counts, n as usize, &mut word, &mut |w| {
        let mut acc = r.c().clone();
        for &k in &w[..w.len() - 1] {
            acc = acc.mul(&r.a()[k]);
        }
        acc = acc.mul(&r.b()[w[w.len() - 1]]);
        total = total.add(&acc);
    });
    total
}

fn words(counts: &mut [u32], len: usize, word: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if word.len() == len {
        f(word);
        return;
    }
    for k in 0..counts.len() {
        if counts[k] > 0 {
            counts[k] -= 1;
            word.push(k);
            words(counts, len, word, f);
            word.pop();
            counts[k] += 1;
        }
    }
}

/// Realization with entries uniform in `[−scale, scale]`.
pub fn random_realization(
    rng: &mut impl Rng,
    n: usize,
    m: usize,
    (p, q): (usize, usize),
    scale: f64,
) -> Realization<f64> {
    let mut mat = |r: usize, c: usize, s: f64| Matrix::from_fn(r, c, |_, _| rng.random_range(-s..=s));
    let d = mat(p, q, 1.0);
    let c = mat(p, n, 1.0);
    let a = (0..m).map(|_| mat(n, n, scale)).collect();
    let b = (0..m).map(|_| mat(n, q, 1.0)).collect();
    Realization::new(d, c, a, b).unwrap()
}

/// Square realization whose `D` is `I + small`, so it is invertible.
pub fn random_invertible_realization(rng: &mut impl Rng, n: usize, m: usize, p: usize) -> Realization<f64> {
    let r = random_realization(rng, n, m, (p, p), 0.3);
    let d = Matrix::identity(p).add(&r.d().map(|x| 0.2 * x));
    Realization::new(d, r.c().clone(), r.a().to_vec(), r.b().to_vec()).unwrap()
}

/// Realization whose `A_k` are polynomials in one matrix, hence commute.
pub fn random_commuting_realization(rng: &mut impl Rng, n: usize, m: usize) -> Realization<f64> {
    let t = Matrix::from_fn(n, n, |_, _| rng.random_range(-0.4..=0.4));
    let t2 = t.mul(&t);
    let a = (0..m)
        .map(|_| {
            let (c0, c1, c2) =
                (rng.random_range(-0.3..=0.3), rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
            Matrix::identity(n).map(|x| c0 * x).add(&t.map(|x| c1 * x)).add(&t2.map(|x| c2 * x))
        })
        .collect();
    let b = (0..m).map(|_| Matrix::from_fn(n, 1, |_, _| rng.random_range(-1.0..=1.0))).collect();
    let c = Matrix::from_fn(1, n, |_, _| rng.random_range(-1.0..=1.0));
    Realization::new(Matrix::scalar(0.5), c, a, b).unwrap()
}

/// Random exact series with small integer-over-small-integer coefficients.
pub fn random_rational_series(
    rng: &mut impl Rng,
    basis: Basis,
    degree: u32,
    max_var: u32,
    shape: (usize, usize),
) -> TruncatedSeries<Rational> {
    let mut terms = Vec::new();
    for d in dense_indices(degree, max_var as usize) {
        if rng.random_bool(0.5) {
            let m = Matrix::from_fn(shape.0, shape.1, |_, _| ratio(rng.random_range(-9..=9), rng.random_range(1..=5)));
            terms.push((MultiIndex::from_dense(&d), m));
        }
    }
    TruncatedSeries::from_terms(basis, degree, max_var, shape, terms).unwrap()
}

pub fn random_float_series(
    rng: &mut impl Rng,
    basis: Basis,
    degree: u32,
    max_var: u32,
    shape: (usize, usize),
) -> TruncatedSeries<f64> {
    let terms = dense_indices(degree, max_var as usize)
        .into_iter()
        .map(|d| {
            let m = Matrix::from_fn(shape.0, shape.1, |_, _| rng.random_range(-1.0..=1.0));
            (MultiIndex::from_dense(&d), m)
        })
        .collect::<Vec<_>>();
    TruncatedSeries::from_terms(basis, degree, max_var, shape, terms).unwrap()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub code: i32,
}

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(manifest_dir().join("tests/cases.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Runs one case through the binary; `@name` arguments name fixtures.
pub fn run_case(case: &Case) -> (i32, Vec<u8>) {
    let fixtures = manifest_dir().join("tests/fixtures");
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(file) => fixtures.join(file).to_string_lossy().into_owned(),
            None => a.clone(),
        })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_wickcalc")).args(&args).output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.json"))
}

/// Compares every case with its golden file, twice. With
/// `WICKCALC_UPDATE_GOLDEN` set, writes the golden files instead.
/// Returns the list of mismatches.
pub fn check_goldens() -> Vec<String> {
    let update = std::env::var_os("WICKCALC_UPDATE_GOLDEN").is_some();
    let mut problems = Vec::new();
    for case in cases() {
        let (code, first) = run_case(&case);
        let (code2, second) = run_case(&case);
        if code != case.code {
            problems.push(format!("{}: exit {code}, expected {}", case.name, case.code));
        }
        if code2 != code || first != second {
            problems.push(format!("{}: output differs between runs", case.name));
        }
        let path = golden_path(&case.name);
        if update {
            std::fs::write(&path, &first).unwrap();
        } else {
            match std::fs::read(&path) {
                Ok(golden) if golden == first => {}
                Ok(_) => problems.push(format!("{}: differs from {}", case.name, display(&path))),
                Err(_) => problems.push(format!("{}: missing {}", case.name, display(&path))),
            }
        }
    }
    problems
}

fn display(p: &Path) -> String {
    p.strip_prefix(manifest_dir()).unwrap_or(p).display().to_string()
}
