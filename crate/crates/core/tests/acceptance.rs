//! The fifteen acceptance criteria, each with its tolerance and runtime
//! budget. Prints one PASS/FAIL line per criterion and fails if any does.

mod common;

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;

use common::{dense_indices, rng, word_sum};
use wickcalc::fueter::{
    ck_extend, ck_product, dirac_apply, fueter_monomial, fueter_series_expand, realization_ck, restrict,
    ExactQuaternion, QPoly, Quaternion,
};
use wickcalc::kernels::{arveson_kernel, arveson_slice_coefficients, blaschke, kernel_gram, L2Point};
use wickcalc::matrix::Matrix;
use wickcalc::scalar::{ratio, Rational};
use wickcalc::series::{kq_membership, Space};
use wickcalc::whitenoise::{chaos_eval, mc_batch, mc_pointwise_product_moment, mc_series_moment};
use wickcalc::{Basis, MultiIndex, Realization, Scalar, TruncatedSeries};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn chaos_unit(alpha: &MultiIndex, degree: u32, max_var: u32) -> TruncatedSeries<Rational> {
    TruncatedSeries::from_terms(Basis::Chaos, degree, max_var, (1, 1), [(alpha.clone(), Matrix::scalar(ratio(1, 1)))])
        .unwrap()
}

fn is_exact_zero<S: Scalar>(f: &TruncatedSeries<S>) -> bool {
    f.terms().all(|(_, c)| c.is_zero())
}

fn c1_wick_index_law() -> Outcome {
    let m = 4;
    let indices: Vec<MultiIndex> = dense_indices(6, m).iter().map(|d| MultiIndex::from_dense(d)).collect();
    let mut pairs = 0;
    for a in &indices {
        for b in &indices {
            if a.weight() + b.weight() > 6 {
                continue;
            }
            let product = chaos_unit(a, 6, m as u32).wick_mul(&chaos_unit(b, 6, m as u32)).unwrap();
            let dense_sum: Vec<u32> = a.to_dense(m).iter().zip(b.to_dense(m)).map(|(x, y)| x + y).collect();
            let expected = chaos_unit(&MultiIndex::from_dense(&dense_sum), 6, m as u32);
            if product != expected {
                return Err(format!("H_{a} ◊ H_{b} != H_(a+b)"));
            }
            pairs += 1;
        }
    }
    let mut g = rng(1);
    let f = common::random_rational_series(&mut g, Basis::Chaos, 6, 4, (1, 1));
    let unit = chaos_unit(&MultiIndex::zero(), 6, 4);
    check(
        unit.wick_mul(&f).unwrap() == f && f.wick_mul(&unit).unwrap() == f,
        format!("{pairs} pairs and unit law exact"),
    )
}

fn c2_gleason() -> Outcome {
    let mut g = rng(2);
    for i in 0..200 {
        let d = g.random_range(0..=5);
        let m = g.random_range(1..=4);
        let f = common::random_rational_series(&mut g, Basis::Monomial, d, m, (1, 1));
        let r = f.gleason_residual().map_err(|e| e.to_string())?;
        if !is_exact_zero(&r) {
            return Err(format!("polynomial {i}: nonzero residual"));
        }
    }
    Ok("200 polynomials, residual exactly 0".into())
}

fn with_unit_constant<S: Scalar>(f: TruncatedSeries<S>) -> TruncatedSeries<S> {
    let n = f.shape().0;
    let rest: Vec<_> = f.terms().filter(|(a, _)| !a.is_zero()).map(|(a, c)| (a.clone(), c.clone())).collect();
    TruncatedSeries::from_terms(f.basis(), f.degree(), f.max_var(), f.shape(), rest)
        .unwrap()
        .add(&TruncatedSeries::identity(f.basis(), f.degree(), f.max_var(), n))
        .unwrap()
}

fn c3_wick_inverse() -> Outcome {
    let mut g = rng(3);
    let mut worst: f64 = 0.0;
    for n in [1usize, 3] {
        for _ in 0..100 {
            let m = g.random_range(1..=3);
            let raw = common::random_float_series(&mut g, Basis::Chaos, 6, m, (n, n));
            let f = with_unit_constant(raw.map_scalars(|x| 0.5 * x));
            let inv = f.wick_inv().map_err(|e| e.to_string())?;
            let residual = f.wick_mul(&inv).unwrap().sub(&TruncatedSeries::identity(Basis::Chaos, 6, m, n)).unwrap();
            worst = worst.max(residual.max_abs_coeff());
        }
    }
    let mut exact_count = 0;
    for n in [1usize, 3] {
        for _ in 0..100 {
            let m = g.random_range(1..=2);
            let f = with_unit_constant(common::random_rational_series(&mut g, Basis::Chaos, 6, m, (n, n)));
            let inv = f.wick_inv().map_err(|e| e.to_string())?;
            let residual = f.wick_mul(&inv).unwrap().sub(&TruncatedSeries::identity(Basis::Chaos, 6, m, n)).unwrap();
            if !is_exact_zero(&residual) {
                return Err("exact residual nonzero".into());
            }
            exact_count += 1;
        }
    }
    check(worst <= 1e-10, format!("float max residual {worst:.2e} over 200; exact residual 0 over {exact_count}"))
}

fn c4_realization_algebra() -> Outcome {
    let mut g = rng(4);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let (n1, n2) = (g.random_range(1..=4), g.random_range(1..=4));
        let (m1, m2) = (g.random_range(1..=3), g.random_range(1..=3));
        let p = g.random_range(1..=2);
        let r1 = common::random_invertible_realization(&mut g, n1, m1, p);
        let r2 = common::random_invertible_realization(&mut g, n2, m2, p);
        let m = m1.max(m2) as u32;
        let s = |r: &Realization<f64>| {
            let f = r.to_series(6, Basis::Monomial).unwrap();
            TruncatedSeries::from_terms(
                Basis::Monomial,
                6,
                m,
                f.shape(),
                f.terms().map(|(a, c)| (a.clone(), c.clone())),
            )
            .unwrap()
        };
        let (f1, f2) = (s(&r1), s(&r2));
        let err = |a: &TruncatedSeries<f64>, b: &TruncatedSeries<f64>| a.max_abs_diff(b);
        worst = worst.max(err(&s(&r1.product(&r2).unwrap()), &f1.wick_mul(&f2).unwrap()));
        worst = worst.max(err(&s(&r1.sum(&r2).unwrap()), &f1.add(&f2).unwrap()));
        worst = worst.max(err(&s(&r1.inverse().unwrap()), &f1.wick_inv().unwrap()));
    }
    check(worst <= 1e-9, format!("50 pairs, max coefficient error {worst:.2e}"))
}

fn c5_word_oracle() -> Outcome {
    let mut g = rng(5);
    let mut worst: f64 = 0.0;
    let mut instances = 0;
    for n in 1..=3 {
        for m in 1..=3 {
            for _ in 0..3 {
                let r = common::random_realization(&mut g, n, m, (2, 2), 0.8);
                let f = r.to_series(4, Basis::Monomial).unwrap();
                for d in dense_indices(4, m) {
                    let c = f.coeff_or_zero(&MultiIndex::from_dense(&d));
                    worst = worst.max(c.max_abs_diff(&word_sum(&r, &d)));
                }
                instances += 1;
            }
        }
    }
    check(worst <= 1e-10, format!("{instances} realizations to degree 4, max error {worst:.2e}"))
}

fn exact_q(g: &mut impl Rng) -> ExactQuaternion {
    ExactQuaternion::from_integers(std::array::from_fn(|_| g.random_range(-5..=5)))
}

fn c6_hyperholomorphy() -> Outcome {
    let mut g = rng(6);
    for i in 0..100 {
        let d = g.random_range(0..=5);
        let mut phi = QPoly::<3, ExactQuaternion>::zero();
        for e in dense_indices(d, 3) {
            if g.random_bool(0.4) {
                phi.add_term([e[0], e[1], e[2]], exact_q(&mut g));
            }
        }
        if !dirac_apply(&ck_extend(&phi)).is_zero() {
            return Err(format!("polynomial {i}: D(CK φ) != 0"));
        }
    }
    let triples: Vec<[u32; 3]> = dense_indices(4, 3).into_iter().map(|e| [e[0], e[1], e[2]]).collect();
    let mut pairs = 0;
    for a in &triples {
        for b in &triples {
            if a.iter().chain(b).sum::<u32>() > 4 {
                continue;
            }
            let lhs = ck_product(&fueter_monomial::<ExactQuaternion>(*a), &fueter_monomial(*b));
            let rhs = fueter_monomial::<ExactQuaternion>([a[0] + b[0], a[1] + b[1], a[2] + b[2]]);
            if lhs != rhs {
                return Err(format!("ζ^{a:?} ∘ ζ^{b:?} != ζ^(a+b)"));
            }
            pairs += 1;
        }
    }
    Ok(format!("100 polynomials exact; {pairs} monomial pairs exact"))
}

fn c7_bridge() -> Outcome {
    let mut g = rng(7);
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        let real = common::random_realization(&mut g, n, 3, (2, 2), 0.6);
        let r = real.map_scalars(|x| Quaternion::new(*x, 0.5 * x, -0.25 * x, 0.1));
        let series = r.to_series(4, Basis::Fueter).unwrap();
        let expanded = fueter_series_expand(&series).unwrap();
        let ck = realization_ck(&r, 4).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let restricted = restrict(expanded.get(i, j));
                let ck_restricted = restrict(ck.get(i, j));
                for d in dense_indices(4, 3) {
                    let classical = *word_sum(&r, &d).get(i, j);
                    let e = [d[0], d[1], d[2]];
                    worst = worst.max((restricted.coeff(&e) - classical).abs());
                    worst = worst.max((ck_restricted.coeff(&e) - classical).abs());
                }
            }
        }
    }
    check(worst <= 1e-10, format!("3 quaternionic realizations, M = 3, degree 4, max error {worst:.2e}"))
}

fn c8_fock_contraction() -> Outcome {
    let mut g = rng(8);
    for i in 0..100 {
        let f = common::random_rational_series(&mut g, Basis::Monomial, 6, 5, (1, 1));
        let norm = f.norm_sq(Space::Fock);
        for j in 1..=5 {
            if f.leibenzon(j).norm_sq(Space::Fock) > norm {
                return Err(format!("series {i}: ‖R_{j} F‖ > ‖F‖"));
            }
        }
    }
    Ok("100 series, 5 operators each, exact".into())
}

fn c9_arveson_adjoint() -> Outcome {
    let m = 3;
    let monomials: Vec<TruncatedSeries<Rational>> = dense_indices(5, m)
        .iter()
        .map(|d| {
            TruncatedSeries::from_terms(
                Basis::Monomial,
                6,
                m as u32,
                (1, 1),
                [(MultiIndex::from_dense(d), Matrix::scalar(ratio(1, 1)))],
            )
            .unwrap()
        })
        .collect();
    let mut pairs = 0;
    for f in &monomials {
        for g in &monomials {
            let mut sum = ratio(0, 1);
            for k in 1..=m as u32 {
                let lhs = f.mul_by_variable(k).inner_product(g, Space::Arveson).unwrap();
                let rhs = f.inner_product(&g.leibenzon(k), Space::Arveson).unwrap();
                if lhs != rhs {
                    return Err(format!("adjoint fails for k = {k}"));
                }
                sum += f.leibenzon(k).inner_product(&g.leibenzon(k), Space::Arveson).unwrap();
            }
            let expected = f.inner_product(g, Space::Arveson).unwrap()
                - f.scalar_coeff(&MultiIndex::zero()) * g.scalar_coeff(&MultiIndex::zero());
            if sum != expected {
                return Err("Σ_k ⟨R_k F, R_k G⟩ != ⟨F, G⟩ − F(0)G(0)*".into());
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} monomial pairs, exact"))
}

fn c10_leibenzon_realization() -> Outcome {
    let mut g = rng(10);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = g.random_range(1..=3);
        let m = g.random_range(1..=3);
        let r = common::random_commuting_realization(&mut g, n, m);
        let f = Matrix::identity(n);
        for k in 1..=m as u32 {
            let res = r.leibenzon_identity_residual(&f, k, 5).map_err(|e| e.to_string())?;
            worst = worst.max(res.max_abs_coeff());
        }
    }
    check(worst <= 1e-10, format!("50 realizations with commuting A_k, max residual {worst:.2e}"))
}

fn random_point(g: &mut impl Rng, support: usize, radius: f64) -> L2Point {
    let dense: Vec<Complex64> =
        (0..support).map(|_| Complex64::new(g.random_range(-1.0..=1.0), g.random_range(-1.0..=1.0))).collect();
    let p = L2Point::from_dense(&dense);
    let r = radius * g.random_range(0.0..1.0f64).powf(1.0 / (2.0 * support as f64));
    p.scale(Complex64::new(r / p.norm_sqr().sqrt(), 0.0))
}

fn c11_blaschke() -> Outcome {
    let mut g = rng(11);
    let one = Complex64::new(1.0, 0.0);
    let a = random_point(&mut g, 5, 0.9);
    let mut worst: f64 = 0.0;
    let mut points = Vec::new();
    for _ in 0..100 {
        let (sz, sw) = (g.random_range(1..=5), g.random_range(1..=5));
        let (z, w) = (random_point(&mut g, sz, 0.95), random_point(&mut g, sw, 0.95));
        let (bz, bw) = (blaschke(&a, &z).unwrap(), blaschke(&a, &w).unwrap());
        let lhs = one - bz.inner(&bw);
        let rhs = (one - z.inner(&w)) * (1.0 - a.norm_sqr()) / ((one - z.inner(&a)) * (one - a.inner(&w)));
        worst = worst.max((lhs - rhs).norm() / rhs.norm());
        points.push(z);
    }
    let images: Vec<L2Point> = points.iter().take(40).map(|z| blaschke(&a, z).unwrap()).collect();
    let gram = kernel_gram(&images, arveson_kernel).unwrap();
    check(
        worst <= 1e-12 && gram.min_eig >= -1e-10,
        format!("max relative error {worst:.2e}; Gram of 40 images min eigenvalue {:.3e}", gram.min_eig),
    )
}

fn c12_arveson_coefficients() -> Outcome {
    let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
    let mut worst: f64 = 0.0;
    for ((a, b), c) in arveson_slice_coefficients(5) {
        let expected = fact(a + b) / (fact(a) * fact(b));
        worst = worst.max((c - Complex64::new(expected, 0.0)).norm());
    }
    check(worst <= 1e-6, format!("|α| ≤ 5, max error {worst:.2e}"))
}

fn c13_kq() -> Outcome {
    let mut g = rng(13);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let m = g.random_range(1..=4);
        let q = g.random_range(-1..=2);
        let raw: Vec<f64> = (0..m).map(|_| g.random_range(0.0..1.0)).collect();
        let weighted: f64 = raw.iter().enumerate().map(|(j, v)| (2.0 * (j + 1) as f64).powi(q) * v).sum();
        let scale = g.random_range(0.01..=0.2) / weighted;
        let z: Vec<f64> = raw.iter().map(|v| v * scale).collect();
        let brute: f64 = dense_indices(12, m)
            .iter()
            .filter(|d| d.iter().any(|&e| e > 0))
            .map(|d| {
                d.iter()
                    .enumerate()
                    .map(|(j, &e)| (z[j] * (2.0 * (j + 1) as f64).powi(q)).powi(e as i32))
                    .product::<f64>()
            })
            .sum();
        let closed = kq_membership(&z, q, 1.0).value;
        worst = worst.max((closed - brute).abs());
    }
    check(worst <= 1e-8, format!("50 points, max difference {worst:.2e}"))
}

fn c14_monte_carlo() -> Outcome {
    let m = 3;
    let alphas: Vec<Vec<u32>> = dense_indices(3, m);
    let indices: Vec<MultiIndex> = alphas.iter().map(|d| MultiIndex::from_dense(d)).collect();
    let k = indices.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let n = 1_000_000;
    let estimates = mc_batch(m, n, 42, pairs.len(), |x, out| {
        let h: Vec<f64> = indices.iter().map(|a| chaos_eval(a, x).unwrap()).collect();
        for (o, &(i, j)) in out.iter_mut().zip(&pairs) {
            *o = h[i] * h[j];
        }
    });
    let (nodes, weights) = common::gauss_hermite(60);
    let mut worst_z: f64 = 0.0;
    for (e, &(i, j)) in estimates.iter().zip(&pairs) {
        let exact = common::quadrature_inner(&alphas[i], &alphas[j], &nodes, &weights);
        let delta = (e.estimate - exact).abs();
        // a constant integrand has zero standard error; the quadrature oracle
        // is exact only up to rounding
        let z = if e.std_error > 0.0 {
            delta / e.std_error
        } else if delta <= 1e-12 {
            0.0
        } else {
            f64::INFINITY
        };
        worst_z = worst_z.max(z);
    }
    let h1 = TruncatedSeries::from_scalars(Basis::Chaos, 2, 1, [(MultiIndex::unit(1), 1.0)]).unwrap();
    let wick = mc_series_moment(&h1.wick_mul(&h1).unwrap(), n, 42).unwrap();
    let pointwise = mc_pointwise_product_moment(&h1, &h1, n, 42).unwrap();
    let separation = (wick.estimate - pointwise.estimate).abs() / wick.std_error.hypot(pointwise.std_error);
    check(
        worst_z <= 5.0 && separation > 5.0,
        format!(
            "{} pairs, worst |error|/se {worst_z:.2}; Wick vs pointwise separation {separation:.1} se",
            pairs.len()
        ),
    )
}

fn c15_cli_determinism() -> Outcome {
    let problems = common::check_goldens();
    let count = common::cases().len();
    if problems.is_empty() {
        Ok(format!("{count} fixtures byte-identical to golden files on two runs"))
    } else {
        Err(problems.join("; "))
    }
}

fn main() {
    let criteria: [Criterion; 15] = [
        ("Wick unit and index law", Duration::from_secs(5), c1_wick_index_law),
        ("Gleason identity", Duration::from_secs(5), c2_gleason),
        ("Wick inversion", Duration::from_secs(30), c3_wick_inverse),
        ("Realization algebra oracles", Duration::from_secs(60), c4_realization_algebra),
        ("Word-enumeration oracle", Duration::from_secs(30), c5_word_oracle),
        ("Hyperholomorphy", Duration::from_secs(30), c6_hyperholomorphy),
        ("Realization bridge", Duration::from_secs(10), c7_bridge),
        ("Leibenzon contraction in Fock norm", Duration::from_secs(5), c8_fock_contraction),
        ("Arveson adjoint and sum identity", Duration::from_secs(5), c9_arveson_adjoint),
        ("Realization Leibenzon identity", Duration::from_secs(10), c10_leibenzon_realization),
        ("Blaschke kernel identity", Duration::from_secs(5), c11_blaschke),
        ("Arveson kernel coefficients", Duration::from_secs(5), c12_arveson_coefficients),
        ("K_q membership", Duration::from_secs(5), c13_kq),
        ("Monte Carlo orthogonality", Duration::from_secs(120), c14_monte_carlo),
        ("CLI determinism", Duration::from_secs(30), c15_cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; exceeded {budget:?}")),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("{status} {:>2} {name}: {detail} ({:.2} s)", i + 1, elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} of 15 criteria failed");
        std::process::exit(1);
    }
    println!("all 15 criteria passed");
}
