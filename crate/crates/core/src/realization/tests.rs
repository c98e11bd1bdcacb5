use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::multiindex::enumerate;
use crate::scalar::{ratio, Rational};

fn q(n: i64) -> Rational {
    ratio(n, 1)
}

fn scalar_mat<S: Scalar>(x: S) -> Matrix<S> {
    Matrix::scalar(x)
}

fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, |_, _| q(rng.random_range(-2..=2)))
}

fn random_float_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, s: f64) -> Matrix<f64> {
    Matrix::from_fn(rows, cols, |_, _| rng.random_range(-s..s))
}

fn random_exact(rng: &mut ChaCha8Rng, n: usize, m: usize, p: usize, qd: usize) -> Realization<Rational> {
    Realization::new(
        random_int_matrix(rng, p, qd),
        random_int_matrix(rng, p, n),
        (0..m).map(|_| random_int_matrix(rng, n, n)).collect(),
        (0..m).map(|_| random_int_matrix(rng, n, qd)).collect(),
    )
    .unwrap()
}

fn random_float(rng: &mut ChaCha8Rng, n: usize, m: usize, p: usize, qd: usize) -> Realization<f64> {
    Realization::new(
        random_float_matrix(rng, p, qd, 1.0),
        random_float_matrix(rng, p, n, 1.0),
        (0..m).map(|_| random_float_matrix(rng, n, n, 0.5)).collect(),
        (0..m).map(|_| random_float_matrix(rng, n, qd, 1.0)).collect(),
    )
    .unwrap()
}

fn scalar_example() -> Realization<f64> {
    Realization::new(scalar_mat(0.0), scalar_mat(1.0), vec![scalar_mat(2.0)], vec![scalar_mat(3.0)]).unwrap()
}

fn negate<S: Scalar>(r: &Realization<S>) -> Realization<S> {
    Realization::new(r.d().neg(), r.c().neg(), r.a().to_vec(), r.b().to_vec()).unwrap()
}

#[test]
fn series_examples() {
    let s = scalar_example().to_series(3, Basis::Monomial).unwrap();
    let expected = TruncatedSeries::from_scalars(
        Basis::Monomial,
        3,
        1,
        [(1u32, 3.0), (2, 6.0), (3, 12.0)].map(|(k, v)| (MultiIndex::from_pairs([(1, k)]).unwrap(), v)),
    )
    .unwrap();
    assert_eq!(s, expected);

    let d = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]], 2).unwrap();
    let s = Realization::constant(d.clone()).to_series(4, Basis::Chaos).unwrap();
    assert_eq!(s, TruncatedSeries::constant(Basis::Chaos, 4, 0, d));

    let zero = Matrix::scalar(q(0));
    let one = Matrix::scalar(q(1));
    let r = Realization::new(zero.clone(), one.clone(), vec![zero.clone(), zero], vec![one.clone(), one]).unwrap();
    let s = r.to_series(2, Basis::Monomial).unwrap();
    let expected = TruncatedSeries::from_scalars(
        Basis::Monomial,
        2,
        2,
        [(MultiIndex::unit(1), q(1)), (MultiIndex::unit(2), q(1))],
    )
    .unwrap();
    assert_eq!(s, expected);
}

#[test]
fn constructor_validates_shapes() {
    let m = |r, c| Matrix::<f64>::zeros(r, c);
    assert!(matches!(Realization::new(m(2, 1), m(1, 3), vec![], vec![]), Err(Error::Shape(_))));
    assert!(matches!(Realization::new(m(1, 1), m(1, 2), vec![m(2, 2)], vec![]), Err(Error::Shape(_))));
    assert!(matches!(Realization::new(m(1, 1), m(1, 2), vec![m(2, 3)], vec![m(2, 1)]), Err(Error::Shape(_))));
    assert!(matches!(Realization::new(m(1, 1), m(1, 2), vec![m(2, 2)], vec![m(2, 2)]), Err(Error::Shape(_))));
    assert!(Realization::new(m(1, 1), m(1, 2), vec![m(2, 2)], vec![m(2, 1)]).is_ok());
}

#[test]
fn eval_examples() {
    let r = scalar_example();
    assert_eq!(r.eval(&[0.0]).unwrap().value, scalar_mat(0.0));
    let v = r.eval(&[0.1]).unwrap();
    assert!((v.value.get(0, 0) - 0.375).abs() < 1e-15);
    assert!(v.condition >= 1.0);
    assert!(matches!(r.eval(&[0.5]), Err(Error::Singular(_))));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let r = random_float(&mut rng, 3, 2, 2, 2);
    assert_eq!(r.eval(&[]).unwrap().value, *r.d());
}

// ‖zA‖ ≤ ρ < 1 bounds the tail of the series by C ρ^{d+1} / (1 − ρ).
#[test]
fn eval_agrees_with_partial_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let r = random_float(&mut rng, 3, 3, 2, 2);
    let series: Vec<_> = (0..=10).map(|d| r.to_series(d, Basis::Monomial).unwrap()).collect();
    for _ in 0..50 {
        let z: Vec<f64> = (0..3).map(|_| rng.random_range(-0.1..0.1)).collect();
        let exact = r.eval(&z).unwrap().value;
        let rho: f64 = r.a().iter().zip(&z).map(|(a, zk)| a.frobenius() * zk.abs()).sum();
        assert!(rho < 0.5);
        let scale = r.c().frobenius() * r.b().iter().map(|b| b.frobenius()).sum::<f64>();
        let mut prev = f64::INFINITY;
        for (d, s) in series.iter().enumerate() {
            let err = s.evaluate(&z).unwrap().max_abs_diff(&exact);
            let bound = scale * rho.powi(d as i32) * z.iter().map(|x| x.abs()).fold(0.0, f64::max) / (1.0 - rho);
            assert!(err <= bound + 1e-14, "d={d}: {err} > {bound}");
            if d <= 6 {
                assert!(err <= prev + 1e-15);
            }
            prev = err;
        }
    }
}

#[test]
fn product_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let r = random_exact(&mut rng, 3, 2, 2, 2);
    let unit = Realization::constant(Matrix::identity(2));
    assert_eq!(
        r.product(&unit).unwrap().to_series(6, Basis::Monomial).unwrap(),
        r.to_series(6, Basis::Monomial).unwrap()
    );
    assert_eq!(
        unit.product(&r).unwrap().to_series(6, Basis::Monomial).unwrap(),
        r.to_series(6, Basis::Monomial).unwrap()
    );

    for _ in 0..10 {
        let r1 = random_exact(&mut rng, 2, 2, 1, 1);
        let r2 = random_exact(&mut rng, 3, 2, 1, 1);
        let p = r1.product(&r2).unwrap();
        assert_eq!(p.state_dim(), 5);
        let lhs = p.to_series(6, Basis::Monomial).unwrap();
        let rhs =
            r1.to_series(6, Basis::Monomial).unwrap().wick_mul(&r2.to_series(6, Basis::Monomial).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    let mut r1 = random_exact(&mut rng, 2, 2, 2, 3);
    let mut r2 = random_exact(&mut rng, 1, 2, 3, 1);
    r1 = Realization::new(Matrix::zeros(2, 3), r1.c().clone(), r1.a().to_vec(), r1.b().to_vec()).unwrap();
    r2 = Realization::new(Matrix::zeros(3, 1), r2.c().clone(), r2.a().to_vec(), r2.b().to_vec()).unwrap();
    let p = r1.product(&r2).unwrap().to_series(3, Basis::Monomial).unwrap();
    assert!(p.constant_term().is_zero());
    assert!(matches!(r2.product(&r2), Err(Error::Shape(_))));
}

#[test]
fn product_pads_variable_lists() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let r1 = random_exact(&mut rng, 2, 1, 2, 2);
    let r2 = random_exact(&mut rng, 2, 3, 2, 2);
    let p = r1.product(&r2).unwrap();
    assert_eq!(p.num_vars(), 3);
    let s1 = r1.pad_vars(3).to_series(4, Basis::Monomial).unwrap();
    let s2 = r2.to_series(4, Basis::Monomial).unwrap();
    assert_eq!(p.to_series(4, Basis::Monomial).unwrap(), s1.wick_mul(&s2).unwrap());
}

#[test]
fn sum_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let r = random_exact(&mut rng, 3, 2, 2, 2);
    let s = r.sum(&negate(&r)).unwrap().to_series(5, Basis::Monomial).unwrap();
    assert!(s.is_empty());
    let zero = Realization::constant(Matrix::<Rational>::zeros(2, 2));
    assert_eq!(r.sum(&zero).unwrap().to_series(5, Basis::Monomial).unwrap(), r.to_series(5, Basis::Monomial).unwrap());
    for _ in 0..10 {
        let r1 = random_exact(&mut rng, 2, 2, 2, 1);
        let r2 = random_exact(&mut rng, 3, 3, 2, 1);
        let lhs = r1.sum(&r2).unwrap().to_series(6, Basis::Monomial).unwrap();
        let s1 = r1.pad_vars(3).to_series(6, Basis::Monomial).unwrap();
        let rhs = s1.add(&r2.to_series(6, Basis::Monomial).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
    let other = random_exact(&mut rng, 1, 1, 1, 2);
    assert!(matches!(r.sum(&other), Err(Error::Shape(_))));
}

#[test]
fn inverse_examples() {
    let d = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(1)]], 2).unwrap();
    let inv = Realization::constant(d.clone()).inverse().unwrap();
    assert_eq!(inv.to_series(3, Basis::Monomial).unwrap().constant_term(), d.inverse().unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..10 {
        let r = random_exact(&mut rng, 3, 2, 1, 1);
        let r = Realization::new(Matrix::scalar(q(1)), r.c().clone(), r.a().to_vec(), r.b().to_vec()).unwrap();
        let series = r.to_series(6, Basis::Monomial).unwrap();
        let inv = r.inverse().unwrap();
        assert_eq!(inv.to_series(6, Basis::Monomial).unwrap(), series.wick_inv().unwrap());
        assert_eq!(inv.inverse().unwrap().to_series(6, Basis::Monomial).unwrap(), series);
    }

    let singular = Realization::constant(Matrix::<Rational>::zeros(2, 2));
    assert!(matches!(singular.inverse(), Err(Error::Singular(_))));
    let rect = Realization::constant(Matrix::<Rational>::zeros(2, 3));
    assert!(matches!(rect.inverse(), Err(Error::Shape(_))));
}

#[test]
fn matrix_inverse_over_quaternions() {
    use crate::fueter::Quaternion;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut mat = |r: usize, c: usize, s: f64| {
        Matrix::from_fn(r, c, |_, _| Quaternion(std::array::from_fn(|_| rng.random_range(-s..s))))
    };
    let d = Matrix::identity(2).add(&mat(2, 2, 0.3));
    let r =
        Realization::new(d, mat(2, 2, 1.0), vec![mat(2, 2, 0.5), mat(2, 2, 0.5)], vec![mat(2, 2, 1.0), mat(2, 2, 1.0)])
            .unwrap();
    let series = r.to_series(5, Basis::Monomial).unwrap();
    let inv = r.inverse().unwrap().to_series(5, Basis::Monomial).unwrap();
    let id = TruncatedSeries::identity(Basis::Monomial, 5, 2, 2);
    assert!(series.wick_mul(&inv).unwrap().max_abs_diff(&id) < 1e-10);
    assert!(inv.wick_mul(&series).unwrap().max_abs_diff(&id) < 1e-10);
}

// Coefficient of z^α: Σ over words w with content α of C A_{w₁}⋯A_{w_{n−1}} B_{w_n}.
fn word_sum(r: &Realization<Rational>, alpha: &MultiIndex) -> Matrix<Rational> {
    let (p, qd) = r.shape();
    if alpha.is_zero() {
        return r.d().clone();
    }
    let mut acc = Matrix::zeros(p, qd);
    let mut stack: Vec<(Vec<usize>, MultiIndex)> = vec![(Vec::new(), alpha.clone())];
    while let Some((word, rest)) = stack.pop() {
        if rest.is_zero() {
            let (&last, init) = word.split_last().unwrap();
            let mut m = r.c().clone();
            for &k in init {
                m = m.mul(&r.a()[k]);
            }
            acc = acc.add(&m.mul(&r.b()[last]));
            continue;
        }
        for &(pos, _) in rest.entries() {
            let mut w = word.clone();
            w.push(pos as usize - 1);
            stack.push((w, rest.decrement(pos).unwrap()));
        }
    }
    acc
}

#[test]
fn coefficients_match_word_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for n in 0..=3 {
        for m in 1..=3 {
            let r = random_exact(&mut rng, n, m, 2, 1);
            let series = r.to_series(4, Basis::Monomial).unwrap();
            for alpha in enumerate(4, m as u32) {
                assert_eq!(series.coeff_or_zero(&alpha), word_sum(&r, &alpha), "alpha = {alpha}");
            }
        }
    }
}

// Polynomials in one matrix commute with each other.
fn commuting_family(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Matrix<f64>> {
    let t = random_float_matrix(rng, n, n, 0.5);
    let t2 = t.mul(&t);
    (0..m)
        .map(|_| {
            let (a, b, c) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            Matrix::identity(n).scale_left(&a).add(&t.scale_left(&b)).add(&t2.scale_left(&c))
        })
        .collect()
}

#[test]
fn leibenzon_identity_with_commuting_state_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..20 {
        let n = 3;
        let a = commuting_family(&mut rng, n, 2);
        let b = vec![Matrix::zeros(n, 1); 2];
        let r = Realization::new(Matrix::zeros(1, 1), random_float_matrix(&mut rng, 1, n, 1.0), a, b).unwrap();
        let f = random_float_matrix(&mut rng, n, 1, 1.0);
        for k in 1..=3 {
            let res = r.leibenzon_identity_residual(&f, k, 5).unwrap();
            assert!(res.max_abs_coeff() <= 1e-10, "k={k}: {}", res.max_abs_coeff());
            if k == 3 {
                assert!(res.is_empty());
            }
        }
    }
    let zero_a = Realization::new(
        Matrix::zeros(1, 1),
        Matrix::from_rows(vec![vec![1.0, 2.0]], 2).unwrap(),
        vec![Matrix::zeros(2, 2)],
        vec![Matrix::zeros(2, 1)],
    )
    .unwrap();
    let f = Matrix::from_rows(vec![vec![1.0], vec![-1.0]], 1).unwrap();
    assert!(zero_a.leibenzon_identity_residual(&f, 1, 4).unwrap().is_empty());
}

#[test]
fn leibenzon_identity_needs_commuting_state_matrices() {
    let e12 = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(0), q(0)]], 2).unwrap();
    let e21 = Matrix::from_rows(vec![vec![q(0), q(0)], vec![q(1), q(0)]], 2).unwrap();
    let r = Realization::new(
        Matrix::zeros(1, 1),
        Matrix::from_rows(vec![vec![q(1), q(0)]], 2).unwrap(),
        vec![e12, e21],
        vec![Matrix::zeros(2, 1); 2],
    )
    .unwrap();
    let f = Matrix::from_rows(vec![vec![q(1)], vec![q(0)]], 1).unwrap();
    assert!(!r.leibenzon_identity_residual(&f, 1, 4).unwrap().is_empty());
}

#[test]
fn witness_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let r = random_float(&mut rng, 3, 2, 1, 1);
    let f = r.to_series(5, Basis::Monomial).unwrap();
    assert!(is_rational_witness(&f, &r, 1e-12));
    let bump = TruncatedSeries::from_scalars(Basis::Monomial, 5, 2, [(MultiIndex::unit(2), 1.0)]).unwrap();
    assert!(!is_rational_witness(&f.add(&bump).unwrap(), &r, 1e-12));
    let chaos = r.to_series(5, Basis::Chaos).unwrap();
    assert!(is_rational_witness(&chaos, &r, 1e-12));
    assert_eq!(chaos.clone().with_basis(Basis::Monomial), f);
    assert_eq!(r.to_series(5, Basis::Fueter).unwrap().with_basis(Basis::Monomial), f);
}

#[test]
fn complex_scalars_round_trip_through_map() {
    use num_complex::Complex64;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let r = random_float(&mut rng, 2, 2, 1, 1);
    let c = r.map_scalars(|x| Complex64::new(*x, 0.0));
    let z = [Complex64::new(0.05, 0.02), Complex64::new(-0.03, 0.01)];
    let via_series = c.to_series(12, Basis::Monomial).unwrap().evaluate(&z).unwrap();
    assert!(c.eval(&z).unwrap().value.max_abs_diff(&via_series) < 1e-12);
}
