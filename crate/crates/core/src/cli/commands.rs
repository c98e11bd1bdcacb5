use std::io::Read;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{CliError, Command, KernelArg, SpaceArg};
use crate::error::Error;
use crate::fueter::{
    ck_extend, ck_product, ck_von_neumann_inv, dirac_apply, dirac_components, fueter_monomial, restrict, QPoly,
    QPolyMatrix, Quaternion, RealPoly4,
};
use crate::json::{
    coeff_to_json, dense_from_json, matrix_from_json, matrix_to_json, point_from_json, point_to_json,
    realization_to_json, series_from_json, series_to_json, AnyRealization, AnySeries, JsonScalar,
};
use crate::kernels::{
    agler_residual, arveson_kernel, blaschke, fock_kernel, kernel_gram, schur_gram, HermitianSquare, KernelFn,
    KernelGram, L2Point,
};
use crate::matrix::Matrix;
use crate::multiindex::MultiIndex;
use crate::realization::{is_rational_witness, Realization};
use crate::scalar::Rational;
use crate::series::{kq_membership, Basis, Space, TruncatedSeries};
use crate::whitenoise::{chaos_eval, hermite, hermite_eval, mc_inner_in, mc_series_moment};

type CliResult<T> = std::result::Result<T, CliError>;

/// Reads an input argument: inline JSON, `-` for stdin, or a file path.
fn load(arg: &str) -> CliResult<Value> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("cannot read standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("cannot read {arg}: {e}")))?
    };
    Ok(crate::json::parse(&text)?)
}

fn typed<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| CliError::Lib(Error::Invalid(format!("malformed {what}: {e}"))))
}

fn real_to_complex(f: &TruncatedSeries<f64>) -> TruncatedSeries<Complex64> {
    f.map_scalars(|x| Complex64::new(*x, 0.0))
}

fn real_to_quaternion(f: &TruncatedSeries<f64>) -> TruncatedSeries<Quaternion> {
    f.map_scalars(|x| Quaternion::real(*x))
}

enum SeriesPair {
    Real(TruncatedSeries<f64>, TruncatedSeries<f64>),
    Complex(TruncatedSeries<Complex64>, TruncatedSeries<Complex64>),
    Quaternion(TruncatedSeries<Quaternion>, TruncatedSeries<Quaternion>),
}

/// Brings two series into one ring, promoting real to the other ring.
fn unify_series(a: AnySeries, b: AnySeries) -> CliResult<SeriesPair> {
    use AnySeries as A;
    Ok(match (a, b) {
        (A::Real(f), A::Real(g)) => SeriesPair::Real(f, g),
        (A::Complex(f), A::Complex(g)) => SeriesPair::Complex(f, g),
        (A::Quaternion(f), A::Quaternion(g)) => SeriesPair::Quaternion(f, g),
        (A::Real(f), A::Complex(g)) => SeriesPair::Complex(real_to_complex(&f), g),
        (A::Complex(f), A::Real(g)) => SeriesPair::Complex(f, real_to_complex(&g)),
        (A::Real(f), A::Quaternion(g)) => SeriesPair::Quaternion(real_to_quaternion(&f), g),
        (A::Quaternion(f), A::Real(g)) => SeriesPair::Quaternion(f, real_to_quaternion(&g)),
        _ => return Err(Error::Invalid("cannot combine complex and quaternion data".into()).into()),
    })
}

enum RealizationPair {
    Real(Realization<f64>, Realization<f64>),
    Complex(Realization<Complex64>, Realization<Complex64>),
    Quaternion(Realization<Quaternion>, Realization<Quaternion>),
}

fn unify_realizations(a: AnyRealization, b: AnyRealization) -> CliResult<RealizationPair> {
    use AnyRealization as A;
    let c = |r: &Realization<f64>| r.map_scalars(|x| Complex64::new(*x, 0.0));
    let q = |r: &Realization<f64>| r.map_scalars(|x| Quaternion::real(*x));
    Ok(match (a, b) {
        (A::Real(f), A::Real(g)) => RealizationPair::Real(f, g),
        (A::Complex(f), A::Complex(g)) => RealizationPair::Complex(f, g),
        (A::Quaternion(f), A::Quaternion(g)) => RealizationPair::Quaternion(f, g),
        (A::Real(f), A::Complex(g)) => RealizationPair::Complex(c(&f), g),
        (A::Complex(f), A::Real(g)) => RealizationPair::Complex(f, c(&g)),
        (A::Real(f), A::Quaternion(g)) => RealizationPair::Quaternion(q(&f), g),
        (A::Quaternion(f), A::Real(g)) => RealizationPair::Quaternion(f, q(&g)),
        _ => return Err(Error::Invalid("cannot combine complex and quaternion data".into()).into()),
    })
}

macro_rules! each_series {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            AnySeries::Real($f) => $body,
            AnySeries::Complex($f) => $body,
            AnySeries::Quaternion($f) => $body,
        }
    };
}

macro_rules! each_series_pair {
    ($pair:expr, ($f:ident, $g:ident) => $body:expr) => {
        match $pair {
            SeriesPair::Real($f, $g) => $body,
            SeriesPair::Complex($f, $g) => $body,
            SeriesPair::Quaternion($f, $g) => $body,
        }
    };
}

macro_rules! each_realization {
    ($any:expr, $r:ident => $body:expr) => {
        match $any {
            AnyRealization::Real($r) => $body,
            AnyRealization::Complex($r) => $body,
            AnyRealization::Quaternion($r) => $body,
        }
    };
}

macro_rules! each_realization_pair {
    ($pair:expr, ($f:ident, $g:ident) => $body:expr) => {
        match $pair {
            RealizationPair::Real($f, $g) => $body,
            RealizationPair::Complex($f, $g) => $body,
            RealizationPair::Quaternion($f, $g) => $body,
        }
    };
}

fn series_arg(arg: &str) -> CliResult<AnySeries> {
    Ok(AnySeries::from_json(&load(arg)?)?)
}

fn realization_arg(arg: &str) -> CliResult<AnyRealization> {
    Ok(AnyRealization::from_json(&load(arg)?)?)
}

fn lowered<S: crate::scalar::Scalar>(f: TruncatedSeries<S>, degree: Option<u32>) -> TruncatedSeries<S> {
    match degree {
        Some(d) => f.truncate(d),
        None => f,
    }
}

fn number_json(x: f64) -> Value {
    json!(x)
}

fn real_poly_to_json<M: crate::scalar::Magnitude>(p: &RealPoly4<M>) -> Value {
    Value::Array(p.iter().map(|(e, v)| json!({"exps": e, "value": v.to_f64()})).collect())
}

fn qpoly_to_json<const V: usize>(p: &QPoly<V>) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn qmatrix_from_json(v: Value) -> CliResult<QPolyMatrix> {
    let rows: Vec<Vec<QPoly<4>>> = typed(v, "polynomial matrix")?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Shape("polynomial matrix rows differ in length".into()).into());
    }
    Ok(QPolyMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j].clone()))
}

fn qmatrix_to_json(m: &QPolyMatrix) -> Value {
    Value::Array(
        (0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| qpoly_to_json(m.get(i, j))).collect())).collect(),
    )
}

fn points_from_json(v: &Value) -> CliResult<Vec<L2Point>> {
    let arr = v.as_array().ok_or_else(|| Error::Invalid(format!("expected a list of points, got {v}")))?;
    Ok(arr.iter().map(point_from_json).collect::<crate::error::Result<_>>()?)
}

fn gram_json(g: &KernelGram) -> Value {
    json!({
        "points": g.points.len(),
        "gram": matrix_to_json(&g.gram),
        "min_eig": g.min_eig,
        "is_psd": g.is_psd(),
        "hermitian_defect": g.hermitian_defect,
    })
}

fn complex_multiplier(arg: &str) -> CliResult<Realization<Complex64>> {
    match realization_arg(arg)? {
        AnyRealization::Real(r) => Ok(r.map_scalars(|x| Complex64::new(*x, 0.0))),
        AnyRealization::Complex(r) => Ok(r),
        AnyRealization::Quaternion(_) => Err(Error::Invalid("multipliers are complex-valued".into()).into()),
    }
}

fn complex_series(v: &Value) -> CliResult<TruncatedSeries<Complex64>> {
    Ok(series_from_json::<Complex64>(v)?)
}

/// `Σ c_α H_α(x)` with real pairings `x`, in any ring.
fn chaos_value<S: JsonScalar>(f: &TruncatedSeries<S>, x: &[f64]) -> CliResult<Matrix<S>> {
    let (p, q) = f.shape();
    let mut out = Matrix::zeros(p, q);
    for (alpha, c) in f.terms() {
        let h = chaos_eval(alpha, x)?;
        out.add_assign(&c.scale_left(&S::from_real(h)));
    }
    Ok(out)
}

fn evaluate_series<S: JsonScalar>(f: &TruncatedSeries<S>, point: &Value) -> CliResult<Value> {
    let n = f.max_var() as usize;
    let value = match f.basis() {
        Basis::Chaos => chaos_value(f, &dense_from_json::<f64>(point, n)?)?,
        Basis::Monomial if S::PARTS == 4 => {
            let x = dense_from_json::<f64>(point, n)?;
            f.evaluate(&x.into_iter().map(S::from_real).collect::<Vec<_>>())?
        }
        Basis::Monomial => f.evaluate(&dense_from_json::<S>(point, n)?)?,
        Basis::Fueter => return Err(Error::Basis { expected: Basis::Monomial, found: Basis::Fueter }.into()),
    };
    Ok(json!({ "value": coeff_to_json(&value) }))
}

fn eval_realization<S: JsonScalar>(r: &Realization<S>, point: &Value) -> CliResult<Value> {
    let n = r.num_vars();
    let z: Vec<S> = if S::PARTS == 4 {
        dense_from_json::<f64>(point, n)?.into_iter().map(S::from_real).collect()
    } else {
        dense_from_json::<S>(point, n)?
    };
    let e = r.eval(&z)?;
    Ok(json!({ "value": matrix_to_json(&e.value), "condition": e.condition }))
}

/// Max over real components of the Gleason residual, in exact arithmetic
/// on the exact binary values of the coefficients.
fn gleason_max<S: JsonScalar>(f: &TruncatedSeries<S>) -> CliResult<f64> {
    let mut worst: f64 = 0.0;
    for part in 0..S::PARTS {
        let exact = f.map_scalars(|x| Rational::from_float(x.part(part)).expect("coefficients are finite"));
        let residual = exact.gleason_residual()?;
        for (_, c) in residual.terms() {
            for v in c.entries() {
                worst = worst.max(v.to_f64().unwrap_or(f64::INFINITY).abs());
            }
        }
    }
    Ok(worst)
}

fn leibenzon_realization<S: JsonScalar>(
    r: &Realization<S>,
    inject: Option<&Value>,
    k: u32,
    degree: u32,
) -> CliResult<Value> {
    let n = r.state_dim();
    let f = match inject {
        Some(v) => matrix_from_json::<S>(v, None)?,
        None => Matrix::identity(n),
    };
    let residual = r.leibenzon_identity_residual(&f, k, degree)?;
    Ok(json!({ "residual": series_to_json(&residual), "max_residual": residual.max_abs_coeff() }))
}

fn norms_json<S: JsonScalar>(f: &TruncatedSeries<S>, q: i32) -> Value {
    let r = f.norms(q).roots();
    json!({
        "q": q,
        "white_noise": r.white_noise,
        "p_space": r.p_space,
        "arveson": r.arveson,
        "fock": r.fock,
        "kondratiev": r.kondratiev,
        "hida": r.hida,
    })
}

fn hermite_poly_json(n: usize, at: Option<f64>) -> CliResult<Value> {
    let h = hermite(n);
    let coeffs: Vec<Value> = h
        .coeffs()
        .iter()
        .map(|c: &BigInt| match c.to_i64() {
            Some(v) => json!(v),
            None => json!(c.to_string()),
        })
        .collect();
    let mut out = json!({ "degree": h.degree(), "coeffs": coeffs });
    if let Some(x) = at {
        let n = u32::try_from(n).map_err(|_| Error::Invalid("degree too large".into()))?;
        out["value"] = number_json(hermite_eval(n, x));
    }
    Ok(out)
}

fn multi_index(text: &str) -> CliResult<MultiIndex> {
    typed(crate::json::parse(text)?, "multi-index")
}

pub(super) fn execute(cmd: &Command) -> CliResult<Value> {
    match cmd {
        Command::WickMul { f, g, power, degree, scale } => {
            let f = series_arg(f)?;
            let result = match (g, power) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Usage("give either a second series or --power, not both".into()))
                }
                (Some(g), None) => each_series_pair!(unify_series(f, series_arg(g)?)?, (f, g) => {
                    let p = lowered(f, *degree).wick_mul(&lowered(g, *degree))?;
                    scaled(p, *scale)?
                }),
                (None, Some(n)) => each_series!(f, f => {
                    let p = lowered(f, *degree).wick_pow(*n)?;
                    scaled(p, *scale)?
                }),
                (None, None) => each_series!(f, f => {
                    let p = lowered(f, *degree);
                    scaled(p, *scale)?
                }),
            };
            Ok(result)
        }
        Command::WickInv { f, degree } => {
            each_series!(series_arg(f)?, f => Ok(series_to_json(&lowered(f, *degree).wick_inv()?)))
        }
        Command::Hermite { f, poly, at } => match (f, poly) {
            (None, Some(n)) => hermite_poly_json(*n, *at),
            (Some(f), None) => each_series!(series_arg(f)?, f => {
                let out = match f.basis() {
                    Basis::Chaos => f.hermite_transform()?,
                    Basis::Monomial => f.inverse_hermite()?,
                    Basis::Fueter => {
                        return Err(Error::Basis { expected: Basis::Chaos, found: Basis::Fueter }.into())
                    }
                };
                Ok(series_to_json(&out))
            }),
            _ => Err(CliError::Usage("give a series or --poly n".into())),
        },
        Command::Evaluate { f, point } => {
            let point = load(point)?;
            match series_arg(f)? {
                AnySeries::Real(f)
                    if f.basis() == Basis::Monomial
                        && dense_from_json::<f64>(&point, f.max_var() as usize).is_err() =>
                {
                    evaluate_series(&real_to_complex(&f), &point)
                }
                any => each_series!(any, f => evaluate_series(&f, &point)),
            }
        }
        Command::Norms { f, g, q, space } => {
            let f = series_arg(f)?;
            match g {
                None => Ok(each_series!(f, f => norms_json(&f, *q))),
                Some(g) => {
                    let sp = match space {
                        SpaceArg::P => Space::P,
                        SpaceArg::WhiteNoise => Space::WhiteNoise,
                        SpaceArg::Arveson => Space::Arveson,
                        SpaceArg::Fock => Space::Fock,
                    };
                    each_series_pair!(unify_series(f, series_arg(g)?)?, (f, g) => {
                        let ip = f.inner_product(&g, sp)?;
                        Ok(json!({ "space": space_name(*space), "inner_product": ip.to_json() }))
                    })
                }
            }
        }
        Command::Leibenzon { input, var, inject, degree } => {
            if *var == 0 {
                return Err(Error::Invalid("variables are 1-based".into()).into());
            }
            let doc = load(input)?;
            if doc.get("D").is_some() {
                let inject = inject.as_deref().map(load).transpose()?;
                each_realization!(AnyRealization::from_json(&doc)?, r => leibenzon_realization(&r, inject.as_ref(), *var, *degree))
            } else {
                if inject.is_some() {
                    return Err(CliError::Usage("--inject applies to realizations only".into()));
                }
                each_series!(AnySeries::from_json(&doc)?, f => Ok(series_to_json(&f.leibenzon(*var))))
            }
        }
        Command::GleasonCheck { f } => {
            let worst = each_series!(series_arg(f)?, f => gleason_max(&f)?);
            Ok(json!({ "max_residual": worst }))
        }
        Command::KqMember { point, q, delta } => {
            let p = point_from_json(&load(point)?)?;
            let abs: Vec<f64> = p.to_dense(p.max_position() as usize).iter().map(|z| z.norm()).collect();
            let m = kq_membership(&abs, *q, *delta);
            Ok(json!({ "inside": m.inside, "value": m.value }))
        }
        Command::RealizeSeries { r, degree, basis, check, tol } => {
            let r = realization_arg(r)?;
            let basis = Basis::from(*basis);
            match check {
                None => each_realization!(r, r => Ok(series_to_json(&r.to_series(*degree, basis)?))),
                Some(f) => {
                    let f = series_arg(f)?;
                    let witness = match (r, f) {
                        (AnyRealization::Real(r), AnySeries::Real(f)) => is_rational_witness(&f, &r, *tol),
                        (AnyRealization::Complex(r), AnySeries::Complex(f)) => is_rational_witness(&f, &r, *tol),
                        (AnyRealization::Quaternion(r), AnySeries::Quaternion(f)) => is_rational_witness(&f, &r, *tol),
                        (AnyRealization::Real(r), AnySeries::Complex(f)) => {
                            is_rational_witness(&f, &r.map_scalars(|x| Complex64::new(*x, 0.0)), *tol)
                        }
                        (AnyRealization::Complex(r), AnySeries::Real(f)) => {
                            is_rational_witness(&real_to_complex(&f), &r, *tol)
                        }
                        (AnyRealization::Real(r), AnySeries::Quaternion(f)) => {
                            is_rational_witness(&f, &r.map_scalars(|x| Quaternion::real(*x)), *tol)
                        }
                        (AnyRealization::Quaternion(r), AnySeries::Real(f)) => {
                            is_rational_witness(&real_to_quaternion(&f), &r, *tol)
                        }
                        _ => return Err(Error::Invalid("cannot combine complex and quaternion data".into()).into()),
                    };
                    Ok(json!({ "witness": witness }))
                }
            }
        }
        Command::RealizeEval { r, point } => {
            let point = load(point)?;
            match realization_arg(r)? {
                AnyRealization::Real(r) if dense_from_json::<f64>(&point, r.num_vars()).is_err() => {
                    eval_realization(&r.map_scalars(|x| Complex64::new(*x, 0.0)), &point)
                }
                any => each_realization!(any, r => eval_realization(&r, &point)),
            }
        }
        Command::RealizeProduct { r1, r2 } => {
            let pair = unify_realizations(realization_arg(r1)?, realization_arg(r2)?)?;
            each_realization_pair!(pair, (a, b) => Ok(realization_to_json(&a.product(&b)?)))
        }
        Command::RealizeSum { r1, r2 } => {
            let pair = unify_realizations(realization_arg(r1)?, realization_arg(r2)?)?;
            each_realization_pair!(pair, (a, b) => Ok(realization_to_json(&a.sum(&b)?)))
        }
        Command::RealizeInverse { r } => {
            each_realization!(realization_arg(r)?, r => Ok(realization_to_json(&r.inverse()?)))
        }
        Command::CkExtend { phi, restrict: only_restrict } => {
            let v = load(phi)?;
            if *only_restrict {
                let f: QPoly<4> = typed(v, "polynomial in (x0, x1, x2, x3)")?;
                Ok(qpoly_to_json(&restrict(&f)))
            } else {
                let p: QPoly<3> = typed(v, "polynomial in (x1, x2, x3)")?;
                Ok(qpoly_to_json(&ck_extend(&p)))
            }
        }
        Command::CkProduct { f, g, von_neumann, degree } => {
            if *von_neumann {
                if g.is_some() {
                    return Err(CliError::Usage("--von-neumann takes a single matrix".into()));
                }
                let m = qmatrix_from_json(load(f)?)?;
                Ok(qmatrix_to_json(&ck_von_neumann_inv(&m, *degree)?))
            } else {
                let g = g.as_deref().ok_or_else(|| CliError::Usage("ck-product needs two polynomials".into()))?;
                let f: QPoly<4> = typed(load(f)?, "polynomial")?;
                let g: QPoly<4> = typed(load(g)?, "polynomial")?;
                Ok(qpoly_to_json(&ck_product(&f, &g)))
            }
        }
        Command::DiracCheck { f, tol } => {
            let f: QPoly<4> = typed(load(f)?, "polynomial")?;
            let d = dirac_apply(&f);
            let comps = dirac_components(&f);
            let max = d.max_abs_coeff();
            Ok(json!({
                "residual": qpoly_to_json(&d),
                "components": comps.iter().map(real_poly_to_json).collect::<Vec<_>>(),
                "max_residual": max,
                "hyperholomorphic": max <= *tol,
            }))
        }
        Command::FueterMonomial { alpha } => {
            let a: [u32; 3] = typed(crate::json::parse(alpha)?, "exponent triple [a, b, c]")?;
            Ok(qpoly_to_json(&fueter_monomial::<Quaternion>(a)))
        }
        Command::KernelGram { points, kernel, multiplier } => {
            let pts = points_from_json(&load(points)?)?;
            let g = match kernel {
                KernelArg::Arveson => kernel_gram(&pts, arveson_kernel)?,
                KernelArg::Fock => kernel_gram(&pts, |z, w| Ok(fock_kernel(z, w)))?,
                KernelArg::Schur => {
                    let m = multiplier
                        .as_deref()
                        .ok_or_else(|| CliError::Usage("--kernel schur needs --multiplier".into()))?;
                    schur_gram(&complex_multiplier(m)?, &pts)?
                }
            };
            if multiplier.is_some() && *kernel != KernelArg::Schur {
                return Err(CliError::Usage("--multiplier applies to --kernel schur only".into()));
            }
            Ok(gram_json(&g))
        }
        Command::BlaschkeCheck { points, center } => {
            let pts = points_from_json(&load(points)?)?;
            let a = point_from_json(&load(center)?)?;
            let images = pts.iter().map(|z| blaschke(&a, z)).collect::<crate::error::Result<Vec<_>>>()?;
            let one = Complex64::new(1.0, 0.0);
            let s = a.norm_sqr();
            let mut worst: f64 = 0.0;
            for (i, z) in pts.iter().enumerate() {
                for (j, w) in pts.iter().enumerate() {
                    let lhs = one - images[i].inner(&images[j]);
                    let rhs = (one - z.inner(w)) * (1.0 - s) / ((one - z.inner(&a)) * (one - a.inner(w)));
                    let err = (lhs - rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE);
                    worst = worst.max(err);
                }
            }
            let g = kernel_gram(&images, arveson_kernel)?;
            Ok(json!({
                "points": pts.len(),
                "images": images.iter().map(point_to_json).collect::<Vec<_>>(),
                "max_relative_error": worst,
                "min_eig": g.min_eig,
                "is_psd": g.is_psd(),
            }))
        }
        Command::AglerCheck { multiplier, kernels, points } => {
            let s = complex_multiplier(multiplier)?;
            let kdoc = load(kernels)?;
            let list =
                kdoc.as_array().ok_or_else(|| Error::Invalid("kernels must be a list of factor lists".into()))?;
            let ks = list
                .iter()
                .map(|factors| {
                    let fs = factors
                        .as_array()
                        .ok_or_else(|| CliError::Lib(Error::Invalid("each kernel is a list of series".into())))?;
                    Ok(HermitianSquare { factors: fs.iter().map(complex_series).collect::<CliResult<_>>()? })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let refs: Vec<&dyn KernelFn> = ks.iter().map(|k| k as &dyn KernelFn).collect();
            let pts = points_from_json(&load(points)?)?;
            Ok(json!({ "max_residual": agler_residual(&s, &refs, &pts)? }))
        }
        Command::McInner { alpha, beta, max_var, mc } => {
            let (a, b) = (multi_index(alpha)?, multi_index(beta)?);
            let e = mc_inner_in(*max_var, &a, &b, mc.samples, mc.seed)?;
            Ok(serde_json::to_value(e).expect("estimates serialize"))
        }
        Command::McMoment { f, mc } => match series_arg(f)? {
            AnySeries::Real(f) => {
                Ok(serde_json::to_value(mc_series_moment(&f, mc.samples, mc.seed)?).expect("estimates serialize"))
            }
            _ => Err(Error::Invalid("mc-moment needs a real chaos series".into()).into()),
        },
    }
}

fn space_name(s: SpaceArg) -> &'static str {
    match s {
        SpaceArg::P => "p",
        SpaceArg::WhiteNoise => "white_noise",
        SpaceArg::Arveson => "arveson",
        SpaceArg::Fock => "fock",
    }
}

fn scaled<S: JsonScalar>(f: TruncatedSeries<S>, scale: Option<f64>) -> CliResult<Value> {
    Ok(series_to_json(&match scale {
        Some(l) => f.scale(&S::from_real(l)),
        None => f,
    }))
}
