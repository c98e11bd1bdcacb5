//! JSON interchange for series, realizations, points and matrices.
//!
//! Scalars are written per ring: a number (real), `[re, im]` (complex) or
//! `[w, x, y, z]` (quaternion). Real numbers are accepted wherever a
//! complex or quaternion scalar is expected. Floats are printed with 17
//! significant digits by [`to_string`]; exact zero is printed as `0`.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fueter::Quaternion;
use crate::kernels::L2Point;
use crate::matrix::Matrix;
use crate::multiindex::MultiIndex;
use crate::realization::Realization;
use crate::scalar::Scalar;
use crate::series::{Basis, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    #[default]
    Real,
    Complex,
    Quaternion,
}

/// Scalars with a JSON form.
pub trait JsonScalar: Scalar {
    const RING: Ring;
    /// Number of real components.
    const PARTS: usize;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
    fn part(&self, i: usize) -> f64;
    fn from_real(x: f64) -> Self;
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn number(v: &Value) -> Result<f64> {
    let x = v.as_f64().ok_or_else(|| invalid(format!("expected a number, got {v}")))?;
    if !x.is_finite() {
        return Err(invalid("non-finite number"));
    }
    Ok(x)
}

fn components<const K: usize>(v: &Value) -> Result<[f64; K]> {
    if v.is_number() {
        let mut out = [0.0; K];
        out[0] = number(v)?;
        return Ok(out);
    }
    let arr = v
        .as_array()
        .filter(|a| a.len() == K)
        .ok_or_else(|| invalid(format!("expected a number or an array of {K} numbers, got {v}")))?;
    let mut out = [0.0; K];
    for (o, x) in out.iter_mut().zip(arr) {
        *o = number(x)?;
    }
    Ok(out)
}

impl JsonScalar for f64 {
    const RING: Ring = Ring::Real;
    const PARTS: usize = 1;
    fn part(&self, _: usize) -> f64 {
        *self
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn to_json(&self) -> Value {
        json!(*self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        number(v)
    }
}

impl JsonScalar for Complex64 {
    const RING: Ring = Ring::Complex;
    const PARTS: usize = 2;
    fn part(&self, i: usize) -> f64 {
        [self.re, self.im][i]
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn to_json(&self) -> Value {
        json!([self.re, self.im])
    }
    fn from_json(v: &Value) -> Result<Self> {
        let [re, im] = components::<2>(v)?;
        Ok(Complex64::new(re, im))
    }
}

impl JsonScalar for Quaternion {
    const RING: Ring = Ring::Quaternion;
    const PARTS: usize = 4;
    fn part(&self, i: usize) -> f64 {
        self.0[i]
    }
    fn from_real(x: f64) -> Self {
        Quaternion::real(x)
    }
    fn to_json(&self) -> Value {
        json!(self.0)
    }
    fn from_json(v: &Value) -> Result<Self> {
        Ok(Quaternion(components::<4>(v)?))
    }
}

pub fn matrix_to_json<S: JsonScalar>(m: &Matrix<S>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(S::to_json).collect())).collect())
}

/// Nested rows; `cols` fixes the width of an empty row list.
pub fn matrix_from_json<S: JsonScalar>(v: &Value, cols: Option<usize>) -> Result<Matrix<S>> {
    let rows = v.as_array().ok_or_else(|| invalid(format!("expected a matrix (array of rows), got {v}")))?;
    let width = match (rows.first(), cols) {
        (Some(r), _) => r.as_array().map(Vec::len).ok_or_else(|| invalid("matrix rows must be arrays"))?,
        (None, Some(c)) => c,
        (None, None) => 0,
    };
    if let Some(c) = cols {
        if c != width {
            return Err(Error::Shape(format!("expected {c} columns, got {width}")));
        }
    }
    let parsed = rows
        .iter()
        .map(|r| {
            let r = r.as_array().ok_or_else(|| invalid("matrix rows must be arrays"))?;
            r.iter().map(S::from_json).collect::<Result<Vec<S>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed, width)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesDoc {
    basis: Basis,
    degree: u32,
    max_var: u32,
    shape: [usize; 2],
    ring: Ring,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    alpha: MultiIndex,
    value: Value,
}

/// A scalar for 1×1 matrices, nested rows otherwise.
pub fn coeff_to_json<S: JsonScalar>(m: &Matrix<S>) -> Value {
    match m.as_scalar() {
        Some(s) => s.to_json(),
        None => matrix_to_json(m),
    }
}

fn coeff_from_json<S: JsonScalar>(v: &Value, shape: (usize, usize)) -> Result<Matrix<S>> {
    if shape == (1, 1) {
        if let Ok(s) = S::from_json(v) {
            return Ok(Matrix::scalar(s));
        }
    }
    let m = matrix_from_json(v, Some(shape.1))?;
    if m.shape() != shape {
        return Err(Error::Shape(format!("coefficient is {:?}, series is {shape:?}", m.shape())));
    }
    Ok(m)
}

fn ring_matches<S: JsonScalar>(ring: Ring) -> Result<()> {
    if ring == S::RING || ring == Ring::Real {
        Ok(())
    } else {
        Err(invalid(format!("cannot read a {ring:?} document as {:?}", S::RING)))
    }
}

pub fn series_to_json<S: JsonScalar>(f: &TruncatedSeries<S>) -> Value {
    let (p, q) = f.shape();
    let doc = SeriesDoc {
        basis: f.basis(),
        degree: f.degree(),
        max_var: f.max_var(),
        shape: [p, q],
        ring: S::RING,
        terms: f.terms().map(|(a, c)| TermDoc { alpha: a.clone(), value: coeff_to_json(c) }).collect(),
    };
    serde_json::to_value(doc).expect("series documents serialize")
}

fn series_from_doc<S: JsonScalar>(doc: SeriesDoc) -> Result<TruncatedSeries<S>> {
    ring_matches::<S>(doc.ring)?;
    let shape = (doc.shape[0], doc.shape[1]);
    let terms = doc
        .terms
        .iter()
        .map(|t| Ok((t.alpha.clone(), coeff_from_json::<S>(&t.value, shape)?)))
        .collect::<Result<Vec<_>>>()?;
    TruncatedSeries::from_terms(doc.basis, doc.degree, doc.max_var, shape, terms)
}

pub fn series_from_json<S: JsonScalar>(v: &Value) -> Result<TruncatedSeries<S>> {
    series_from_doc(parse_doc(v)?)
}

fn parse_doc<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    T::deserialize(v).map_err(|e| invalid(format!("malformed document: {e}")))
}

/// A series in whichever ring its document names.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySeries {
    Real(TruncatedSeries<f64>),
    Complex(TruncatedSeries<Complex64>),
    Quaternion(TruncatedSeries<Quaternion>),
}

impl AnySeries {
    pub fn from_json(v: &Value) -> Result<Self> {
        let doc: SeriesDoc = parse_doc(v)?;
        Ok(match doc.ring {
            Ring::Real => AnySeries::Real(series_from_doc(doc)?),
            Ring::Complex => AnySeries::Complex(series_from_doc(doc)?),
            Ring::Quaternion => AnySeries::Quaternion(series_from_doc(doc)?),
        })
    }

    pub fn ring(&self) -> Ring {
        match self {
            AnySeries::Real(_) => Ring::Real,
            AnySeries::Complex(_) => Ring::Complex,
            AnySeries::Quaternion(_) => Ring::Quaternion,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnySeries::Real(f) => series_to_json(f),
            AnySeries::Complex(f) => series_to_json(f),
            AnySeries::Quaternion(f) => series_to_json(f),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RealizationDoc {
    #[serde(rename = "D")]
    d: Value,
    #[serde(rename = "C")]
    c: Value,
    #[serde(rename = "A")]
    a: Vec<Value>,
    #[serde(rename = "B")]
    b: Vec<Value>,
    #[serde(default)]
    ring: Ring,
}

pub fn realization_to_json<S: JsonScalar>(r: &Realization<S>) -> Value {
    let doc = RealizationDoc {
        d: matrix_to_json(r.d()),
        c: matrix_to_json(r.c()),
        a: r.a().iter().map(matrix_to_json).collect(),
        b: r.b().iter().map(matrix_to_json).collect(),
        ring: S::RING,
    };
    serde_json::to_value(doc).expect("realization documents serialize")
}

fn realization_from_doc<S: JsonScalar>(doc: RealizationDoc) -> Result<Realization<S>> {
    ring_matches::<S>(doc.ring)?;
    let d: Matrix<S> = matrix_from_json(&doc.d, None)?;
    let c: Matrix<S> = matrix_from_json(&doc.c, None)?;
    let n = c.cols();
    let a = doc.a.iter().map(|m| matrix_from_json(m, Some(n))).collect::<Result<Vec<_>>>()?;
    let b = doc.b.iter().map(|m| matrix_from_json(m, Some(d.cols()))).collect::<Result<Vec<_>>>()?;
    Realization::new(d, c, a, b)
}

pub fn realization_from_json<S: JsonScalar>(v: &Value) -> Result<Realization<S>> {
    realization_from_doc(parse_doc(v)?)
}

/// A realization in whichever ring its document names.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyRealization {
    Real(Realization<f64>),
    Complex(Realization<Complex64>),
    Quaternion(Realization<Quaternion>),
}

impl AnyRealization {
    pub fn from_json(v: &Value) -> Result<Self> {
        let doc: RealizationDoc = parse_doc(v)?;
        Ok(match doc.ring {
            Ring::Real => AnyRealization::Real(realization_from_doc(doc)?),
            Ring::Complex => AnyRealization::Complex(realization_from_doc(doc)?),
            Ring::Quaternion => AnyRealization::Quaternion(realization_from_doc(doc)?),
        })
    }

    pub fn ring(&self) -> Ring {
        match self {
            AnyRealization::Real(_) => Ring::Real,
            AnyRealization::Complex(_) => Ring::Complex,
            AnyRealization::Quaternion(_) => Ring::Quaternion,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyRealization::Real(r) => realization_to_json(r),
            AnyRealization::Complex(r) => realization_to_json(r),
            AnyRealization::Quaternion(r) => realization_to_json(r),
        }
    }
}

/// `[[position, value], ...]` with complex values.
pub fn point_to_json(p: &L2Point) -> Value {
    Value::Array(p.entries().iter().map(|(k, v)| json!([k, v.to_json()])).collect())
}

pub fn point_from_json(v: &Value) -> Result<L2Point> {
    let pairs = parse_pairs(v)?;
    L2Point::new(pairs.into_iter().map(|(k, val)| Ok((k, Complex64::from_json(&val)?))).collect::<Result<Vec<_>>>()?)
}

fn parse_pairs(v: &Value) -> Result<Vec<(u32, Value)>> {
    let arr =
        v.as_array().ok_or_else(|| invalid(format!("expected a sparse vector [[position, value], ...], got {v}")))?;
    arr.iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([k, val]) => {
                let k = k
                    .as_u64()
                    .and_then(|k| u32::try_from(k).ok())
                    .ok_or_else(|| invalid(format!("bad position {k}")))?;
                Ok((k, val.clone()))
            }
            _ => Err(invalid(format!("expected [position, value], got {e}"))),
        })
        .collect()
}

/// A sparse vector read as a dense one of the given length, in any ring.
/// Positions beyond `len` must carry zeros.
pub fn dense_from_json<S: JsonScalar>(v: &Value, len: usize) -> Result<Vec<S>> {
    let mut out = vec![S::zero(); len];
    for (k, val) in parse_pairs(v)? {
        if k == 0 {
            return Err(invalid("coordinates are 1-based"));
        }
        let x = S::from_json(&val)?;
        if (k as usize) <= len {
            out[k as usize - 1] = out[k as usize - 1].clone() + x;
        } else if !x.is_zero() {
            return Err(invalid(format!("coordinate {k} is outside the {len} variables")));
        }
    }
    Ok(out)
}

struct Fixed17;

impl Formatter for Fixed17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value == 0.0 {
            w.write_all(b"0")
        } else {
            write!(w, "{value:.16e}")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

/// Compact JSON with floats at 17 significant digits.
pub fn to_string(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Fixed17);
    v.serialize(&mut ser).expect("serializing a JSON value cannot fail");
    String::from_utf8(buf).expect("JSON output is UTF-8")
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| invalid(format!("malformed JSON: {e}")))
}
