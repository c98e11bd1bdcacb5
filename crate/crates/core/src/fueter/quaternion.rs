use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::{rational_to_f64, Rational, Scalar};

/// `x₀e₀ + x₁e₁ + x₂e₂ + x₃e₃` with `e₀ = 1`.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion(pub [f64; 4]);

// Cayley table: UNIT_PRODUCT[i][j] = (sign, k) with e_i e_j = sign · e_k.
const UNIT_PRODUCT: [[(f64, usize); 4]; 4] = [
    [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
    [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
    [(1.0, 2), (-1.0, 3), (-1.0, 0), (1.0, 1)],
    [(1.0, 3), (1.0, 2), (-1.0, 1), (-1.0, 0)],
];

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion([0.0; 4]);
    pub const ONE: Quaternion = Quaternion([1.0, 0.0, 0.0, 0.0]);

    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Quaternion([x0, x1, x2, x3])
    }

    pub fn real(x: f64) -> Self {
        Quaternion([x, 0.0, 0.0, 0.0])
    }

    /// The unit `e_i`, `i ∈ 0..4`.
    pub fn unit(i: usize) -> Self {
        let mut c = [0.0; 4];
        c[i] = 1.0;
        Quaternion(c)
    }

    pub fn components(&self) -> [f64; 4] {
        self.0
    }

    pub fn conjugate(&self) -> Self {
        let [a, b, c, d] = self.0;
        Quaternion([a, -b, -c, -d])
    }

    pub fn norm_squared(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion(self.0.map(|x| x * s))
    }

    pub fn is_real(&self) -> bool {
        self.0[1] == 0.0 && self.0[2] == 0.0 && self.0[3] == 0.0
    }
}

/// Bilinear extension of the Cayley table.
pub fn qmul(a: &Quaternion, b: &Quaternion) -> Quaternion {
    let mut out = [0.0; 4];
    for (i, &ai) in a.0.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.0.iter().enumerate() {
            let (sign, k) = UNIT_PRODUCT[i][j];
            out[k] += sign * ai * bj;
        }
    }
    Quaternion(out)
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion(self.0.map(|x| -x))
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        qmul(&self, &o)
    }
}

impl Scalar for Quaternion {
    type Magnitude = f64;

    fn zero() -> Self {
        Quaternion::ZERO
    }
    fn one() -> Self {
        Quaternion::ONE
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Quaternion::real(rational_to_f64(r))
    }
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_squared();
        (n != 0.0).then(|| self.conjugate().scale(1.0 / n))
    }
    fn norm_sqr(&self) -> f64 {
        self.norm_squared()
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
}

/// Quaternion rings: [`Scalar`]s with the units `e₀..e₃` and real
/// components.
pub trait QuaternionRing: Scalar {
    /// The unit `e_i`, `i ∈ 0..4`.
    fn unit(i: usize) -> Self;
    /// Real component `x_c`, `c ∈ 0..4`.
    fn component(&self, c: usize) -> Self::Magnitude;
}

impl QuaternionRing for Quaternion {
    fn unit(i: usize) -> Self {
        Quaternion::unit(i)
    }
    fn component(&self, c: usize) -> f64 {
        self.0[c]
    }
}

/// Quaternion with exact rational components.
#[derive(Clone, PartialEq, Debug)]
pub struct ExactQuaternion(pub [Rational; 4]);

impl ExactQuaternion {
    pub fn from_integers(c: [i64; 4]) -> Self {
        ExactQuaternion(c.map(|n| Rational::from_integer(n.into())))
    }

    pub fn to_f64(&self) -> Quaternion {
        Quaternion(std::array::from_fn(|i| rational_to_f64(&self.0[i])))
    }
}

impl Add for ExactQuaternion {
    type Output = ExactQuaternion;
    fn add(self, o: ExactQuaternion) -> ExactQuaternion {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = o.0;
        ExactQuaternion([a0 + b0, a1 + b1, a2 + b2, a3 + b3])
    }
}

impl Sub for ExactQuaternion {
    type Output = ExactQuaternion;
    fn sub(self, o: ExactQuaternion) -> ExactQuaternion {
        self + (-o)
    }
}

impl Neg for ExactQuaternion {
    type Output = ExactQuaternion;
    fn neg(self) -> ExactQuaternion {
        ExactQuaternion(self.0.map(|x| -x))
    }
}

impl Mul for ExactQuaternion {
    type Output = ExactQuaternion;
    fn mul(self, o: ExactQuaternion) -> ExactQuaternion {
        let mut out: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
        for (i, ai) in self.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in o.0.iter().enumerate() {
                let (sign, k) = UNIT_PRODUCT[i][j];
                let t = ai * bj;
                if sign > 0.0 {
                    out[k] += t;
                } else {
                    out[k] -= t;
                }
            }
        }
        ExactQuaternion(out)
    }
}

impl Scalar for ExactQuaternion {
    type Magnitude = Rational;

    fn zero() -> Self {
        ExactQuaternion(std::array::from_fn(|_| Rational::zero()))
    }
    fn one() -> Self {
        let mut q = <Self as Scalar>::zero();
        q.0[0] = Rational::one();
        q
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
    fn from_rational(r: &Rational) -> Self {
        let mut q = <Self as Scalar>::zero();
        q.0[0] = r.clone();
        q
    }
    fn conj(&self) -> Self {
        let [a, b, c, d] = self.0.clone();
        ExactQuaternion([a, -b, -c, -d])
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(ExactQuaternion(self.conj().0.map(|x| x / &n)))
    }
    fn norm_sqr(&self) -> Rational {
        self.0.iter().map(|x| x * x).sum()
    }
    fn abs(&self) -> f64 {
        rational_to_f64(&self.norm_sqr()).sqrt()
    }
}

impl QuaternionRing for ExactQuaternion {
    fn unit(i: usize) -> Self {
        let mut q = <Self as Scalar>::zero();
        q.0[i] = Rational::one();
        q
    }
    fn component(&self, c: usize) -> Rational {
        self.0[c].clone()
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Quaternion(c)
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.0
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a} + {b}e1 + {c}e2 + {d}e3)")
    }
}
