//! Finite-support multi-indices.
//!
//! A [`MultiIndex`] is a sequence `α = (α_1, α_2, …)` of nonnegative
//! integers with finitely many nonzero entries, stored sparsely as sorted
//! `(position, exponent)` pairs. Positions are 1-based. The total order is
//! graded lexicographic: by weight first, then by the dense exponent
//! vectors with larger leading exponents first, so `e_1` precedes `e_2`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, u32)>", into = "Vec<(u32, u32)>")]
pub struct MultiIndex {
    entries: Vec<(u32, u32)>,
}

/// Direction of the `(2ℕ)^{±qα}` weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl MultiIndex {
    pub fn zero() -> Self {
        MultiIndex { entries: Vec::new() }
    }

    /// The unit index `e_k`. Panics for `k == 0`.
    pub fn unit(k: u32) -> Self {
        assert!(k >= 1, "positions are 1-based");
        MultiIndex { entries: vec![(k, 1)] }
    }

    /// Canonicalizes arbitrary pairs: sorts, merges repeated positions and
    /// drops zero exponents. Position 0 is rejected.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut entries: Vec<(u32, u32)> = pairs.into_iter().collect();
        if entries.iter().any(|&(p, _)| p == 0) {
            return Err(Error::Invalid("multi-index positions are 1-based".into()));
        }
        entries.sort_unstable_by_key(|&(p, _)| p);
        let mut merged: Vec<(u32, u32)> = Vec::with_capacity(entries.len());
        for (p, e) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == p => last.1 = last.1.checked_add(e).ok_or(Error::Overflow("exponent"))?,
                _ => merged.push((p, e)),
            }
        }
        merged.retain(|&(_, e)| e > 0);
        Ok(MultiIndex { entries: merged })
    }

    /// `dense[i]` is the exponent of variable `i + 1`.
    pub fn from_dense(dense: &[u32]) -> Self {
        let entries = dense.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i as u32 + 1, e)).collect();
        MultiIndex { entries }
    }

    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut v = vec![0; len];
        for &(p, e) in &self.entries {
            if (p as usize) <= len {
                v[p as usize - 1] = e;
            }
        }
        v
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    /// Exponent at position `j` (0 when absent).
    pub fn get(&self, j: u32) -> u32 {
        self.entries.binary_search_by_key(&j, |&(p, _)| p).map(|i| self.entries[i].1).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `|α| = Σ α_j`.
    pub fn weight(&self) -> u64 {
        self.entries.iter().map(|&(_, e)| e as u64).sum()
    }

    /// Largest position in the support, 0 for the zero index.
    pub fn max_position(&self) -> u32 {
        self.entries.last().map_or(0, |&(p, _)| p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (pa, ea) = self.entries[i];
            let (pb, eb) = other.entries[j];
            match pa.cmp(&pb) {
                Ordering::Less => {
                    out.push((pa, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((pb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((pa, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.entries[i..]);
        out.extend_from_slice(&other.entries[j..]);
        MultiIndex { entries: out }
    }

    /// `self - other`, or `None` when some component would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.entries.len());
        let mut j = 0;
        for &(p, e) in &self.entries {
            if j < other.entries.len() && other.entries[j].0 < p {
                return None;
            }
            if j < other.entries.len() && other.entries[j].0 == p {
                let d = e.checked_sub(other.entries[j].1)?;
                if d > 0 {
                    out.push((p, d));
                }
                j += 1;
            } else {
                out.push((p, e));
            }
        }
        if j < other.entries.len() {
            return None;
        }
        Some(MultiIndex { entries: out })
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Self) -> bool {
        self.entries.iter().all(|&(p, e)| other.get(p) >= e)
    }

    /// `α + e_j`.
    pub fn increment(&self, j: u32) -> Self {
        self.add(&MultiIndex::unit(j))
    }

    /// `α - e_j`, `None` if `α_j = 0`.
    pub fn decrement(&self, j: u32) -> Option<Self> {
        self.checked_sub(&MultiIndex::unit(j))
    }

    /// `α! = Π α_j!`, failing instead of wrapping on overflow.
    pub fn factorial(&self) -> Result<u128> {
        let mut acc: u128 = 1;
        for &(_, e) in &self.entries {
            for k in 2..=e as u128 {
                acc = acc.checked_mul(k).ok_or(Error::Overflow("multi-index factorial"))?;
            }
        }
        Ok(acc)
    }

    /// `α!` without an overflow bound.
    pub fn factorial_big(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &(_, e) in &self.entries {
            for k in 2..=e {
                acc *= k;
            }
        }
        acc
    }

    /// `(2ℕ)^{±qα} = Π_j (2j)^{±q α_j}`.
    pub fn two_n_pow(&self, q: i32, sign: Sign) -> f64 {
        let s = match sign {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        };
        self.entries.iter().map(|&(p, e)| (2.0 * p as f64).powf(s * q as f64 * e as f64)).product()
    }

    /// Exact form of [`two_n_pow`](Self::two_n_pow).
    pub fn two_n_pow_exact(&self, q: i32, sign: Sign) -> Rational {
        let mut num = BigInt::one();
        for &(p, e) in &self.entries {
            let power = (q.unsigned_abs() as u64) * e as u64;
            num *= num_traits::pow(BigInt::from(2 * p as u64), power as usize);
        }
        let positive = (q >= 0) == (sign == Sign::Plus);
        if positive {
            Rational::from_integer(num)
        } else {
            Rational::new(BigInt::one(), num)
        }
    }
}

/// All indices of weight `≤ max_degree` supported in `{1..max_var}`, in
/// graded lexicographic order.
pub fn enumerate(max_degree: u32, max_var: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut dense = vec![0u32; max_var as usize];
    for w in 0..=max_degree {
        if max_var == 0 {
            if w == 0 {
                out.push(MultiIndex::zero());
            }
            continue;
        }
        compositions(0, w, &mut dense, &mut out);
    }
    out
}

// Compositions of `remaining` over dense[pos..], largest leading part first.
fn compositions(pos: usize, remaining: u32, dense: &mut [u32], out: &mut Vec<MultiIndex>) {
    if pos + 1 == dense.len() {
        dense[pos] = remaining;
        out.push(MultiIndex::from_dense(dense));
        dense[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        dense[pos] = e;
        compositions(pos + 1, remaining - e, dense, out);
    }
    dense[pos] = 0;
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| {
            // first position where the dense vectors differ decides; the
            // larger exponent sorts first
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.entries.get(i), other.entries.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Less,
                    (None, Some(_)) => return Ordering::Greater,
                    (Some(&(pa, ea)), Some(&(pb, eb))) => match pa.cmp(&pb) {
                        Ordering::Less => return Ordering::Less,
                        Ordering::Greater => return Ordering::Greater,
                        Ordering::Equal if ea != eb => return eb.cmp(&ea),
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}:{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<(u32, u32)>> for MultiIndex {
    type Error = Error;

    /// Strict form used for interchange: positions strictly increasing,
    /// exponents positive.
    fn try_from(pairs: Vec<(u32, u32)>) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Invalid(format!(
                    "multi-index positions must be strictly increasing, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        if pairs.iter().any(|&(p, e)| p == 0 || e == 0) {
            return Err(Error::Invalid("multi-index entries need position >= 1 and exponent >= 1".into()));
        }
        Ok(MultiIndex { entries: pairs })
    }
}

impl From<MultiIndex> for Vec<(u32, u32)> {
    fn from(a: MultiIndex) -> Self {
        a.entries
    }
}
