/// Result of a `K_q(δ)` membership test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KqMembership {
    pub inside: bool,
    /// `Σ_{α≠0} |z|^α (2ℕ)^{qα}`; `+∞` when the series diverges.
    pub value: f64,
}

/// Membership of `z` in `K_q(δ) = { z : Σ_{α≠0} |z|^α (2ℕ)^{qα} < δ² }`.
///
/// `abs_z[k]` is `|z_{k+1}|`. The sum factors into geometric series per
/// coordinate, `Π_j 1/(1 − (2j)^q |z_j|) − 1`, and diverges as soon as some
/// `(2j)^q |z_j| ≥ 1`.
pub fn kq_membership(abs_z: &[f64], q: i32, delta: f64) -> KqMembership {
    let mut product = 1.0;
    for (k, &v) in abs_z.iter().enumerate() {
        let v = v.abs();
        if v == 0.0 {
            continue;
        }
        let ratio = (2.0 * (k + 1) as f64).powi(q) * v;
        if ratio >= 1.0 {
            return KqMembership { inside: false, value: f64::INFINITY };
        }
        product /= 1.0 - ratio;
    }
    let value = product - 1.0;
    KqMembership { inside: value < delta * delta, value }
}
