use std::collections::BTreeSet;

use super::{Basis, TruncatedSeries};
use crate::error::{Error, Result};
use crate::scalar::{ratio, Scalar};

impl<S: Scalar> TruncatedSeries<S> {
    /// Leibenzon backward shift
    /// `R_j f = Σ_{α_j ≥ 1} (α_j/|α|) c_α z^{α−e_j}`.
    ///
    /// Terms with `α_j = 0` contribute nothing. The truncation degree drops
    /// by one (saturating at zero). Panics for `j == 0`.
    pub fn leibenzon(&self, j: u32) -> Self {
        assert!(j >= 1, "variables are 1-based");
        let mut out = Self::zero(self.basis, self.degree.saturating_sub(1), self.max_var, self.shape);
        for (alpha, c) in self.terms() {
            let aj = alpha.get(j);
            if aj == 0 {
                continue;
            }
            let factor = ratio(aj as i64, alpha.weight() as i64);
            let shifted = alpha.decrement(j).expect("α_j ≥ 1");
            if shifted.weight() <= out.degree as u64 {
                out.accumulate(shifted, &c.scale_rational(&factor));
            }
        }
        out
    }

    /// `(F − F(0)) − Σ_j z_j R_j F`; identically zero for every polynomial.
    pub fn gleason_residual(&self) -> Result<Self> {
        if self.basis != Basis::Monomial {
            return Err(Error::Basis { expected: Basis::Monomial, found: self.basis });
        }
        let constant = Self::constant(self.basis, self.degree, self.max_var, self.constant_term());
        let mut residual = self.sub(&constant)?;
        let vars: BTreeSet<u32> = self.terms().flat_map(|(a, _)| a.entries().iter().map(|&(p, _)| p)).collect();
        for j in vars {
            residual = residual.sub(&self.leibenzon(j).mul_by_variable(j))?;
        }
        Ok(residual.truncate(self.degree))
    }
}
