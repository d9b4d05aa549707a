//! Truncated formal power series over f64: product, reciprocal, and real
//! powers of unit series via the J.C.P. Miller recurrence.

use crate::error::{Error, Result};

/// A power series truncated at a fixed length; `coeffs[k]` multiplies z^k.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries {
    pub coeffs: Vec<f64>,
}

impl TruncSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        TruncSeries { coeffs }
    }

    pub fn one(len: usize) -> Self {
        let mut coeffs = vec![0.0; len];
        if len > 0 {
            coeffs[0] = 1.0;
        }
        TruncSeries { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Cauchy product truncated at `trunc` coefficients.
    pub fn mul(&self, other: &TruncSeries, trunc: usize) -> TruncSeries {
        let mut out = vec![0.0; trunc];
        for (i, &a) in self.coeffs.iter().enumerate().take(trunc) {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(trunc - i) {
                out[i + j] += a * b;
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self, trunc: usize) -> Result<TruncSeries> {
        let a0 = *self
            .coeffs
            .first()
            .ok_or_else(|| Error::invalid("reciprocal of empty series"))?;
        if a0 == 0.0 {
            return Err(Error::invalid("reciprocal of series with zero constant term"));
        }
        let mut out = vec![0.0; trunc];
        out[0] = 1.0 / a0;
        for k in 1..trunc {
            let mut s = 0.0;
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s += self.coeffs[j] * out[k - j];
            }
            out[k] = -s / a0;
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// (self)^alpha for a series with constant term 1, via the Miller
    /// recurrence k·b_k = Σ_{j=1..k} ((alpha+1)j − k) a_j b_{k−j}.
    pub fn pow_unit(&self, alpha: f64, trunc: usize) -> Result<TruncSeries> {
        match self.coeffs.first() {
            Some(&a0) if (a0 - 1.0).abs() < 1e-14 => {}
            _ => return Err(Error::invalid("pow_unit needs constant term 1")),
        }
        let mut out = vec![0.0; trunc];
        out[0] = 1.0;
        for k in 1..trunc {
            let mut s = 0.0;
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s += ((alpha + 1.0) * j as f64 - k as f64) * self.coeffs[j] * out[k - j];
            }
            out[k] = s / k as f64;
        }
        Ok(TruncSeries { coeffs: out })
    }
}
