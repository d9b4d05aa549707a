//! The Gauss hypergeometric series restricted to the rank-one kernel family
//! ₂F₁(1 − q/2, q/2; (n−1)/2; z) with 0 ≤ z < 1/2.
//!
//! On this argument range the term ratio tends to z < 1/2, so straight
//! summation converges geometrically; when q is a positive even integer the
//! Pochhammer factor (1 − q/2)_k kills the series after k = q/2 − 1 and the
//! sum is exact.

use crate::error::{Error, Result};
use crate::rootdata::RankOneSpace;

/// Parameters of the kernel hypergeometric series.
#[derive(Debug, Clone, Copy)]
pub struct HypergeometricParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Hard cap on the number of summed terms.
    pub trunc: usize,
    /// Largest admissible argument (exclusive).
    pub z_max: f64,
}

impl HypergeometricParams {
    /// The parameter family of the rank-one kernel: a = 1 − q/2, b = q/2,
    /// c = (n − 1)/2.
    pub fn for_space(space: &RankOneSpace) -> Self {
        HypergeometricParams {
            a: 1.0 - space.q as f64 / 2.0,
            b: space.q as f64 / 2.0,
            c: (space.n as f64 - 1.0) / 2.0,
            trunc: 500,
            z_max: 0.5,
        }
    }
}

/// Evaluate the truncated series Σ_k (a)_k (b)_k / ((c)_k k!) z^k with the
/// tail driven below 1e-14.
pub fn gauss_2f1(params: &HypergeometricParams, z: f64) -> Result<f64> {
    if !(0.0..params.z_max).contains(&z) {
        return Err(Error::Range {
            what: "gauss_2f1",
            detail: format!("argument {z} outside [0, {})", params.z_max),
        });
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..params.trunc {
        let kf = k as f64;
        term *= (params.a + kf) * (params.b + kf) / ((params.c + kf) * (kf + 1.0)) * z;
        if term == 0.0 {
            return Ok(sum); // terminating series
        }
        sum += term;
        // with ratio < ~0.55 the geometric tail is below a safe multiple of the last term
        if term.abs() < 5e-15 * sum.abs().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::Truncation(format!(
        "hypergeometric series did not settle within {} terms at z = {z}",
        params.trunc
    )))
}
