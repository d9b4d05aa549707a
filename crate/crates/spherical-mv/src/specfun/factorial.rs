//! Exact double factorials, with the conventions (−1)!! = 1 and 0!! = 1.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// L!! as an exact big integer, for L ≥ −1.
pub fn double_factorial(l: i64) -> Result<BigUint> {
    if l < -1 {
        return Err(Error::invalid(format!("double factorial needs L >= -1, got {l}")));
    }
    let mut acc = BigUint::from(1u32);
    let mut k = l;
    while k >= 2 {
        acc *= BigUint::from(k as u64);
        k -= 2;
    }
    Ok(acc)
}

/// L!! as f64; exact for small L, best f64 beyond.
pub fn double_factorial_f64(l: i64) -> Result<f64> {
    let big = double_factorial(l)?;
    let s = big.to_string();
    Ok(s.parse::<f64>().expect("decimal digits parse as f64"))
}
