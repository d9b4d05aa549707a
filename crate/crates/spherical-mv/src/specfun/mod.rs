//! Complex special functions used by the evaluator routes: log-Gamma, Bessel
//! functions of the first kind, the truncated Gauss hypergeometric series of
//! the rank-one kernel integrand, and exact double factorials.

mod bessel;
mod factorial;
mod gamma;
mod hyp2f1;

pub use bessel::bessel_j;
pub use factorial::{double_factorial, double_factorial_f64};
pub use gamma::log_gamma;
pub use hyp2f1::{gauss_2f1, HypergeometricParams};
