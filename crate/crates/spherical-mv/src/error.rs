//! Error type shared by every module.

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Evaluation requested at a pole or outside the function's domain.
    #[error("domain error in {what} at z = {z}")]
    Domain { what: &'static str, z: Complex64 },

    /// Argument outside the supported numerical envelope.
    #[error("range error in {what}: {detail}")]
    Range { what: &'static str, detail: String },

    /// Quadrature failed to reach the requested tolerance within budget.
    #[error("quadrature did not converge: estimated error {estimate:.3e} > tolerance {tolerance:.3e}")]
    Convergence { estimate: f64, tolerance: f64 },

    /// The coefficient recursion denominator vanished (degenerate λ).
    #[error("resonant spectral parameter: |k² − 2ikλ| below threshold at k = {k}, λ = {lambda}")]
    Resonance { k: u32, lambda: Complex64 },

    /// The c-function was evaluated on a pole hyperplane.
    #[error("c-function pole in {factor} at λ = {lambda}")]
    CFunctionPole {
        factor: &'static str,
        lambda: Complex64,
    },

    /// A geometric configuration the reduction cannot handle.
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    /// A truncated series failed its own tail test.
    #[error("series truncation failed: {0}")]
    Truncation(String),

    /// Exhausted a search grid without meeting the goal.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// An evaluator failed inside a sweep; records where.
    #[error("evaluator failed at ζ = {at}: {source}")]
    EvaluatorFailure {
        at: Complex64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
