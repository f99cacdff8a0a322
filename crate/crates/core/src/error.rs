use alloc::string::String;

/// Errors produced by the numerical routines.
///
/// Variants that concern a computed value carry the best available estimate
/// so that callers can decide to flag rather than discard it.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },
    #[error(
        "catastrophic cancellation: largest term {max_term:e} vs |sum| {magnitude:e} (estimated relative error {rel_err:e})"
    )]
    CatastrophicCancellation {
        max_term: f64,
        magnitude: f64,
        rel_err: f64,
    },
    #[error("coefficient ratio undefined at index {0}: zero denominator")]
    RatioUndefined(usize),
    #[error("imaginary residue {residue:e} exceeds tolerance for real value {value:e}")]
    RealnessViolation { value: f64, residue: f64 },
    #[error("tolerance not met: estimate {estimate:e} with error {error:e}")]
    ToleranceNotMet { estimate: f64, error: f64 },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("growth certificate {growth:e} violates the admissible limit {limit:e}")]
    GrowthViolation { growth: f64, limit: f64 },
}

pub type Result<T> = core::result::Result<T, Error>;
