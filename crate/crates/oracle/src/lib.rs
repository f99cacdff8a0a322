//! Reference computations for checking `wrightsol-core`.
//!
//! Nothing here is used by the solver itself. The routines take the slow,
//! definitional route on purpose:
//!
//! * [`series`]: brute-force Wright and generalized Wright sums in software
//!   extended precision, with an independent reciprocal gamma.
//! * [`rl`]: Riemann–Liouville derivatives from the integral definition,
//!   plus finite-difference helpers.
//! * [`probe`]: one-sided difference probes of kernel derivative jumps.

mod hp;
pub mod probe;
pub mod rl;
pub mod series;

pub use probe::{jump_probe, JumpProbe};
pub use rl::{rl_derivative_quadrature, Approx, RLDerivativeRequest};
pub use series::{brute_series, SeriesParams, SeriesValue};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("term bound exceeds {terms}")]
    NonConvergence { terms: usize },
    #[error("tolerance not met: estimate {estimate:e} with error {error:e}")]
    ToleranceNotMet { estimate: f64, error: f64 },
    #[error(transparent)]
    Core(#[from] wrightsol_core::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;
