//! Finite-difference probe of the jump of `∂^s_x Γ_b` across `x = ξ`.

use wrightsol_core::fundsol::{gamma_b, FundamentalSolutionSpec};
use wrightsol_core::specfun::SeriesControl;

use crate::rl::{one_sided_derivative, Approx};
use crate::{OracleError, Result};

/// Richardson levels (steps `h, h/2, …, h/2^{L−1}`).
const LEVELS: usize = 5;

/// One-sided limits at `dx → 0±` and their difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpProbe {
    pub left: Approx,
    pub right: Approx,
    /// `right − left`.
    pub jump: f64,
    pub error: f64,
}

/// `∂^s_x Γ_b(0+, dy) − ∂^s_x Γ_b(0−, dy)` from one-sided difference stencils
/// of `gamma_b` values.
pub fn jump_probe(spec: &FundamentalSolutionSpec, s: u32, dy: f64) -> Result<JumpProbe> {
    if s < 1 || !(dy > 0.0) {
        return Err(OracleError::InvalidParams(format!(
            "need s >= 1 and dy > 0 (s={s}, dy={dy})"
        )));
    }
    let ctrl = SeriesControl::default();
    let f = |dx: f64| gamma_b(spec, dx, dy, &ctrl).unwrap_or(f64::NAN);
    // Natural spatial scale of the kernel at this time.
    let h0 = 0.4 * dy.powf(spec.sigma());
    let right = one_sided_derivative(&f, 0.0, s, h0, 1.0, LEVELS);
    let left = one_sided_derivative(&f, 0.0, s, h0, -1.0, LEVELS);
    let jump = right.value - left.value;
    let error = right.error + left.error;
    if !jump.is_finite() || !error.is_finite() {
        return Err(OracleError::ToleranceNotMet { estimate: jump, error });
    }
    Ok(JumpProbe {
        left,
        right,
        jump,
        error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use wrightsol_core::fundsol::diagonal_jump;

    #[test]
    fn matches_analytic_jump() {
        let spec = FundamentalSolutionSpec::new(1.4, 2, 0.3).unwrap();
        let p = jump_probe(&spec, 3, 1.0).unwrap();
        let want = diagonal_jump(&spec, 3).eval(1.0);
        assert!(((p.jump - want) / want).abs() < 1e-4, "{} vs {want}", p.jump);
        let z = jump_probe(&spec, 1, 1.0).unwrap();
        assert!(z.jump.abs() < 1e-6, "{}", z.jump);
    }
}
