use super::SeriesControl;
use crate::dd::{self, Dd};
use crate::{Error, Result};

fn nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == libm::floor(x)
}

/// `₁F₂(a; b, c; z) = Σ (a)_k / ((b)_k (c)_k) · z^k / k!`.
///
/// Summed in f64; if the cancellation ratio exceeds the control limit or the
/// error estimate is too large, re-summed in double-word arithmetic.
pub fn hyp1f2(a: f64, b: f64, c: f64, z: f64, ctrl: &SeriesControl) -> Result<f64> {
    ctrl.validate()?;
    if nonpositive_integer(b) || nonpositive_integer(c) {
        return Err(Error::InvalidParams(alloc::format!(
            "1F2 lower parameters must not be nonpositive integers (b={b}, c={c})"
        )));
    }
    let (s, max_term, err) = sum_f64(a, b, c, z, ctrl)?;
    let mag = libm::fabs(s);
    if max_term <= ctrl.cancellation_ratio_limit * mag && err <= ctrl.rel_tol * mag.max(f64::MIN_POSITIVE) {
        return Ok(s);
    }
    let (s, max_term, err) = sum_dd(a, b, c, z, ctrl)?;
    let mag = libm::fabs(s);
    if err <= ctrl.rel_tol * mag || (max_term == 0.0) {
        return Ok(s);
    }
    Err(Error::CatastrophicCancellation {
        max_term,
        magnitude: mag,
        rel_err: err / mag,
    })
}

fn sum_f64(a: f64, b: f64, c: f64, z: f64, ctrl: &SeriesControl) -> Result<(f64, f64, f64)> {
    let mut term = 1.0;
    let mut s = 1.0;
    let mut max_term: f64 = 1.0;
    let mut abs_sum = 1.0;
    let mut run = 0;
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        term *= (a + kf) / ((b + kf) * (c + kf) * (kf + 1.0)) * z;
        s += term;
        let t = libm::fabs(term);
        max_term = max_term.max(t);
        abs_sum += t * (k as f64 + 2.0);
        run = if t <= ctrl.rel_tol * libm::fabs(s) { run + 1 } else { 0 };
        if t == 0.0 || (k >= 8 && run >= ctrl.consecutive_small) {
            return Ok((s, max_term, 4.0 * f64::EPSILON * abs_sum + t));
        }
    }
    Err(Error::NonConvergence { terms: ctrl.max_terms })
}

fn sum_dd(a: f64, b: f64, c: f64, z: f64, ctrl: &SeriesControl) -> Result<(f64, f64, f64)> {
    let mut term = dd::dd(1.0);
    let mut s = dd::dd(1.0);
    let mut max_term: f64 = 1.0;
    let mut abs_sum = 1.0;
    let mut run = 0;
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        let num: Dd = (dd::dd(a) + kf) * z;
        let den: Dd = (dd::dd(b) + kf) * (dd::dd(c) + kf) * (kf + 1.0);
        term = dd::div(term * num, den);
        s += term;
        let t = libm::fabs(term.hi());
        max_term = max_term.max(t);
        abs_sum += t * (k as f64 + 2.0);
        run = if t <= ctrl.rel_tol * libm::fabs(s.hi()) {
            run + 1
        } else {
            0
        };
        if t == 0.0 || (k >= 8 && run >= ctrl.consecutive_small) {
            let v = dd::to_f64(s);
            return Ok((v, max_term, 1e-31 * abs_sum + t + 0.6 * f64::EPSILON * libm::fabs(v)));
        }
    }
    Err(Error::NonConvergence { terms: ctrl.max_terms })
}
