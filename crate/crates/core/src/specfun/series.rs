//! Summation of `Σ z^k / (Γ(μk + a) Γ(νk + b))` with scaled terms.
//!
//! Both the power and the reciprocal gammas are carried as `mantissa · 2^e`
//! so that huge `1/Γ` values at very negative arguments and tiny `z^k/k!`
//! values never overflow or underflow before they are multiplied.

use num_complex::Complex64;

use super::{Evaluation, Method, SeriesControl};
use crate::dd::{self, CDd, Dd};
use crate::gamma::{ln_recip_gamma_dd, ln_recip_gamma_parts, recip_gamma_parts};
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;
const EPS_DD: f64 = 1e-31;
const RENORM: i32 = 256;

struct Raw {
    sum: Complex64,
    err: f64,
    terms: usize,
    max_term: f64,
}

/// Terms beyond the f64 range make the series unusable in either precision.
fn finite(r: Raw) -> Result<Raw> {
    if r.sum.is_finite() && r.max_term.is_finite() && r.err.is_finite() {
        Ok(r)
    } else {
        Err(Error::NonConvergence { terms: r.terms })
    }
}

pub(super) fn sum(mu: f64, a: f64, nu: f64, b: f64, z: Complex64, ctrl: &SeriesControl) -> Result<Evaluation> {
    let first = finite(sum_f64(mu, a, nu, b, z, ctrl)?)?;
    let mag = first.sum.norm();
    if first.max_term == 0.0 {
        return Ok(finish(first, Method::Series));
    }
    let trusted = first.max_term <= ctrl.cancellation_ratio_limit * mag && first.err <= ctrl.rel_tol * mag;
    if trusted {
        return Ok(finish(first, Method::Series));
    }
    let second = finite(sum_dd(mu, a, nu, b, z, ctrl)?)?;
    let mag = second.sum.norm();
    if second.err <= ctrl.rel_tol * mag {
        return Ok(finish(second, Method::ExtendedSeries));
    }
    Err(Error::CatastrophicCancellation {
        max_term: second.max_term,
        magnitude: mag,
        rel_err: if mag > 0.0 { second.err / mag } else { f64::INFINITY },
    })
}

fn finish(r: Raw, method: Method) -> Evaluation {
    Evaluation {
        value: r.sum,
        error: r.err,
        terms: r.terms,
        max_term: r.max_term,
        method,
    }
}

/// `1/Γ(x)` as `(mantissa, exponent, conditioning)` with `x = m·k + c` formed exactly.
fn scaled_rgamma(m: f64, c: f64, k: usize) -> (f64, i32, f64) {
    let x = Dd::new_mul(m, k as f64) + c;
    let (hi, lo) = (x.hi(), x.lo());
    if hi > -150.0 && hi < 150.0 {
        let v = recip_gamma_parts(hi, lo);
        return (v, 0, 3.0);
    }
    let (l, sign) = ln_recip_gamma_parts(hi, lo);
    if sign == 0.0 {
        return (0.0, 0, 0.0);
    }
    let q = libm::floor(l / core::f64::consts::LN_2);
    let mant = sign * libm::exp(l - q * core::f64::consts::LN_2);
    (mant, q as i32, 2.0 + libm::fabs(l))
}

fn scale_c(v: Complex64, e: i32) -> Complex64 {
    Complex64::new(libm::scalbn(v.re, e), libm::scalbn(v.im, e))
}

/// Truncation estimate from the last two nonzero terms.
fn tail(last: f64, prev: f64) -> f64 {
    if prev.is_finite() && prev > 0.0 {
        last * (last / prev).min(1.0)
    } else {
        // A single nonzero term: the series is exact (z = 0 or all later
        // coefficients vanish).
        0.0
    }
}

struct Stop {
    run: usize,
}

impl Stop {
    /// Shared termination rule: `consecutive_small` terms in a row below
    /// `rel_tol·|sum|` and `k ≥ 8`.
    fn done(&mut self, k: usize, term: f64, sum: f64, ctrl: &SeriesControl) -> bool {
        if term <= ctrl.rel_tol * sum {
            self.run += 1;
        } else {
            self.run = 0;
        }
        k >= 8 && self.run >= ctrl.consecutive_small
    }
}

fn sum_f64(mu: f64, a: f64, nu: f64, b: f64, z: Complex64, ctrl: &SeriesControl) -> Result<Raw> {
    let factorial = mu == 1.0 && a == 1.0;
    let mut pw = Complex64::new(1.0, 0.0);
    let mut pe: i32 = 0;
    let mut s = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut max_term: f64 = 0.0;
    let mut last = 0.0;
    let mut prev = f64::INFINITY;
    let mut stop = Stop { run: 0 };
    for k in 0..ctrl.max_terms {
        if k > 0 {
            pw *= z;
            if factorial {
                pw /= k as f64;
            }
            let n = pw.norm();
            if n > 0.0 && !(libm::ilogb(n).abs() < RENORM) {
                let sh = libm::ilogb(n);
                pw = scale_c(pw, -sh);
                pe += sh;
            }
        }
        let (m1, e1, c1) = if factorial {
            (1.0, 0, 0.0)
        } else {
            scaled_rgamma(mu, a, k)
        };
        let (m2, e2, c2) = scaled_rgamma(nu, b, k);
        let term = scale_c(pw * (m1 * m2), pe + e1 + e2);
        let t = term.norm();
        s += term;
        max_term = max_term.max(t);
        err += t * EPS * (4.0 + 2.0 * libm::sqrt(k as f64) + c1 + c2);
        if t > 0.0 {
            prev = last;
            last = t;
        }
        if z == Complex64::new(0.0, 0.0) || stop.done(k, t, s.norm(), ctrl) {
            err += tail(last, prev) + EPS * s.norm();
            return Ok(Raw {
                sum: s,
                err,
                terms: k + 1,
                max_term,
            });
        }
    }
    Err(Error::NonConvergence { terms: ctrl.max_terms })
}

fn scale_dd(x: Dd, e: i32) -> Dd {
    let hi = libm::scalbn(x.hi(), e);
    let lo = libm::scalbn(x.lo(), e);
    Dd::try_from((hi, lo)).unwrap_or_else(|_| dd::dd(hi))
}

fn scale_cdd(v: CDd, e: i32) -> CDd {
    CDd::new(scale_dd(v.re, e), scale_dd(v.im, e))
}

fn scaled_rgamma_dd(m: f64, c: f64, k: usize) -> (Dd, i32, f64) {
    let x = Dd::new_mul(m, k as f64) + c;
    let (l, sign) = ln_recip_gamma_dd(x);
    if sign == 0.0 {
        return (dd::dd(0.0), 0, 0.0);
    }
    let q = libm::floor(l.hi() / core::f64::consts::LN_2);
    let mant = dd::exp(l - dd::ln2() * q) * sign;
    (mant, q as i32, 2.0 + libm::fabs(l.hi()))
}

fn sum_dd(mu: f64, a: f64, nu: f64, b: f64, z: Complex64, ctrl: &SeriesControl) -> Result<Raw> {
    let factorial = mu == 1.0 && a == 1.0;
    let zd = CDd::from_c64(z);
    let mut pw = CDd::new(dd::dd(1.0), dd::dd(0.0));
    let mut pe: i32 = 0;
    let mut s = CDd::new(dd::dd(0.0), dd::dd(0.0));
    let mut err = 0.0;
    let mut max_term: f64 = 0.0;
    let mut last = 0.0;
    let mut prev = f64::INFINITY;
    let mut stop = Stop { run: 0 };
    for k in 0..ctrl.max_terms {
        if k > 0 {
            pw = pw * zd;
            if factorial {
                let kk = k as f64;
                pw = CDd::new(pw.re / kk, pw.im / kk);
            }
            let n = pw.norm_f64();
            if n > 0.0 && !(libm::ilogb(n).abs() < RENORM) {
                let sh = libm::ilogb(n);
                pw = scale_cdd(pw, -sh);
                pe += sh;
            }
        }
        let (m1, e1, c1) = if factorial {
            (dd::dd(1.0), 0, 0.0)
        } else {
            scaled_rgamma_dd(mu, a, k)
        };
        let (m2, e2, c2) = scaled_rgamma_dd(nu, b, k);
        let term = scale_cdd(pw.scale(m1 * m2), pe + e1 + e2);
        let t = term.norm_f64();
        s = s + term;
        max_term = max_term.max(t);
        err += t * EPS_DD * (4.0 + 2.0 * libm::sqrt(k as f64) + c1 + c2);
        if t > 0.0 {
            prev = last;
            last = t;
        }
        let sn = s.norm_f64();
        if z == Complex64::new(0.0, 0.0) || stop.done(k, t, sn, ctrl) {
            err += tail(last, prev) + 0.6 * EPS * sn;
            return Ok(Raw {
                sum: s.to_c64(),
                err,
                terms: k + 1,
                max_term,
            });
        }
    }
    Err(Error::NonConvergence { terms: ctrl.max_terms })
}
