//! Brute-force summation of Wright-type series in extended precision.

use num_complex::Complex64;
use wrightsol_core::specfun::{GenWrightParams, WrightParams};

use crate::hp::{bits_for_digits, to_f64, BigComplex, Hp};
use crate::{OracleError, Result};

/// Hard cap on the number of terms.
pub const MAX_TERMS: usize = 100_000;

/// Series to be summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesParams {
    /// `φ(−σ, β, z) = Σ z^k / (k! Γ(β − σk))`.
    Wright(WrightParams),
    /// `Σ z^k / (Γ(μk + a) Γ(νk + b))`.
    GenWright(GenWrightParams),
}

impl SeriesParams {
    /// `(μ, a, ν, b, z)` in the two-gamma form.
    fn unpack(&self) -> (f64, f64, f64, f64, Complex64) {
        match *self {
            SeriesParams::Wright(w) => (1.0, 1.0, -w.sigma, w.beta, w.z),
            SeriesParams::GenWright(g) => (g.mu, g.a, g.nu, g.b, g.z),
        }
    }
}

impl From<WrightParams> for SeriesParams {
    fn from(p: WrightParams) -> Self {
        SeriesParams::Wright(p)
    }
}

impl From<GenWrightParams> for SeriesParams {
    fn from(p: GenWrightParams) -> Self {
        SeriesParams::GenWright(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub terms: usize,
    /// Working precision of the accepted pass.
    pub bits: usize,
    /// Bits lost to cancellation (largest term over the sum).
    pub cancellation_bits: i64,
}

/// Number of terms after which `|z|^k / |Γ(μk+a) Γ(νk+b)|` stays below
/// `2^{−target}` times `scale` for good, from Stirling growth of the
/// denominators (`ln |Γ(x)| ≥ (x − ½) ln x − x` for large `x`, and the
/// reflection bound `|1/Γ(−x)| ≤ Γ(x+1)/π` for negative arguments).
fn term_bound(mu: f64, a: f64, nu: f64, b: f64, z: f64, target_log2: f64) -> Option<usize> {
    let ln_gamma_lower = |x: f64| -> f64 {
        if x > 2.0 {
            (x - 0.5) * x.ln() - x
        } else if x < -1.0 {
            // |1/Γ(x)| ≤ Γ(1−x)/π grows: contributes negatively to the decay.
            -((0.5 - x) * (1.0 - x).ln() - (1.0 - x) + 1.0)
        } else {
            -2.0
        }
    };
    let ln_z = if z > 0.0 { z.ln() } else { f64::NEG_INFINITY };
    let goal = target_log2 * std::f64::consts::LN_2;
    let mut streak = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let log_term = kf * ln_z - ln_gamma_lower(mu * kf + a) - ln_gamma_lower(nu * kf + b);
        // Past the region where the bound is loose, require a run of terms
        // below the goal with a decreasing envelope.
        if log_term < -goal && kf * (mu + nu) > 4.0 {
            streak += 1;
            if streak >= 8 {
                return Some(k + 1);
            }
        } else {
            streak = 0;
        }
    }
    None
}

/// Direct summation at `digits` decimal digits (30..=60), raising the
/// working precision until the result carries them despite cancellation.
pub fn brute_series(params: impl Into<SeriesParams>, digits: u32) -> Result<SeriesValue> {
    Ok(sum_to_digits(params.into(), digits)?.1)
}

/// The accepted extended-precision sum together with its summary.
fn sum_to_digits(params: SeriesParams, digits: u32) -> Result<(BigComplex, SeriesValue)> {
    if !(30..=60).contains(&digits) {
        return Err(OracleError::InvalidParams(format!(
            "digits must lie in 30..=60, got {digits}"
        )));
    }
    let (mu, a, nu, b, z) = params.unpack();
    if !(mu + nu > 0.0) || ![mu, a, nu, b, z.re, z.im].iter().all(|v| v.is_finite()) {
        return Err(OracleError::InvalidParams(
            "need finite parameters with mu + nu > 0".into(),
        ));
    }
    let want = bits_for_digits(digits);
    let mut bits = want + 64;
    loop {
        let (big, v) = sum_at(mu, a, nu, b, z, bits)?;
        if v.cancellation_bits + want as i64 + 32 <= bits as i64 {
            return Ok((big, v));
        }
        bits = want + v.cancellation_bits.max(0) as usize + 96;
        if bits > 20_000 {
            return Err(OracleError::ToleranceNotMet {
                estimate: v.value.norm(),
                error: v.value.norm() * 2f64.powi(-(bits as i32 - v.cancellation_bits as i32)),
            });
        }
    }
}

fn sum_at(mu: f64, a: f64, nu: f64, b: f64, z: Complex64, bits: usize) -> Result<(BigComplex, SeriesValue)> {
    let mut hp = Hp::new(bits);
    let terms = term_bound(mu, a, nu, b, z.norm(), (bits + 8) as f64)
        .ok_or(OracleError::NonConvergence { terms: MAX_TERMS })?;
    let zb = BigComplex::from_c64(z, &hp);
    let (mu_b, a_b, nu_b, b_b) = (hp.f(mu), hp.f(a), hp.f(nu), hp.f(b));
    let mut zk = BigComplex::one(&hp);
    let mut sum = BigComplex::zero(&hp);
    let mut max_exp = i64::MIN / 4;
    // 1/Γ(k+1) by running product when the first factor is a factorial.
    let factorial = mu == 1.0 && a == 1.0;
    let mut inv_fact = hp.int(1);
    for k in 0..terms {
        let kb = hp.int(k as i64);
        let x2 = hp.add(&hp.mul(&nu_b, &kb), &b_b);
        let r1 = if factorial {
            if k > 0 {
                inv_fact = hp.div(&inv_fact, &kb);
            }
            inv_fact.clone()
        } else {
            hp.rgamma(&hp.add(&hp.mul(&mu_b, &kb), &a_b))
        };
        let r2 = hp.rgamma(&x2);
        let w = hp.mul(&r1, &r2);
        if !w.is_zero() {
            let t = zk.scale(&w, &hp);
            max_exp = max_exp.max(t.exponent());
            sum = sum.add(&t, &hp);
        }
        zk = zk.mul(&zb, &hp);
    }
    let cancellation_bits = if sum.re.is_zero() && sum.im.is_zero() {
        if max_exp == i64::MIN / 4 {
            0
        } else {
            bits as i64
        }
    } else {
        (max_exp - sum.exponent()).max(0)
    };
    let v = SeriesValue {
        value: sum.to_c64(),
        terms,
        bits,
        cancellation_bits,
    };
    Ok((sum, v))
}

/// Relative difference between the sums at `lo` and `hi` digits, computed
/// before rounding to f64.
pub fn self_consistency(params: impl Into<SeriesParams>, lo: u32, hi: u32) -> Result<f64> {
    let params = params.into();
    let (x, _) = sum_to_digits(params, lo)?;
    let (y, vy) = sum_to_digits(params, hi)?;
    let hp = Hp::new(vy.bits);
    let dre = hp.sub(&x.re, &y.re);
    let dim = hp.sub(&x.im, &y.im);
    let num = to_f64(&dre).hypot(to_f64(&dim));
    let den = vy.value.norm();
    Ok(if den == 0.0 { num } else { num / den })
}

/// `1/Γ(x)` at `digits` decimal digits, rounded to f64.
pub fn rgamma(x: f64, digits: u32) -> f64 {
    let mut hp = Hp::new(bits_for_digits(digits) + 32);
    let v = hp.rgamma(&hp.f(x));
    to_f64(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wright(sigma: f64, beta: f64, z: Complex64) -> SeriesParams {
        SeriesParams::Wright(WrightParams { sigma, beta, z })
    }

    #[test]
    fn gaussian_reduction() {
        let v = brute_series(wright(0.5, 0.5, Complex64::new(-1.0, 0.0)), 30).unwrap();
        let want = (-0.25f64).exp() / std::f64::consts::PI.sqrt();
        assert!((v.value.re - want).abs() < 2e-16, "{}", v.value.re);
        assert_eq!(v.value.im, 0.0);
    }

    #[test]
    fn origin_is_reciprocal_gamma() {
        for beta in [0.5, 1.0, 2.25, -1.5, -3.0] {
            let v = brute_series(wright(0.3, beta, Complex64::new(0.0, 0.0)), 30).unwrap();
            assert_eq!(v.value.re, rgamma(beta, 40));
        }
    }

    #[test]
    fn bessel_reduction() {
        let p = GenWrightParams {
            mu: 1.0,
            a: 1.0,
            nu: 1.0,
            b: 1.0,
            z: Complex64::new(4.0, 0.0),
        };
        let v = brute_series(p, 30).unwrap();
        assert!((v.value.re - 11.301_921_952_136_33).abs() < 1e-13);
    }

    #[test]
    fn cancellation_raises_precision() {
        // Large negative argument: terms reach ~e^{25} while the value is tiny.
        let v = brute_series(wright(0.5, 1.0, Complex64::new(-10.0, 0.0)), 30).unwrap();
        // φ(−½, 1, −z) = erfc(z/2).
        let want = 1.537_459_794_428_034_8e-12;
        assert!(((v.value.re - want) / want).abs() < 1e-15, "{}", v.value.re);
        assert!(v.cancellation_bits > 40);
    }

    #[test]
    fn digits_are_consistent() {
        let z = Complex64::from_polar(7.0, 0.75 * std::f64::consts::PI);
        let a = brute_series(wright(0.375, 1.5, z), 30).unwrap().value;
        let b = brute_series(wright(0.375, 1.5, z), 45).unwrap().value;
        assert!((a - b).norm() <= 1e-16 * b.norm());
        let gap = self_consistency(wright(0.375, 1.5, z), 30, 45).unwrap();
        assert!(gap < 1e-25, "{gap:e}");
    }
}
