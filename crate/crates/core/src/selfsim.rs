//! Self-similar solutions of `D^α_{0y} u = d · D^β_{0x} u`, `x, y > 0`.
//!
//! With `t = x^β y^{−α}` and `γ_j = 1 − j/β` the series
//!
//! ```text
//! u_j = y^b t^{1−j/β} Σ_k (d t)^k / (Γ(−αk − α + αj/β + b + 1) Γ(βk + β − j + 1))
//! ```
//!
//! solves the equation for `j = 1..p` and any real `b`.

use num_complex::Complex64;

use crate::gamma::recip_gamma;
use crate::specfun::{gen_wright, wright_phi, GenWrightParams, SeriesControl, WrightParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfSimilarSpec {
    pub alpha: f64,
    pub beta: f64,
    pub p: u32,
    pub q: u32,
    /// `±1`.
    pub d: i8,
    pub b: f64,
    pub j: u32,
}

impl SelfSimilarSpec {
    pub fn new(alpha: f64, beta: f64, d: i8, b: f64, j: u32) -> Result<Self> {
        if !(alpha > 0.0 && beta > alpha) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParams(alloc::format!(
                "need 0 < alpha < beta (alpha={alpha}, beta={beta})"
            )));
        }
        let q = libm::ceil(alpha) as u32;
        let p = libm::ceil(beta) as u32;
        if q >= p {
            return Err(Error::InvalidParams(alloc::format!(
                "need ceil(alpha) < ceil(beta) (got {q} and {p})"
            )));
        }
        if d != 1 && d != -1 {
            return Err(Error::InvalidParams("d must be +1 or -1".into()));
        }
        if j < 1 || j > p {
            return Err(Error::InvalidParams(alloc::format!("j must lie in 1..={p}, got {j}")));
        }
        if !b.is_finite() {
            return Err(Error::InvalidParams("b must be finite".into()));
        }
        Ok(SelfSimilarSpec {
            alpha,
            beta,
            p,
            q,
            d,
            b,
            j,
        })
    }

    /// `γ_j = 1 − j/β`.
    pub fn gamma(&self) -> f64 {
        1.0 - self.j as f64 / self.beta
    }

    fn sign(&self, n: u32) -> f64 {
        if self.d == -1 && n % 2 == 1 {
            -1.0
        } else {
            1.0
        }
    }

    /// Closed form `c_n = d^n / (Γ(−αn − α + αj/β + b + 1) Γ(βn + β − j + 1))`.
    pub fn coefficient(&self, n: u32) -> f64 {
        let (a, be, j) = (self.alpha, self.beta, self.j as f64);
        let n_ = n as f64;
        self.sign(n) * recip_gamma(-a * n_ - a + a * j / be + self.b + 1.0) * recip_gamma(be * n_ + be - j + 1.0)
    }

    /// Parameters of the generalized Wright series in `u_j`.
    pub fn gen_params(&self, t: f64) -> GenWrightParams {
        let (a, be, j) = (self.alpha, self.beta, self.j as f64);
        GenWrightParams {
            mu: -a,
            a: -a + a * j / be + self.b + 1.0,
            nu: be,
            b: be - j + 1.0,
            z: Complex64::new(self.d as f64 * t, 0.0),
        }
    }
}

/// A point `(x, y)` with its similarity variable `t = x^β y^{−α}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityVariable {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl SimilarityVariable {
    pub fn new(spec: &SelfSimilarSpec, x: f64, y: f64) -> Result<Self> {
        if !(x > 0.0 && y > 0.0) {
            return Err(Error::DomainError(alloc::format!(
                "self-similar solutions live on x, y > 0 (x={x}, y={y})"
            )));
        }
        let t = libm::pow(x, spec.beta) * libm::pow(y, -spec.alpha);
        Ok(SimilarityVariable { x, y, t })
    }
}

/// `c_n / c_{n−1}` from the recurrence
/// `d Γ(−α(n+γ−1)+b+1) Γ(βn+βγ+1−β) / (Γ(−α(n+γ)+b+1) Γ(βn+βγ+1))`.
pub fn coefficient_ratio(spec: &SelfSimilarSpec, n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidParams("ratio index must be >= 1".into()));
    }
    let (a, be, b) = (spec.alpha, spec.beta, spec.b);
    let g = spec.gamma();
    let n_ = n as f64;
    let num = recip_gamma(-a * (n_ + g) + b + 1.0) * recip_gamma(be * n_ + be * g + 1.0);
    let den = recip_gamma(-a * (n_ + g - 1.0) + b + 1.0) * recip_gamma(be * n_ + be * g + 1.0 - be);
    if den == 0.0 {
        return Err(Error::RatioUndefined(n as usize));
    }
    Ok(spec.d as f64 * num / den)
}

/// `u_j(x, y)`.
pub fn u_j(spec: &SelfSimilarSpec, pt: &SimilarityVariable, ctrl: &SeriesControl) -> Result<f64> {
    let w = gen_wright(&spec.gen_params(pt.t), ctrl)?.value.re;
    let power = 1.0 - spec.j as f64 / spec.beta;
    Ok(libm::pow(pt.y, spec.b) * libm::pow(pt.t, power) * w)
}

/// For integer `β = p`, the solution
/// `u_s = y^b Σ_k d^k (x y^{−α/p})^{pk+s} / (Γ(−αk − αs/p + b + 1) (pk+s)!)`,
/// `s = 0..p−1`; it equals `u_j` with `j = p − s`.
#[allow(clippy::too_many_arguments)]
pub fn u_s(alpha: f64, p: u32, d: i8, b: f64, s: u32, x: f64, y: f64, ctrl: &SeriesControl) -> Result<f64> {
    if s >= p {
        return Err(Error::InvalidParams(alloc::format!("s must be < p = {p}")));
    }
    if !(y > 0.0) || x < 0.0 {
        return Err(Error::DomainError(alloc::format!("need x >= 0, y > 0 (x={x}, y={y})")));
    }
    let t = x * libm::pow(y, -alpha / p as f64);
    let gp = GenWrightParams {
        mu: -alpha,
        a: -alpha * s as f64 / p as f64 + b + 1.0,
        nu: p as f64,
        b: s as f64 + 1.0,
        z: Complex64::new(d as f64 * libm::pow(t, p as f64), 0.0),
    };
    let w = gen_wright(&gp, ctrl)?.value.re;
    let ts = if s == 0 { 1.0 } else { libm::pow(t, s as f64) };
    Ok(libm::pow(y, b) * ts * w)
}

/// `Σ_s c_s u_s(x, y)` for integer `β = p`.
///
/// Coefficients may be complex: with `c_s = c^s` and `c^p = d` the sum
/// collapses to `y^b φ(−α/p, b+1, c x y^{−α/p})`.
#[allow(clippy::too_many_arguments)]
pub fn integer_beta_combination(
    alpha: f64,
    p: u32,
    b: f64,
    d: i8,
    coeffs: &[Complex64],
    x: f64,
    y: f64,
    ctrl: &SeriesControl,
) -> Result<Complex64> {
    if p < 1 || coeffs.len() != p as usize {
        return Err(Error::InvalidParams(alloc::format!(
            "need p >= 1 and exactly p coefficients (p={p}, got {})",
            coeffs.len()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (s, c) in coeffs.iter().enumerate() {
        if *c == Complex64::new(0.0, 0.0) {
            continue;
        }
        acc += *c * u_s(alpha, p, d, b, s as u32, x, y, ctrl)?;
    }
    Ok(acc)
}

/// `y^b φ(−α/p, b+1, c x y^{−α/p})`, the collapsed form of the combination.
pub fn integer_beta_wright(
    alpha: f64,
    p: u32,
    b: f64,
    c: Complex64,
    x: f64,
    y: f64,
    ctrl: &SeriesControl,
) -> Result<Complex64> {
    let sigma = alpha / p as f64;
    let z = c * x * libm::pow(y, -sigma);
    Ok(libm::pow(y, b) * wright_phi(&WrightParams::new(sigma, b + 1.0, z)?, ctrl)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn ctrl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn spec_validation() {
        assert!(SelfSimilarSpec::new(1.5, 4.0, 1, 0.5, 1).is_ok());
        assert!(SelfSimilarSpec::new(1.5, 1.8, 1, 0.5, 1).is_err());
        assert!(SelfSimilarSpec::new(1.5, 2.5, 2, 0.5, 1).is_err());
        assert!(SelfSimilarSpec::new(1.5, 2.5, 1, 0.5, 4).is_err());
        let s = SelfSimilarSpec::new(1.5, 2.5, 1, 0.3, 1).unwrap();
        assert_eq!((s.p, s.q), (3, 2));
    }

    #[test]
    fn recurrence_matches_closed_form() {
        for &a in &[0.6, 1.5, 1.9] {
            for &be in &[2.2, 2.5, 4.0] {
                for j in 1..=3 {
                    for &d in &[1i8, -1] {
                        let s = SelfSimilarSpec::new(a, be, d, 0.3, j).unwrap();
                        let mut prev = s.coefficient(0);
                        for n in 1..=20 {
                            let cur = s.coefficient(n);
                            // Arguments landing on a pole round differently along the two routes.
                            let arg = -a * n as f64 - a + a * j as f64 / be + 0.3 + 1.0;
                            let pole = |x: f64| x < 0.5 && (x - libm::round(x)).abs() < 1e-12;
                            if pole(arg) || pole(arg + a) {
                                prev = cur;
                                continue;
                            }
                            match coefficient_ratio(&s, n) {
                                Ok(r) => {
                                    let want = prev * r;
                                    assert!(
                                        (cur - want).abs() <= 1e-12 * cur.abs().max(f64::MIN_POSITIVE),
                                        "{a} {be} {j} {n}"
                                    );
                                }
                                Err(e) => panic!("{a} {be} {j} {n}: {e}"),
                            }
                            prev = cur;
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pole_coefficients_vanish() {
        // α = 1, β = 2, j = 2, b = 0: Γ(1 − n) has poles for n ≥ 1.
        let s = SelfSimilarSpec::new(1.0, 2.0, 1, 0.0, 2).unwrap();
        assert_eq!(s.coefficient(1), 0.0);
        assert_eq!(s.coefficient(3), 0.0);
        assert!(matches!(coefficient_ratio(&s, 2), Err(Error::RatioUndefined(2))));
    }

    #[test]
    fn ratio_sign_flips_with_d() {
        let p = SelfSimilarSpec::new(1.5, 2.5, 1, 0.3, 1).unwrap();
        let m = SelfSimilarSpec { d: -1, ..p };
        assert_eq!(coefficient_ratio(&p, 2).unwrap(), -coefficient_ratio(&m, 2).unwrap());
    }

    #[test]
    fn small_t_leading_term() {
        let s = SelfSimilarSpec::new(1.5, 4.0, 1, 0.5, 1).unwrap();
        let pt = SimilarityVariable::new(&s, 1e-3, 1.2).unwrap();
        let lead = libm::pow(1.2, 0.5) * libm::pow(pt.t, 0.75) * s.coefficient(0);
        assert!((u_j(&s, &pt, &ctrl()).unwrap() - lead).abs() < 1e-10 * lead.abs());
    }

    #[test]
    fn u_s_at_origin_and_as_u_j() {
        let v = u_s(1.5, 4, -1, 0.5, 0, 0.0, 2.0, &ctrl()).unwrap();
        assert!((v - libm::pow(2.0, 0.5) * recip_gamma(1.5)).abs() < 1e-15);
        for s in 0..4u32 {
            let spec = SelfSimilarSpec::new(1.5, 4.0, -1, 0.5, 4 - s).unwrap();
            let pt = SimilarityVariable::new(&spec, 0.8, 1.3).unwrap();
            let a = u_j(&spec, &pt, &ctrl()).unwrap();
            let b = u_s(1.5, 4, -1, 0.5, s, 0.8, 1.3, &ctrl()).unwrap();
            assert!((a - b).abs() < 1e-13 * a.abs().max(1.0));
        }
    }

    #[test]
    fn combination_collapses_to_wright() {
        let c = Complex64::from_polar(1.0, PI / 4.0);
        let coeffs: alloc::vec::Vec<Complex64> = (0..4).map(|s| c.powi(s)).collect();
        for &(x, y) in &[(0.3, 0.5), (1.1, 0.9), (2.0, 1.7)] {
            let lhs = integer_beta_combination(1.5, 4, 0.25, -1, &coeffs, x, y, &ctrl()).unwrap();
            let rhs = integer_beta_wright(1.5, 4, 0.25, c, x, y, &ctrl()).unwrap();
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0), "{lhs} {rhs}");
        }
        let zero = [Complex64::new(0.0, 0.0); 4];
        assert_eq!(
            integer_beta_combination(1.5, 4, 0.25, -1, &zero, 0.5, 1.0, &ctrl()).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        // p = 1: a single Wright series.
        let one = [Complex64::new(1.0, 0.0)];
        let lhs = integer_beta_combination(0.5, 1, 0.2, 1, &one, 0.7, 1.1, &ctrl()).unwrap();
        let rhs = integer_beta_wright(0.5, 1, 0.2, Complex64::new(1.0, 0.0), 0.7, 1.1, &ctrl()).unwrap();
        assert!((lhs - rhs).norm() < 1e-13);
    }
}
