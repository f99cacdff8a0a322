//! The fundamental solution
//!
//! ```text
//! Γ_b(x, y) = y^b/(2n) · Σ_k (−c_k) φ(−α/2n, b+1, −c_k |x| y^{−α/2n}),
//! c_k = e^{iπ(n−1−2k)/(2n)},  k = 0..n−1,
//! ```
//!
//! and its derivatives. Fractional time derivatives and spatial derivatives
//! act on `Γ_b` by shifting parameters, so every derivative used by the solver
//! is again a finite root sum of Wright functions.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::gamma::recip_gamma;
use crate::specfun::{decay_rate, wright_phi_auto, SeriesControl, WrightParams};
use crate::{Error, Result};

/// `(α, n, b)` identifying `Γ_b` for the equation of order `2n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalSolutionSpec {
    pub alpha: f64,
    pub n: u32,
    pub b: f64,
    /// Set when `α = 2` is admitted for closed-form validation.
    pub validation: bool,
}

impl FundamentalSolutionSpec {
    /// A spec for `1 < α < 2`.
    pub fn new(alpha: f64, n: u32, b: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(Error::InvalidParams(alloc::format!(
                "alpha must lie in (1, 2), got {alpha}"
            )));
        }
        Self::checked(alpha, n, b, false)
    }

    /// A spec that also admits the boundary case `α = 2` (closed-form checks only).
    pub fn validation(alpha: f64, n: u32, b: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha <= 2.0) {
            return Err(Error::InvalidParams(alloc::format!(
                "alpha must lie in (1, 2], got {alpha}"
            )));
        }
        Self::checked(alpha, n, b, alpha == 2.0)
    }

    fn checked(alpha: f64, n: u32, b: f64, validation: bool) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if !b.is_finite() {
            return Err(Error::InvalidParams("b must be finite".into()));
        }
        Ok(FundamentalSolutionSpec {
            alpha,
            n,
            b,
            validation,
        })
    }

    /// `σ = α/(2n)`.
    pub fn sigma(&self) -> f64 {
        self.alpha / (2.0 * self.n as f64)
    }

    pub fn shifted(&self) -> ShiftedSpec {
        ShiftedSpec {
            base: *self,
            time_shift: 0.0,
            space_order: 0,
        }
    }
}

/// The roots `c_k`, `k = 0..n−1`, of `c^{2n} = (−1)^{n−1}` with `Re c > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
}

impl RootSet {
    /// Index pairs `(k, n−1−k)` of conjugate roots, plus the real root for odd `n`.
    fn conjugate_pairs(&self) -> (usize, Option<usize>) {
        let n = self.roots.len();
        (n / 2, if n % 2 == 1 { Some(n / 2) } else { None })
    }
}

pub fn roots(n: u32) -> Result<RootSet> {
    if n < 1 {
        return Err(Error::DomainError("roots need n >= 1".into()));
    }
    let two_n = 2.0 * n as f64;
    let roots = (0..n)
        .map(|k| {
            let ang = (n as f64 - 1.0 - 2.0 * k as f64) * PI / two_n;
            Complex64::new(libm::cos(ang), libm::sin(ang))
        })
        .collect();
    Ok(RootSet { roots })
}

/// `D^γ_y ∂^s_x Γ_b`: effective index `b − γ − σs` and per-root factor `(−c)^{s+1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedSpec {
    pub base: FundamentalSolutionSpec,
    pub time_shift: f64,
    pub space_order: u32,
}

impl From<FundamentalSolutionSpec> for ShiftedSpec {
    fn from(s: FundamentalSolutionSpec) -> Self {
        s.shifted()
    }
}

/// Riemann–Liouville derivative of order `γ` in `y` (an integral when `γ < 0`).
pub fn shift_time(spec: impl Into<ShiftedSpec>, gamma: f64) -> ShiftedSpec {
    let mut s = spec.into();
    s.time_shift += gamma;
    s
}

/// Spatial derivative of order `s`.
pub fn shift_space(spec: impl Into<ShiftedSpec>, s: u32) -> ShiftedSpec {
    let mut sp = spec.into();
    sp.space_order += s;
    sp
}

impl ShiftedSpec {
    pub fn sigma(&self) -> f64 {
        self.base.sigma()
    }

    /// `b − γ − σs`.
    pub fn b_eff(&self) -> f64 {
        self.base.b - self.time_shift - self.sigma() * self.space_order as f64
    }

    /// Per-root weights `(−c_k)^{s+1}/(2n)`.
    fn weights(&self, rs: &RootSet) -> Vec<Complex64> {
        let p = self.space_order as i32 + 1;
        let two_n = 2.0 * self.base.n as f64;
        rs.roots.iter().map(|c| (-*c).powi(p) / two_n).collect()
    }

    /// The scaled profile `k(t)` with `D^γ ∂^s Γ_b(dx, dy) = ± dy^{b_eff} k(|dx|/dy^σ)`,
    /// summing conjugate roots in pairs so the result is real by construction.
    pub fn profile_value(&self, t: f64, ctrl: &SeriesControl) -> Result<f64> {
        let rs = roots(self.base.n)?;
        let w = self.weights(&rs);
        let beta = self.b_eff() + 1.0;
        let sigma = self.sigma();
        let (pairs, mid) = rs.conjugate_pairs();
        let mut acc = 0.0;
        for (c, wk) in rs.roots.iter().zip(&w).take(pairs) {
            let p = WrightParams::new(sigma, beta, -*c * t)?;
            let v = wright_phi_auto(&p, ctrl)?.value;
            acc += 2.0 * (*wk * v).re;
        }
        if let Some(k) = mid {
            let p = WrightParams::new(sigma, beta, Complex64::new(-t, 0.0))?;
            let v = wright_phi_auto(&p, ctrl)?.value;
            acc += (w[k] * v).re;
        }
        Ok(acc)
    }

    /// Value at `(dx, dy)` from the full root sum, with the realness check.
    pub fn evaluate(&self, dx: f64, dy: f64, ctrl: &SeriesControl) -> Result<f64> {
        if !(dy > 0.0) {
            return Err(Error::DomainError(alloc::format!("dy must be positive, got {dy}")));
        }
        let rs = roots(self.base.n)?;
        let w = self.weights(&rs);
        let beta = self.b_eff() + 1.0;
        let sigma = self.sigma();
        let t = libm::fabs(dx) / libm::pow(dy, sigma);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (c, wk) in rs.roots.iter().zip(&w) {
            let p = WrightParams::new(sigma, beta, -*c * t)?;
            let term = *wk * wright_phi_auto(&p, ctrl)?.value;
            scale += term.norm();
            acc += term;
        }
        let residue = libm::fabs(acc.im);
        if residue > 1e-12 * libm::fabs(acc.re) + 1e-14 * scale + f64::MIN_POSITIVE {
            return Err(Error::RealnessViolation { value: acc.re, residue });
        }
        let mut v = libm::pow(dy, self.b_eff()) * acc.re;
        if dx < 0.0 && self.space_order % 2 == 1 {
            v = -v;
        }
        Ok(v)
    }
}

/// `Γ_b(dx, dy)`.
pub fn gamma_b(spec: &FundamentalSolutionSpec, dx: f64, dy: f64, ctrl: &SeriesControl) -> Result<f64> {
    spec.shifted().evaluate(dx, dy, ctrl)
}

/// The jump `∂^s Γ_b(0+, ·) − ∂^s Γ_b(0−, ·) = coefficient · dy^power`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalJump {
    pub coefficient: f64,
    pub power: f64,
}

impl DiagonalJump {
    pub fn eval(&self, dy: f64) -> f64 {
        if self.coefficient == 0.0 {
            0.0
        } else {
            self.coefficient * libm::pow(dy, self.power)
        }
    }
}

/// Jump of the `s`-th spatial derivative across `x = ξ`.
///
/// Nonzero only for `s + 1 = 2n·m`, where it equals
/// `(−1)^{(n−1)m} dy^{b−σs} / Γ(b + 1 − σs)`.
pub fn diagonal_jump(spec: &FundamentalSolutionSpec, s: u32) -> DiagonalJump {
    let two_n = 2 * spec.n;
    let power = spec.b - spec.sigma() * s as f64;
    if !(s + 1).is_multiple_of(two_n) {
        return DiagonalJump {
            coefficient: 0.0,
            power,
        };
    }
    let m = (s + 1) / two_n;
    let sign = if ((spec.n - 1) * m).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    DiagonalJump {
        coefficient: sign * recip_gamma(power + 1.0),
        power,
    }
}

/// Exponent `2n/(2n−α)` of the kernel's spatial decay.
pub fn decay_exponent(alpha: f64, n: u32) -> f64 {
    let two_n = 2.0 * n as f64;
    two_n / (two_n - alpha)
}

/// Smallest `R` with `rate·R^{2n/(2n−α)}·dy^{−α/(2n−α)} ≥ ln(1/tail_tol) + 2`.
pub fn truncation_radius(spec: impl Into<ShiftedSpec>, dy: f64, tail_tol: f64) -> Result<f64> {
    let sp = spec.into();
    let (alpha, n) = (sp.base.alpha, sp.base.n);
    if !(dy > 0.0) || !(tail_tol > 0.0 && tail_tol < 1.0) {
        return Err(Error::DomainError(alloc::format!(
            "truncation radius needs dy > 0 and 0 < tol < 1 (dy={dy}, tol={tail_tol})"
        )));
    }
    let rate = decay_rate(alpha, n)?;
    if !(rate > 1e-12) {
        return Err(Error::DomainError(alloc::format!(
            "kernel does not decay for alpha={alpha}, n={n}"
        )));
    }
    let two_n = 2.0 * n as f64;
    let need = libm::log(1.0 / tail_tol) + 2.0;
    Ok(libm::pow(
        libm::pow(dy, alpha / (two_n - alpha)) * need / rate,
        (two_n - alpha) / two_n,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{fresnel_c, fresnel_s};

    fn ctrl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn root_sets() {
        assert_eq!(roots(1).unwrap().roots, alloc::vec![Complex64::new(1.0, 0.0)]);
        let r2 = roots(2).unwrap().roots;
        let e = Complex64::from_polar(1.0, PI / 4.0);
        assert!((r2[0] - e).norm() < 1e-16 && (r2[1] - e.conj()).norm() < 1e-16);
        for n in 1..=5u32 {
            let rs = roots(n).unwrap();
            let target = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
            for (k, c) in rs.roots.iter().enumerate() {
                assert!(c.re > 0.0);
                assert!((c.powi(2 * n as i32) - target).norm() < 1e-14);
                assert!((rs.roots[n as usize - 1 - k] - c.conj()).norm() < 1e-15);
            }
        }
        assert!(roots(0).is_err());
    }

    #[test]
    fn value_at_origin() {
        let spec = FundamentalSolutionSpec::new(1.5, 2, 0.5).unwrap();
        let v = gamma_b(&spec, 0.0, 1.0, &ctrl()).unwrap();
        assert!((v + 0.3989422804014327).abs() < 1e-15);
    }

    #[test]
    fn evenness_and_pairing() {
        for &(a, n, b) in &[(1.5, 2, 0.5), (1.3, 3, -0.5), (1.9, 2, 0.1)] {
            let spec = FundamentalSolutionSpec::new(a, n, b).unwrap();
            for &dx in &[0.1, 0.7, 2.5, 6.0] {
                let p = gamma_b(&spec, dx, 0.8, &ctrl()).unwrap();
                let m = gamma_b(&spec, -dx, 0.8, &ctrl()).unwrap();
                assert_eq!(p, m);
                let t = dx / 0.8f64.powf(spec.sigma());
                let k = spec.shifted().profile_value(t, &ctrl()).unwrap();
                let via_profile = 0.8f64.powf(b) * k;
                assert!((via_profile - p).abs() <= 1e-13 * p.abs().max(1e-300));
            }
        }
    }

    #[test]
    fn odd_derivatives_flip_sign() {
        let spec = FundamentalSolutionSpec::new(1.5, 2, 0.5).unwrap();
        let d3 = shift_space(spec, 3);
        let p = d3.evaluate(0.4, 1.0, &ctrl()).unwrap();
        let m = d3.evaluate(-0.4, 1.0, &ctrl()).unwrap();
        assert_eq!(p, -m);
    }

    #[test]
    fn shifts_compose() {
        let spec = FundamentalSolutionSpec::new(1.5, 2, 0.5).unwrap();
        assert_eq!(shift_time(spec, 0.0), spec.shifted());
        assert_eq!(shift_space(spec, 0), spec.shifted());
        let a = shift_time(shift_time(spec, 0.3), 0.45);
        let b = shift_time(spec, 0.75);
        assert!((a.b_eff() - b.b_eff()).abs() < 1e-15);
        let c = shift_space(shift_time(spec, 0.2), 2);
        let d = shift_time(shift_space(spec, 2), 0.2);
        assert_eq!(c, d);
    }

    #[test]
    fn time_shift_by_alpha_matches_space_shift_by_2n() {
        // D^α Γ_b = (−1)^{n−1} ∂^{2n} Γ_b off the diagonal.
        for &(a, n) in &[(1.5, 2u32), (1.3, 3)] {
            let spec = FundamentalSolutionSpec::new(a, n, 0.4).unwrap();
            let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
            for &(dx, dy) in &[(0.3, 0.8), (1.2, 0.5), (-2.0, 1.7)] {
                let t = shift_time(spec, a).evaluate(dx, dy, &ctrl()).unwrap();
                let s = shift_space(spec, 2 * n).evaluate(dx, dy, &ctrl()).unwrap();
                assert!((t - sign * s).abs() <= 1e-10 * t.abs(), "{t} vs {s}");
            }
        }
    }

    #[test]
    fn jumps() {
        let spec = FundamentalSolutionSpec::new(1.4, 2, 0.3).unwrap();
        assert_eq!(diagonal_jump(&spec, 1).eval(1.0), 0.0);
        let j = diagonal_jump(&spec, 3).eval(1.0);
        assert!((j + 0.27581566283020931).abs() < 1e-15);
        // b + 1 − σs = 0 at b = 0.125 for α = 1.5, n = 2, s = 3.
        let pole = FundamentalSolutionSpec::new(1.5, 2, 0.125).unwrap();
        assert_eq!(diagonal_jump(&pole, 3).eval(1.0), 0.0);
        let n3 = FundamentalSolutionSpec::new(1.5, 3, 0.3).unwrap();
        assert!(diagonal_jump(&n3, 5).coefficient > 0.0);
        // m = 2: (−1)^{(n−1)m} = +1 for n = 2.
        assert!(diagonal_jump(&spec, 7).coefficient > 0.0);
    }

    #[test]
    fn truncation() {
        let spec = FundamentalSolutionSpec::new(1.5, 2, 0.5).unwrap();
        let r = truncation_radius(spec, 1.0, 1e-12).unwrap();
        assert!((r - 33.56).abs() < 0.05, "{r}");
        assert!(truncation_radius(spec, 2.0, 1e-12).unwrap() > r);
        assert!(truncation_radius(spec, 1.0, 1e-14).unwrap() > r);
        assert!(truncation_radius(spec, 1.0, 1.5).is_err());
    }

    #[test]
    fn beam_equation_closed_form() {
        let spec = FundamentalSolutionSpec::validation(2.0, 2, 0.5).unwrap();
        assert!(FundamentalSolutionSpec::new(2.0, 2, 0.5).is_err());
        let mut worst: f64 = 0.0;
        for &t in &[0.5, 1.0, 2.0] {
            for i in 0..=50 {
                let tau = 5.0 * i as f64 / 50.0;
                let dx = tau * libm::sqrt(t);
                let q = tau * tau / 4.0;
                let g2 = libm::sqrt(t / PI) * libm::sin(q + PI / 4.0)
                    + dx / 2.0 * 2f64.sqrt() * (fresnel_s(q).unwrap() - fresnel_c(q).unwrap());
                let v = -gamma_b(&spec, dx, t, &ctrl()).unwrap();
                worst = worst.max((v - g2).abs());
            }
        }
        assert!(worst < 1e-12, "{worst}");
    }
}
