//! Special functions: Wright and generalized Wright series, the paper-normalized
//! Fresnel integrals, `₁F₂`, and the kernel decay constant.

use num_complex::Complex64;

use crate::{Error, Result};

mod contour;
mod fresnel;
mod hyper;
mod series;

pub use crate::gamma::{recip_gamma, recip_gamma_complex};
pub use contour::wright_phi_contour;
pub use fresnel::{fresnel_c, fresnel_s};
pub use hyper::hyp1f2;

/// Arguments of `φ(−σ, β, z) = Σ z^k / (k! Γ(β − σk))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightParams {
    pub sigma: f64,
    pub beta: f64,
    pub z: Complex64,
}

impl WrightParams {
    pub fn new(sigma: f64, beta: f64, z: Complex64) -> Result<Self> {
        let p = WrightParams { sigma, beta, z };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return Err(Error::InvalidParams(alloc::format!(
                "sigma must lie in (0, 1), got {}",
                self.sigma
            )));
        }
        if !self.beta.is_finite() || !self.z.re.is_finite() || !self.z.im.is_finite() {
            return Err(Error::InvalidParams("non-finite Wright parameter".into()));
        }
        Ok(())
    }
}

/// Arguments of `W_{(μ,a),(ν,b)}(z) = Σ z^k / (Γ(μk + a) Γ(νk + b))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenWrightParams {
    pub mu: f64,
    pub a: f64,
    pub nu: f64,
    pub b: f64,
    pub z: Complex64,
}

impl GenWrightParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu + self.nu > 0.0) {
            return Err(Error::InvalidParams(alloc::format!(
                "mu + nu must be positive, got {}",
                self.mu + self.nu
            )));
        }
        if ![self.mu, self.a, self.nu, self.b, self.z.re, self.z.im]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        Ok(())
    }
}

/// Stopping and fallback policy for the power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Stop once this many consecutive terms are below `rel_tol·|sum|`;
    /// also the accuracy demanded of the returned value.
    pub rel_tol: f64,
    pub consecutive_small: usize,
    pub max_terms: usize,
    /// Largest term over final sum above which the f64 pass is distrusted.
    pub cancellation_ratio_limit: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-14,
            consecutive_small: 3,
            max_terms: 500,
            cancellation_ratio_limit: 1e8,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms < 1 || !(self.cancellation_ratio_limit >= 1.0) {
            return Err(Error::InvalidParams("invalid series control".into()));
        }
        Ok(())
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    ExtendedSeries,
    Contour,
}

/// A computed value with an a-posteriori error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub error: f64,
    /// Number of series terms or quadrature nodes used.
    pub terms: usize,
    /// Largest term magnitude seen (series only; 0 for the contour method).
    pub max_term: f64,
    pub method: Method,
}

/// `φ(−σ, β, z)` by direct summation, re-summed in double-word arithmetic
/// when the f64 pass loses too many digits.
pub fn wright_phi(p: &WrightParams, ctrl: &SeriesControl) -> Result<Evaluation> {
    p.validate()?;
    ctrl.validate()?;
    series::sum(1.0, 1.0, -p.sigma, p.beta, p.z, ctrl)
}

/// `W_{(μ,a),(ν,b)}(z)` by direct summation with the same fallback policy.
pub fn gen_wright(p: &GenWrightParams, ctrl: &SeriesControl) -> Result<Evaluation> {
    p.validate()?;
    ctrl.validate()?;
    series::sum(p.mu, p.a, p.nu, p.b, p.z, ctrl)
}

/// Magnitude parameter `|Y|` of the saddle point of `φ(−σ, β, z)`.
///
/// The largest series term is roughly `e^{|Y|}`.
pub fn saddle_magnitude(sigma: f64, z: Complex64) -> f64 {
    (1.0 - sigma) * libm::pow(libm::pow(sigma, sigma) * z.norm(), 1.0 / (1.0 - sigma))
}

/// Below this `|Y|` the series is cheap and accurate.
const CONTOUR_MIN_Y: f64 = 6.0;

/// Beyond this `|Y|` the double-word series cannot absorb the cancellation.
const SERIES_MAX_Y: f64 = 40.0;

/// `φ(−σ, β, z)` using whichever method is accurate at this argument: the
/// series for small `|z|`, the steepest-descent contour integral for large
/// `|z|` away from the positive real axis.
pub fn wright_phi_auto(p: &WrightParams, ctrl: &SeriesControl) -> Result<Evaluation> {
    p.validate()?;
    let mut fallback = None;
    if saddle_magnitude(p.sigma, p.z) >= CONTOUR_MIN_Y && contour::admissible(p.sigma, p.z) {
        if let Ok(v) = wright_phi_contour(p) {
            if v.error <= ctrl.rel_tol.max(1e-13) * v.value.norm() {
                return Ok(v);
            }
            if saddle_magnitude(p.sigma, p.z) > SERIES_MAX_Y {
                return Ok(v);
            }
            fallback = Some(v);
        }
    }
    // Far out the argument's own rounding limits every method; keep the
    // contour value when the series cannot do better.
    match (wright_phi(p, ctrl), fallback) {
        (Ok(s), Some(c)) if c.error < s.error => Ok(c),
        (Ok(s), _) => Ok(s),
        (Err(_), Some(c)) => Ok(c),
        (Err(e), None) => Err(e),
    }
}

/// Decay constant `(1 − α/2n)(α/2n)^{α/(2n−α)} cos((n−1)π/(2n−α))` of the kernel.
pub fn decay_rate(alpha: f64, n: u32) -> Result<f64> {
    let two_n = 2.0 * n as f64;
    if n < 1 || !(alpha > 0.0 && alpha < two_n) {
        return Err(Error::DomainError(alloc::format!(
            "decay rate needs n >= 1 and 0 < alpha < 2n (alpha={alpha}, n={n})"
        )));
    }
    let s = alpha / two_n;
    let rate = (1.0 - s)
        * libm::pow(s, alpha / (two_n - alpha))
        * libm::cos((n as f64 - 1.0) * core::f64::consts::PI / (two_n - alpha));
    Ok(rate)
}

/// Envelope `|t|^{−(2n/(2n−α))(b+1/2)} exp(−rate·|t|^{2n/(2n−α)})` with unit constant.
pub fn wright_decay_bound(alpha: f64, n: u32, b: f64, t_abs: f64) -> Result<f64> {
    if !(alpha > 1.0 && alpha <= 2.0) || n < 1 || !(t_abs > 0.0) {
        return Err(Error::DomainError(alloc::format!(
            "decay bound needs 1 < alpha <= 2, n >= 1, |t| > 0 (alpha={alpha}, n={n}, t={t_abs})"
        )));
    }
    let two_n = 2.0 * n as f64;
    let e = two_n / (two_n - alpha);
    let rate = decay_rate(alpha, n)?;
    Ok(libm::pow(t_abs, -e * (b + 0.5)) * libm::exp(-rate * libm::pow(t_abs, e)))
}
