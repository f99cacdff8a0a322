//! Steepest-descent evaluation of `φ(−σ, β, z)` for large `|z|`.
//!
//! With `u = e^v` the Hankel representation reads
//!
//! ```text
//! φ(−σ, β, z) = (1/2πi) ∫ exp(G(v)) e^{(1−β)v} dv,   G(v) = e^v + z e^{σv}.
//! ```
//!
//! The contour is the steepest-descent path through the saddle
//! `u_s = (−σz)^{1/(1−σ)}`, parametrized by `G(v(p)) = G_s − p²`, and the
//! resulting Gaussian-weighted integral in `p` is summed with the trapezoidal
//! rule. This is an exact integral representation evaluated numerically, not
//! an asymptotic expansion: the path is traced by Newton continuation, so no
//! expansion coefficients are involved.

use num_complex::Complex64;

use super::{Evaluation, Method, WrightParams};
use crate::{Error, Result};

const STEP: f64 = 0.2;
const P_MAX: f64 = 7.0;
const SUBSTEPS: usize = 4;
const NEWTON: usize = 4;

/// The path reaches the Hankel valleys only when `|arg(−z)| < π(1−σ)`.
pub(super) fn admissible(sigma: f64, z: Complex64) -> bool {
    let w = -z;
    w.norm() > 0.0 && libm::fabs(w.arg()) < core::f64::consts::PI * (1.0 - sigma) - 0.05
}

struct Path {
    w: Complex64,
    sigma: f64,
    g_s: Complex64,
}

impl Path {
    #[inline]
    fn g(&self, v: Complex64) -> (Complex64, Complex64) {
        let ev = v.exp();
        let esv = (v * self.sigma).exp();
        (ev - self.w * esv, ev - self.w * esv * self.sigma)
    }

    /// Solves `G(v) = G_s − p²` starting from `v`.
    fn correct(&self, mut v: Complex64, p: f64) -> Result<Complex64> {
        let target = self.g_s - p * p;
        for _ in 0..NEWTON {
            let (g, dg) = self.g(v);
            if dg.norm() == 0.0 {
                return Err(Error::NonConvergence { terms: 0 });
            }
            v -= (g - target) / dg;
        }
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonConvergence { terms: 0 });
        }
        Ok(v)
    }
}

/// Traces one half of the path (`dir = ±1`) and returns `Σ e^{−p²} e^{(1−β)v} v'`
/// over the nodes `p = dir·j·h`, `j ≥ 1`, separately for even and odd `j`.
fn half_sum(
    path: &Path,
    v_s: Complex64,
    a: Complex64,
    c: Complex64,
    beta: f64,
    dir: f64,
) -> Result<(Complex64, Complex64)> {
    let nodes = libm::ceil(P_MAX / STEP) as usize;
    let dp = STEP / SUBSTEPS as f64;
    let mut even = Complex64::new(0.0, 0.0);
    let mut odd = Complex64::new(0.0, 0.0);
    let mut v = v_s;
    let mut dv = a;
    let mut p = 0.0;
    for j in 1..=nodes {
        for i in 0..SUBSTEPS {
            let p_next = p + dp;
            let guess = if j == 1 && i == 0 {
                v_s + a * (dir * p_next) + c * (p_next * p_next)
            } else {
                v + dv * (dir * dp)
            };
            v = path.correct(guess, p_next)?;
            let (_, dg) = path.g(v);
            // dv/dp along the signed parameter dir·p.
            dv = -(dir * 2.0 * p_next) / dg;
            p = p_next;
        }
        let f = libm::exp(-p * p) * (v * (1.0 - beta)).exp() * dv;
        if j % 2 == 0 {
            even += f;
        } else {
            odd += f;
        }
    }
    Ok((even, odd))
}

/// Distance from the real `p` axis to the nearest branch point of `v(p)`.
///
/// The other saddles `v_k = v_s + 2πik/(1−σ)` put branch points at
/// `p² = G_s − G_k`; one close to the axis slows the trapezoidal rule to
/// `O(e^{−2πd/h})`, which the coarse/fine comparison does not see.
fn singularity_distance(sigma: f64, u_s: Complex64, g_s: Complex64) -> f64 {
    let mut d = f64::INFINITY;
    for k in [-3i32, -2, -1, 1, 2, 3] {
        let rot = Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI * k as f64 / (1.0 - sigma));
        let g_k = u_s * rot * (1.0 - 1.0 / sigma);
        let diff = g_s - g_k;
        // Saddles with the same value are images of this one.
        if diff.norm() <= 1e-8 * g_s.norm() {
            continue;
        }
        d = d.min(libm::fabs(diff.sqrt().im));
    }
    d
}

/// `φ(−σ, β, z)` by steepest-descent quadrature.
///
/// Requires `|arg(−z)| < π(1−σ)`; accurate once the saddle is well separated
/// from its neighbours, roughly `|Y| ≳ 5` in the notation of
/// [`super::saddle_magnitude`].
pub fn wright_phi_contour(p: &WrightParams) -> Result<Evaluation> {
    p.validate()?;
    let sigma = p.sigma;
    if !admissible(sigma, p.z) {
        return Err(Error::DomainError(alloc::format!(
            "contour method needs |arg(-z)| < pi(1-sigma), got arg(-z) = {}",
            (-p.z).arg()
        )));
    }
    let w = -p.z;
    let v_s = (w * sigma).ln() / (1.0 - sigma);
    let u_s = v_s.exp();
    let g_s = -u_s * ((1.0 - sigma) / sigma);
    let g2 = u_s * (1.0 - sigma);
    let g3 = u_s * (1.0 - sigma * sigma);
    let i = Complex64::new(0.0, 1.0);
    let a = i * (Complex64::new(2.0, 0.0) / g2).sqrt();
    // Far in the decaying sector the value is below the f64 range; the
    // Gaussian-weighted path integral is bounded by a few times its centre.
    let log_mag = g_s.re + ((1.0 - p.beta) * v_s).re + libm::log(a.norm()) + 2.0;
    if log_mag < -760.0 {
        return Ok(Evaluation {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            terms: 0,
            max_term: 0.0,
            method: Method::Contour,
        });
    }
    let c = -g3 * a * a / (g2 * 6.0);
    let path = Path { w, sigma, g_s };

    let (ue, uo) = half_sum(&path, v_s, a, c, p.beta, 1.0)?;
    let (le, lo) = half_sum(&path, v_s, a, c, p.beta, -1.0)?;
    let centre = (v_s * (1.0 - p.beta)).exp() * a;

    let pre = g_s.exp() / (2.0 * core::f64::consts::PI * i);
    let fine = (centre + ue + uo + le + lo) * STEP;
    let coarse = (centre + ue + le) * (2.0 * STEP);
    let value = pre * fine;
    // Trapezoidal error on analytic integrands decays geometrically in 1/h,
    // so the fine error is about the square of the relative coarse error.
    let rel = ((fine - coarse).norm() / fine.norm()).min(1.0);
    let round = f64::EPSILON * (16.0 + g_s.norm() + libm::fabs(1.0 - p.beta) * v_s.norm());
    let near = libm::exp(-2.0 * core::f64::consts::PI * singularity_distance(sigma, u_s, g_s) / STEP);
    let error = value.norm() * (rel * rel + round + near);
    // Beyond the f64 range (|φ| ≈ e^{Re G_s} above e^{709}) nothing useful can be returned.
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::NonConvergence { terms: 0 });
    }
    Ok(Evaluation {
        value,
        error,
        terms: 2 * libm::ceil(P_MAX / STEP) as usize + 1,
        max_term: 0.0,
        method: Method::Contour,
    })
}
