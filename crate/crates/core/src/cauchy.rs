//! The Cauchy problem
//!
//! ```text
//! D^α_{0y} u − (−1)^{n−1} ∂^{2n}_x u = f(x, y),     y > 0,
//! lim_{y→0} D^{α−1} u = φ(x),   lim_{y→0} D^{α−2} u = ψ(x),
//! ```
//!
//! evaluated through the representation
//!
//! ```text
//! u = −∫ φ(ξ) Γ_{b1}(x−ξ, y) dξ − ∫ ψ(ξ) Γ_{b2}(x−ξ, y) dξ
//!     − ∫_0^y ∫ f(ξ, η) Γ_{b1}(x−ξ, y−η) dξ dη,
//! b1 = α − α/2n − 1,   b2 = α − α/2n − 2.
//! ```
//!
//! Uniqueness of the Cauchy problem is not claimed; the solver returns this
//! representation.
//!
//! Derivatives of `u` in `x` and fractional derivatives in `y` are obtained
//! by shifting the kernel parameters, never by differencing `u`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::Cell;

use crate::catalog::{check_growth, describe, Func, Source};
use crate::fundsol::{decay_exponent, shift_space, shift_time, FundamentalSolutionSpec, ShiftedSpec};
use crate::gamma::recip_gamma;
use crate::profile::KernelProfile;
use crate::quad::{integrate_breaks, QuadConfig};
use crate::specfun::{decay_rate, SeriesControl};
use crate::{Error, Result};

/// Tail level used when tabulating profiles; quadrature never needs more.
const PROFILE_TAIL: f64 = 1e-17;

#[derive(Debug, Clone, PartialEq)]
pub struct CauchyProblemSpec {
    pub alpha: f64,
    pub n: u32,
    pub phi: Func,
    pub psi: Func,
    pub f: Source,
}

impl CauchyProblemSpec {
    pub fn new(alpha: f64, n: u32, phi: Func, psi: Func, f: Source) -> Result<Self> {
        FundamentalSolutionSpec::new(alpha, n, 0.0)?;
        for g in [&phi, &psi, &f.spatial] {
            check_growth(&g.certificate(), alpha, n)?;
        }
        if !(f.y_power >= 0.0) {
            return Err(Error::InvalidParams("source power in y must be >= 0".into()));
        }
        Ok(CauchyProblemSpec { alpha, n, phi, psi, f })
    }

    /// Parse `phi`, `psi` and `f` from catalog text.
    pub fn parse(alpha: f64, n: u32, phi: &str, psi: &str, f: &str) -> Result<Self> {
        FundamentalSolutionSpec::new(alpha, n, 0.0)?;
        Self::new(
            alpha,
            n,
            Func::parse(phi, alpha, n)?,
            Func::parse(psi, alpha, n)?,
            Source::parse(f, alpha, n)?,
        )
    }

    pub fn sigma(&self) -> f64 {
        self.alpha / (2.0 * self.n as f64)
    }

    /// Kernel index paired with `φ` and `f`.
    pub fn b1(&self) -> f64 {
        self.alpha - self.sigma() - 1.0
    }

    /// Kernel index paired with `ψ`.
    pub fn b2(&self) -> f64 {
        self.alpha - self.sigma() - 2.0
    }

    /// `(−1)^{n−1}`.
    pub fn parity(&self) -> f64 {
        if (self.n - 1).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// Canonical text identifying the problem.
    pub fn fingerprint(&self) -> String {
        let mut f = describe(&self.f.spatial);
        if self.f.y_power != 0.0 {
            f.push_str(&format!("*y^{:?}", self.f.y_power));
        }
        format!(
            "alpha={:?};n={};phi={};psi={};f={}",
            self.alpha,
            self.n,
            describe(&self.phi),
            describe(&self.psi),
            f
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Upper bound on the kernel tail level at the truncation radius.
    pub tail_tol: f64,
    pub max_panels: usize,
    /// Initial panels of the graded variable in the `η` integral.
    pub grading_points: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            tail_tol: 1e-13,
            max_panels: 2000,
            grading_points: 8,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let pos = |x: f64| x > 0.0 && x.is_finite();
        if !(pos(self.abs_tol) && pos(self.rel_tol) && pos(self.tail_tol) && self.tail_tol < 1.0) {
            return Err(Error::InvalidParams(
                "tolerances must be positive (tail_tol < 1)".into(),
            ));
        }
        if self.max_panels < 8 || self.grading_points < 1 {
            return Err(Error::InvalidParams(
                "need max_panels >= 8 and grading_points >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// A value with its error estimate; `converged` is false when a tolerance was missed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

impl Estimate {
    pub const ZERO: Estimate = Estimate {
        value: 0.0,
        error: 0.0,
        converged: true,
    };

    fn exact(value: f64) -> Self {
        Estimate {
            value,
            error: 0.0,
            converged: true,
        }
    }

    fn scale(self, c: f64) -> Self {
        Estimate {
            value: c * self.value,
            error: libm::fabs(c) * self.error,
            converged: self.converged,
        }
    }
}

impl core::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        Estimate {
            value: self.value + o.value,
            error: self.error + o.error,
            converged: self.converged && o.converged,
        }
    }
}

impl core::ops::Sub for Estimate {
    type Output = Estimate;
    fn sub(self, o: Estimate) -> Estimate {
        self + o.scale(-1.0)
    }
}

/// Which initial datum a convolution uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialData {
    /// `φ`, kernel index `b1`.
    Phi,
    /// `ψ`, kernel index `b2`.
    Psi,
}

/// A linear operator applied to `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Operator {
    Value,
    /// Riemann–Liouville `D^γ_{0y}` (a fractional integral when `γ < 0`), `γ ≤ α`.
    Time(f64),
    /// `∂^m_x`, `m ≤ 2n`.
    Space(u32),
}

#[derive(Debug, Clone)]
struct Kernels {
    op: Operator,
    b1: Option<KernelProfile>,
    b2: Option<KernelProfile>,
}

#[derive(Debug, Clone)]
pub struct GridSolution {
    pub x_nodes: Vec<f64>,
    pub y_nodes: Vec<f64>,
    /// `values[j][i]` at `(x_nodes[i], y_nodes[j])`.
    pub values: Vec<Vec<f64>>,
    pub error_estimates: Vec<Vec<f64>>,
    /// Set where the requested tolerance was not met.
    pub flagged: Vec<Vec<bool>>,
    pub problem_fingerprint: String,
}

impl GridSolution {
    /// Assemble from per-node estimates in row-major `(y, x)` order.
    pub fn from_estimates(spec: &CauchyProblemSpec, x_nodes: &[f64], y_nodes: &[f64], est: &[Estimate]) -> Self {
        assert_eq!(est.len(), x_nodes.len() * y_nodes.len());
        let rows = |f: &dyn Fn(&Estimate) -> f64| -> Vec<Vec<f64>> {
            est.chunks(x_nodes.len().max(1))
                .map(|r| r.iter().map(f).collect())
                .collect()
        };
        GridSolution {
            x_nodes: x_nodes.to_vec(),
            y_nodes: y_nodes.to_vec(),
            values: rows(&|e| e.value),
            error_estimates: rows(&|e| e.error),
            flagged: est
                .chunks(x_nodes.len().max(1))
                .map(|r| r.iter().map(|e| !e.converged).collect())
                .collect(),
            problem_fingerprint: spec.fingerprint(),
        }
    }

    pub fn any_flagged(&self) -> bool {
        self.flagged.iter().flatten().any(|f| *f)
    }
}

/// Evaluator holding the kernel tables for a fixed problem and operator set.
#[derive(Debug, Clone)]
pub struct CauchySolver {
    pub spec: CauchyProblemSpec,
    pub cfg: QuadratureConfig,
    ctrl: SeriesControl,
    kernels: Vec<Kernels>,
    /// `rate`, exponent `p` of the kernel envelope `exp(−rate s^p)`.
    rate: f64,
    p: f64,
}

fn op_shift(spec: FundamentalSolutionSpec, op: Operator) -> ShiftedSpec {
    match op {
        Operator::Value => spec.shifted(),
        Operator::Time(g) => shift_time(spec, g),
        Operator::Space(m) => shift_space(spec, m),
    }
}

impl CauchySolver {
    /// A solver for `u` itself.
    pub fn new(spec: CauchyProblemSpec, cfg: QuadratureConfig) -> Result<Self> {
        Self::with_operators(spec, cfg, &[Operator::Value])
    }

    /// A solver able to apply each operator in `ops` to `u`.
    pub fn with_operators(spec: CauchyProblemSpec, cfg: QuadratureConfig, ops: &[Operator]) -> Result<Self> {
        cfg.validate()?;
        let ctrl = SeriesControl::default();
        let mut solver = CauchySolver {
            rate: decay_rate(spec.alpha, spec.n)?,
            p: decay_exponent(spec.alpha, spec.n),
            spec,
            cfg,
            ctrl,
            kernels: Vec::new(),
        };
        for op in ops {
            solver.ensure(*op, true, true)?;
        }
        Ok(solver)
    }

    fn ensure(&mut self, op: Operator, need_b1: bool, need_b2: bool) -> Result<()> {
        match op {
            Operator::Time(g) if !(g <= self.spec.alpha) => {
                return Err(Error::DomainError(format!("time order {g} exceeds alpha")));
            }
            Operator::Space(m) if m > 2 * self.spec.n => {
                return Err(Error::DomainError(format!("space order {m} exceeds 2n")));
            }
            _ => {}
        }
        let (a, n) = (self.spec.alpha, self.spec.n);
        let need_b1 = need_b1 && !(self.spec.phi.is_zero() && self.spec.f.is_zero());
        let need_b2 = need_b2 && !self.spec.psi.is_zero();
        let idx = match self.kernels.iter().position(|k| k.op == op) {
            Some(i) => i,
            None => {
                self.kernels.push(Kernels { op, b1: None, b2: None });
                self.kernels.len() - 1
            }
        };
        if need_b1 && self.kernels[idx].b1.is_none() {
            let sh = op_shift(FundamentalSolutionSpec::new(a, n, self.spec.b1())?, op);
            self.kernels[idx].b1 = Some(KernelProfile::new(sh, PROFILE_TAIL, &self.ctrl)?);
        }
        if need_b2 && self.kernels[idx].b2.is_none() {
            let sh = op_shift(FundamentalSolutionSpec::new(a, n, self.spec.b2())?, op);
            self.kernels[idx].b2 = Some(KernelProfile::new(sh, PROFILE_TAIL, &self.ctrl)?);
        }
        Ok(())
    }

    fn kernel(&self, op: Operator, which: InitialData) -> Result<&KernelProfile> {
        self.kernels
            .iter()
            .find(|k| k.op == op)
            .and_then(|k| match which {
                InitialData::Phi => k.b1.as_ref(),
                InitialData::Psi => k.b2.as_ref(),
            })
            .ok_or_else(|| Error::InvalidParams(format!("solver was not prepared for {op:?}")))
    }

    /// Truncation radius in `s = |x−ξ|/y^σ` units for data with the given
    /// certificate, or `None` if the kernel cannot control the growth at this `y`.
    fn reach(&self, data: &Func, x: f64, h: f64, tail: f64) -> Result<f64> {
        let cert = data.certificate();
        let need = libm::log(cert.amplitude.max(1e-300) / tail).max(0.0) + 2.0;
        if cert.k == 0.0 {
            return Ok(libm::pow(need / self.rate, 1.0 / self.p));
        }
        let c = cert.k * libm::pow(2.0, self.p - 1.0);
        let eff = self.rate - c * libm::pow(h, self.p);
        if !(eff > 0.0) {
            return Err(Error::DomainError(format!(
                "data growth {} is not controlled by the kernel at this y",
                cert.k
            )));
        }
        Ok(libm::pow(
            (need + c * libm::pow(libm::fabs(x), self.p)) / eff,
            1.0 / self.p,
        ))
    }

    fn tail_level(&self) -> f64 {
        self.cfg.tail_tol.min(self.cfg.abs_tol / 4.0)
    }

    fn quad_cfg(&self, abs_tol: f64) -> QuadConfig {
        QuadConfig {
            abs_tol,
            rel_tol: self.cfg.rel_tol,
            max_panels: self.cfg.max_panels,
        }
    }

    fn breaks(prof: &KernelProfile, lo: f64, s: f64) -> Vec<f64> {
        let mut b: Vec<f64> = prof.breaks().into_iter().filter(|t| *t > lo && *t < s).collect();
        b.insert(0, lo);
        b.push(s);
        b
    }

    /// `∫ data(ξ) K(x−ξ, y) dξ` for the profile `K` of `prof`.
    fn convolve(
        &self,
        prof: &KernelProfile,
        data: &Func,
        deriv: usize,
        x: f64,
        y: f64,
        abs_tol: f64,
    ) -> Result<Estimate> {
        if data.is_zero() {
            return Ok(Estimate::ZERO);
        }
        let sigma = self.spec.sigma();
        let h = libm::pow(y, sigma);
        let scale = libm::pow(y, prof.spec.b_eff() + sigma);
        let s_end = self.reach(data, x, h, self.tail_level())?;
        let sign = if prof.spec.space_order % 2 == 1 { -1.0 } else { 1.0 };
        let g = |t: f64| data.derivative(deriv, t).unwrap_or(f64::NAN);
        if data.derivative(deriv, x).is_none() {
            return Err(Error::InvalidParams(format!(
                "no closed-form derivative of order {deriv}"
            )));
        }
        let r = integrate_breaks(
            &mut |s| (g(x - h * s) + sign * g(x + h * s)) * prof.value(s),
            &Self::breaks(prof, 0.0, s_end),
            &self.quad_cfg(abs_tol / scale.max(1e-300)),
        );
        Ok(Estimate {
            value: scale * r.value,
            error: scale * (r.error + 2.0 * self.tail_level()),
            converged: r.converged,
        })
    }

    /// `∫_0^y dη ∫ f(ξ, η) K(x−ξ, y−η) dξ`, inner integral in `ξ`.
    ///
    /// `deriv` replaces `g` by `g^{(deriv)}` in `f = g(x) y^m`.
    fn source_eta_outer(&self, prof: &KernelProfile, deriv: usize, x: f64, y: f64, abs_tol: f64) -> Result<Estimate> {
        let f = &self.spec.f;
        if f.is_zero() {
            return Ok(Estimate::ZERO);
        }
        let g = |t: f64| f.spatial.derivative(deriv, t).unwrap_or(f64::NAN);
        if f.spatial.derivative(deriv, x).is_none() {
            return Err(Error::InvalidParams(format!(
                "no closed-form derivative of order {deriv}"
            )));
        }
        let sigma = self.spec.sigma();
        let b_eff = prof.spec.b_eff();
        let odd = prof.spec.space_order % 2 == 1;
        let sign = if odd { -1.0 } else { 1.0 };
        // ∫_0^∞ k = −1/(2Γ(b_eff+σ+1)); subtracting g(x) uses it for even kernels.
        let mass = -0.5 * recip_gamma(b_eff + sigma + 1.0);
        let c0 = b_eff + sigma;
        let c = if c0 > -1.0 {
            c0
        } else if odd {
            c0 + sigma
        } else if mass == 0.0 {
            c0 + 2.0 * sigma
        } else {
            -1.0
        };
        if !(c > -1.0) {
            return Err(Error::DomainError(format!(
                "source integral diverges for kernel index {b_eff}"
            )));
        }
        let gx = g(x);
        let tail = self.tail_level();
        let cfg = self;
        let inner_tol = abs_tol / (4.0 * y);
        let ok = Cell::new(true);
        let err = Cell::new(0.0f64);
        let inner = |w: f64| -> f64 {
            let h = libm::pow(w, sigma);
            let s_end = match cfg.reach(&f.spatial, x, h, tail) {
                Ok(s) => s,
                Err(_) => {
                    ok.set(false);
                    return f64::NAN;
                }
            };
            let scale = libm::pow(w, c0);
            let r = integrate_breaks(
                &mut |s| {
                    let mut v = g(x - h * s) + sign * g(x + h * s);
                    if !odd {
                        v -= 2.0 * gx;
                    }
                    v * prof.value(s)
                },
                &Self::breaks(prof, 0.0, s_end),
                &cfg.quad_cfg(inner_tol / scale.max(1e-300)),
            );
            ok.set(ok.get() && r.converged);
            let analytic = if odd { 0.0 } else { 2.0 * gx * mass };
            let t = f.time_factor(y - w);
            err.set(err.get().max(scale * libm::fabs(t) * r.error));
            scale * t * (r.value + analytic)
        };
        // w = v^{1/(c+1)} absorbs the w^c singularity at w → 0.
        let e = 1.0 / (c + 1.0);
        let v_end = libm::pow(y, c + 1.0);
        let mut outer = |v: f64| {
            let w = libm::pow(v, e);
            inner(w) * e * w / v
        };
        let n0 = self.cfg.grading_points;
        let breaks: Vec<f64> = (0..=n0).map(|i| v_end * i as f64 / n0 as f64).collect();
        let r = integrate_breaks(&mut outer, &breaks, &self.quad_cfg(abs_tol / 2.0));
        Ok(Estimate {
            value: r.value,
            error: r.error + y * err.get(),
            converged: r.converged && ok.get() && r.value.is_finite(),
        })
    }

    fn tol_for(&self, magnitude: f64) -> f64 {
        self.cfg.abs_tol.max(self.cfg.rel_tol * magnitude)
    }

    /// `op u` at `(x, y)`.
    pub fn apply(&self, op: Operator, x: f64, y: f64) -> Result<Estimate> {
        if !(y > 0.0) {
            return Err(Error::DomainError(format!("y must be positive, got {y}")));
        }
        let tol = self.cfg.abs_tol / 3.0;
        let mut total = Estimate::ZERO;
        if !self.spec.phi.is_zero() {
            let k = self.kernel(op, InitialData::Phi)?;
            total = total - self.convolve(k, &self.spec.phi, 0, x, y, tol)?;
        }
        if !self.spec.psi.is_zero() {
            let k = self.kernel(op, InitialData::Psi)?;
            total = total - self.convolve(k, &self.spec.psi, 0, x, y, tol)?;
        }
        if !self.spec.f.is_zero() {
            let k = self.kernel(op, InitialData::Phi)?;
            total = total - self.source_eta_outer(k, 0, x, y, tol)?;
            // lim_{w→0} D^{α−1}_w ∫ f Γ_{b1} dξ = −f(x, y) enters D^α of the time convolution.
            if op == Operator::Time(self.spec.alpha) {
                total = total + Estimate::exact(self.spec.f.value(x, y));
            }
        }
        let target = self.tol_for(libm::fabs(total.value));
        total.converged &= total.error <= target;
        Ok(total)
    }

    /// `u(x, y)`.
    pub fn value(&self, x: f64, y: f64) -> Result<Estimate> {
        self.apply(Operator::Value, x, y)
    }

    /// `−∫ data(ξ) Γ_{b_j}(x−ξ, y) dξ` for one initial datum.
    pub fn convolve_initial(&self, which: InitialData, x: f64, y: f64) -> Result<Estimate> {
        if !(y > 0.0) {
            return Err(Error::DomainError(format!("y must be positive, got {y}")));
        }
        let data = match which {
            InitialData::Phi => &self.spec.phi,
            InitialData::Psi => &self.spec.psi,
        };
        if data.is_zero() {
            return Ok(Estimate::ZERO);
        }
        let k = self.kernel(Operator::Value, which)?;
        Ok(self.convolve(k, data, 0, x, y, self.cfg.abs_tol)?.scale(-1.0))
    }

    /// `−∫_0^y ∫ f(ξ, η) Γ_{b1}(x−ξ, y−η) dξ dη`.
    pub fn source_term(&self, x: f64, y: f64) -> Result<Estimate> {
        if !(y > 0.0) {
            return Err(Error::DomainError(format!("y must be positive, got {y}")));
        }
        if self.spec.f.is_zero() {
            return Ok(Estimate::ZERO);
        }
        let k = self.kernel(Operator::Value, InitialData::Phi)?;
        Ok(self.source_eta_outer(k, 0, x, y, self.cfg.abs_tol)?.scale(-1.0))
    }

    /// Grid evaluation in fixed `(y, x)` row-major order.
    pub fn solve(&self, x_nodes: &[f64], y_nodes: &[f64]) -> Result<GridSolution> {
        let mut est = Vec::with_capacity(x_nodes.len() * y_nodes.len());
        for &y in y_nodes {
            for &x in x_nodes {
                est.push(self.value(x, y)?);
            }
        }
        Ok(GridSolution::from_estimates(&self.spec, x_nodes, y_nodes, &est))
    }

    /// `∫ dξ ∫_0^y dη f(ξ, η) K(x−ξ, y−η)` with the `η` integral inside, for a
    /// zero-mass even kernel of index `−σ−1`.
    ///
    /// With `r = |x−ξ|/y^σ` and `f = g(ξ) y^m` this is
    /// `(y^m/σ) ∫_0^∞ (g(x−hr) + g(x+hr)) B(r)/r dr`, where
    /// `B(r) = ∫_r^∞ ((1 − (r/s)^{1/σ})^m − 1) k(s) ds − ∫_0^r k`.
    fn source_xi_outer(&self, prof: &KernelProfile, x: f64, y: f64, abs_tol: f64) -> Result<Estimate> {
        let f = &self.spec.f;
        if f.is_zero() {
            return Ok(Estimate::ZERO);
        }
        let sigma = self.spec.sigma();
        if prof.spec.space_order % 2 == 1 || libm::fabs(prof.spec.b_eff() + sigma + 1.0) > 1e-12 {
            return Err(Error::InvalidParams("xi-outer ordering needs the index −σ−1".into()));
        }
        let h = libm::pow(y, sigma);
        let m = f.y_power;
        let s_max = prof.s_max;
        let tail = self.tail_level();
        let ok = Cell::new(true);
        let b = |r: f64| -> f64 {
            let mut v = -prof.integral_to(r);
            if m != 0.0 && r < s_max {
                let q = integrate_breaks(
                    &mut |s| (libm::pow(1.0 - libm::pow(r / s, 1.0 / sigma), m) - 1.0) * prof.value(s),
                    &Self::breaks(prof, r, s_max),
                    &self.quad_cfg(abs_tol * 1e-2),
                );
                ok.set(ok.get() && q.converged);
                v += q.value;
            }
            v
        };
        let r_end = self.reach(&f.spatial, x, h, tail)?.min(s_max);
        let g = |t: f64| f.spatial.value(t);
        let pref = f.time_factor(y) / sigma;
        let q = integrate_breaks(
            &mut |r| (g(x - h * r) + g(x + h * r)) * b(r) / r,
            &Self::breaks(prof, 0.0, r_end),
            &self.quad_cfg(abs_tol / pref.max(1e-300)),
        );
        Ok(Estimate {
            value: pref * q.value,
            error: pref * (q.error + tail),
            converged: q.converged && ok.get(),
        })
    }

    /// `D^α u − (−1)^{n−1} ∂^{2n} u − f` with both derivatives taken by exact
    /// kernel shifts.
    ///
    /// The source term is integrated in `η` first at fixed `ξ`; in that order
    /// the `2n`-th spatial derivative picks up the diagonal term from the jump
    /// of `∂^{2n−1} Γ_{b1}`, evaluated here from its profile.
    pub fn residual(&self, x: f64, y: f64) -> Result<Estimate> {
        if !(y > 0.0) {
            return Err(Error::DomainError(format!("y must be positive, got {y}")));
        }
        let (alpha, n) = (self.spec.alpha, self.spec.n);
        let sigma = self.spec.sigma();
        let tol = self.cfg.abs_tol / 4.0;
        let t_op = Operator::Time(alpha);
        let s_op = Operator::Space(2 * n);
        let mut d_alpha = Estimate::ZERO;
        let mut d_space = Estimate::ZERO;
        for (which, data) in [(InitialData::Phi, &self.spec.phi), (InitialData::Psi, &self.spec.psi)] {
            if data.is_zero() {
                continue;
            }
            d_alpha = d_alpha - self.convolve(self.kernel(t_op, which)?, data, 0, x, y, tol)?;
            d_space = d_space - self.convolve(self.kernel(s_op, which)?, data, 0, x, y, tol)?;
        }
        let fxy = self.spec.f.value(x, y);
        if !self.spec.f.is_zero() {
            d_alpha = d_alpha - self.source_xi_outer(self.kernel(t_op, InitialData::Phi)?, x, y, tol)?;
            d_space = d_space - self.source_xi_outer(self.kernel(s_op, InitialData::Phi)?, x, y, tol)?;
            // Jump of ∂^{2n−1} ∫_0^y f Γ_{b1} dη across ξ = x: (2/σ) f ∫_0^∞ k_{2n−1}(s)/s ds.
            let kd = self.kernel(Operator::Space(2 * n - 1), InitialData::Phi)?;
            let q = integrate_breaks(&mut |s| kd.value(s) / s, &kd.breaks(), &self.quad_cfg(tol));
            let jump = Estimate {
                value: 2.0 / sigma * fxy * q.value,
                error: 2.0 / sigma * libm::fabs(fxy) * q.error,
                converged: q.converged,
            };
            d_space = d_space - jump;
        }
        let mut r = d_alpha - d_space.scale(self.spec.parity()) - Estimate::exact(fxy);
        r.converged &= r.error <= self.cfg.abs_tol.max(self.cfg.rel_tol * libm::fabs(d_alpha.value));
        Ok(r)
    }

    /// The same residual along an independent route: `∂^{2n}` moves onto the
    /// data (`∂^{2n}(g ∗ Γ) = g^{(2n)} ∗ Γ`) while `D^α` stays on the kernel.
    pub fn residual_by_parts(&self, x: f64, y: f64) -> Result<Estimate> {
        if !(y > 0.0) {
            return Err(Error::DomainError(format!("y must be positive, got {y}")));
        }
        let d = 2 * self.spec.n as usize;
        let tol = self.cfg.abs_tol / 4.0;
        let d_alpha = self.apply(Operator::Time(self.spec.alpha), x, y)?;
        let mut d_space = Estimate::ZERO;
        for (which, data) in [(InitialData::Phi, &self.spec.phi), (InitialData::Psi, &self.spec.psi)] {
            if data.is_zero() {
                continue;
            }
            d_space = d_space - self.convolve(self.kernel(Operator::Value, which)?, data, d, x, y, tol)?;
        }
        if !self.spec.f.is_zero() {
            let k = self.kernel(Operator::Value, InitialData::Phi)?;
            d_space = d_space - self.source_eta_outer(k, d, x, y, tol)?;
        }
        let mut r = d_alpha - d_space.scale(self.spec.parity()) - Estimate::exact(self.spec.f.value(x, y));
        r.converged = d_alpha.converged && d_space.converged;
        Ok(r)
    }

    /// Operators needed by [`residual`](Self::residual) and
    /// [`residual_by_parts`](Self::residual_by_parts).
    pub fn residual_operators(spec: &CauchyProblemSpec) -> Vec<Operator> {
        alloc::vec![
            Operator::Value,
            Operator::Time(spec.alpha),
            Operator::Space(2 * spec.n),
            Operator::Space(2 * spec.n - 1),
        ]
    }

    /// `(D^{α−1}u, D^{α−2}u)` at `(x, y_m)` for each `y_m`.
    pub fn initial_limits(&self, x: f64, ys: &[f64]) -> Result<(Vec<Estimate>, Vec<Estimate>)> {
        let a = self.spec.alpha;
        let mut d1 = Vec::with_capacity(ys.len());
        let mut d2 = Vec::with_capacity(ys.len());
        for &y in ys {
            d1.push(self.apply(Operator::Time(a - 1.0), x, y)?);
            d2.push(self.apply(Operator::Time(a - 2.0), x, y)?);
        }
        Ok((d1, d2))
    }
}

/// `−∫ data(ξ) Γ_{b_j}(x−ξ, y) dξ`.
pub fn convolve_initial(
    spec: &CauchyProblemSpec,
    which: InitialData,
    x: f64,
    y: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    CauchySolver::new(spec.clone(), *cfg)?.convolve_initial(which, x, y)
}

/// `−∫_0^y ∫ f Γ_{b1} dξ dη`.
pub fn source_term(spec: &CauchyProblemSpec, x: f64, y: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    CauchySolver::new(spec.clone(), *cfg)?.source_term(x, y)
}

pub fn solve(
    spec: &CauchyProblemSpec,
    x_nodes: &[f64],
    y_nodes: &[f64],
    cfg: &QuadratureConfig,
) -> Result<GridSolution> {
    if y_nodes.iter().any(|y| !(*y > 0.0)) {
        return Err(Error::DomainError("y nodes must be positive".into()));
    }
    CauchySolver::new(spec.clone(), *cfg)?.solve(x_nodes, y_nodes)
}

/// `D^{α−1}u` and `D^{α−2}u` along `y_sequence`, which should approach `φ(x)` and `ψ(x)`.
pub fn check_initial_limits(
    spec: &CauchyProblemSpec,
    x: f64,
    y_sequence: &[f64],
    cfg: &QuadratureConfig,
) -> Result<(Vec<Estimate>, Vec<Estimate>)> {
    if y_sequence.iter().any(|y| !(*y > 0.0)) || y_sequence.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::DomainError("y sequence must be positive and decreasing".into()));
    }
    let a = spec.alpha;
    CauchySolver::with_operators(spec.clone(), *cfg, &[Operator::Time(a - 1.0), Operator::Time(a - 2.0)])?
        .initial_limits(x, y_sequence)
}

/// `D^α u − (−1)^{n−1} ∂^{2n}_x u − f` by exact kernel shifts.
pub fn residual(spec: &CauchyProblemSpec, x: f64, y: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    CauchySolver::with_operators(spec.clone(), *cfg, &CauchySolver::residual_operators(spec))?.residual(x, y)
}

#[cfg(test)]
mod tests;
