//! Piecewise Chebyshev tables of shifted kernel profiles.
//!
//! For a [`ShiftedSpec`] the scaled profile `k(s)`, `s = |dx|/dy^σ ≥ 0`, does not
//! depend on `dy`, so one table serves every quadrature node of a solve.

use alloc::vec::Vec;

use crate::fundsol::{truncation_radius, ShiftedSpec};
use crate::specfun::SeriesControl;
use crate::Result;

const N: usize = 32;
const MIN_WIDTH: f64 = 1.0 / 256.0;

#[derive(Debug, Clone)]
struct Panel {
    a: f64,
    b: f64,
    coef: [f64; N],
    icoef: [f64; N + 1],
}

fn clenshaw(c: &[f64], t: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c[1..].iter().rev() {
        let b0 = 2.0 * t * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c[0]
}

impl Panel {
    fn fit(a: f64, b: f64, vals: &[f64; N]) -> Self {
        let m = (N - 1) as f64;
        let mut coef = [0.0; N];
        for (k, ck) in coef.iter_mut().enumerate() {
            let mut s = 0.0;
            for (j, v) in vals.iter().enumerate() {
                let w = if j == 0 || j == N - 1 { 0.5 } else { 1.0 };
                s += w * v * libm::cos(core::f64::consts::PI * (j * k) as f64 / m);
            }
            *ck = 2.0 * s / m;
        }
        coef[0] *= 0.5;
        coef[N - 1] *= 0.5;
        // Antiderivative vanishing at the left end, in the panel's own units.
        let half = 0.5 * (b - a);
        let mut icoef = [0.0; N + 1];
        let at = |k: usize| if k < N { coef[k] } else { 0.0 };
        icoef[1] = (2.0 * at(0) - at(2)) / 2.0;
        for (k, c) in icoef.iter_mut().enumerate().skip(2) {
            *c = (at(k - 1) - at(k + 1)) / (2.0 * k as f64);
        }
        let mut left = 0.0;
        for (k, c) in icoef.iter().enumerate().skip(1) {
            left += if k % 2 == 0 { *c } else { -*c };
        }
        icoef[0] = -left;
        for c in icoef.iter_mut() {
            *c *= half;
        }
        Panel { a, b, coef, icoef }
    }

    fn tail(&self) -> f64 {
        self.coef[N - 3..].iter().fold(0.0, |m: f64, c| m.max(libm::fabs(*c)))
    }

    fn local(&self, s: f64) -> f64 {
        (2.0 * s - self.a - self.b) / (self.b - self.a)
    }
}

/// `k(s)` on `[0, s_max]` with its running integral `∫_0^s k`.
#[derive(Debug, Clone)]
pub struct KernelProfile {
    pub spec: ShiftedSpec,
    pub s_max: f64,
    /// Largest sampled `|k|`; fit tolerances are relative to it.
    pub scale: f64,
    /// Set when some panel hit the minimum width before meeting the tolerance.
    pub flagged: bool,
    ctrl: SeriesControl,
    starts: Vec<f64>,
    panels: Vec<Panel>,
    cum: Vec<f64>,
}

impl KernelProfile {
    /// Tabulate out to the radius where the kernel envelope drops below `tail_tol`.
    pub fn new(spec: ShiftedSpec, tail_tol: f64, ctrl: &SeriesControl) -> Result<Self> {
        let s_max = truncation_radius(spec, 1.0, tail_tol)?;
        Self::on(spec, s_max, ctrl)
    }

    pub fn on(spec: ShiftedSpec, s_max: f64, ctrl: &SeriesControl) -> Result<Self> {
        let ctrl = &SeriesControl {
            rel_tol: ctrl.rel_tol.max(1e-13),
            ..*ctrl
        };
        let eval = |s: f64| spec.profile_value(s, ctrl);
        let mut scale: f64 = 0.0;
        let probe_end = s_max.min(8.0);
        for i in 0..=32 {
            scale = scale.max(libm::fabs(eval(probe_end * i as f64 / 32.0)?));
        }
        // Wright values carry ~1e-14 relative noise; fitting below it only splits panels.
        let tol = 5e-14 * scale.max(f64::MIN_POSITIVE);
        let nodes: Vec<f64> = (0..N)
            .map(|j| libm::cos(core::f64::consts::PI * j as f64 / (N - 1) as f64))
            .collect();
        let mut panels = Vec::new();
        let mut flagged = false;
        let count = libm::ceil(s_max) as usize;
        let mut stack: Vec<(f64, f64)> = (0..count)
            .rev()
            .map(|i| {
                let a = s_max * i as f64 / count as f64;
                let b = if i + 1 == count {
                    s_max
                } else {
                    s_max * (i + 1) as f64 / count as f64
                };
                (a, b)
            })
            .collect();
        while let Some((a, b)) = stack.pop() {
            let mut vals = [0.0; N];
            for (v, t) in vals.iter_mut().zip(&nodes) {
                // Nodes run from b to a; keep exact endpoints.
                let s = if *t == 1.0 {
                    b
                } else if *t == -1.0 {
                    a
                } else {
                    0.5 * (a + b) + 0.5 * (b - a) * t
                };
                *v = eval(s)?;
            }
            let p = Panel::fit(a, b, &vals);
            if p.tail() <= tol || b - a <= MIN_WIDTH {
                flagged |= p.tail() > tol;
                panels.push(p);
            } else {
                let m = 0.5 * (a + b);
                stack.push((m, b));
                stack.push((a, m));
            }
        }
        let starts = panels.iter().map(|p| p.a).collect();
        let mut cum = Vec::with_capacity(panels.len() + 1);
        let mut acc = 0.0;
        for p in &panels {
            cum.push(acc);
            acc += clenshaw(&p.icoef, 1.0);
        }
        cum.push(acc);
        Ok(KernelProfile {
            spec,
            s_max,
            scale,
            flagged,
            ctrl: *ctrl,
            starts,
            panels,
            cum,
        })
    }

    fn locate(&self, s: f64) -> usize {
        self.starts.partition_point(|a| *a <= s).saturating_sub(1)
    }

    /// `k(s)`; arguments beyond the table fall back to direct evaluation.
    pub fn value(&self, s: f64) -> f64 {
        if s > self.s_max {
            return self.spec.profile_value(s, &self.ctrl).unwrap_or(0.0);
        }
        let p = &self.panels[self.locate(s)];
        clenshaw(&p.coef, p.local(s))
    }

    /// `∫_0^s k`, clamped to the table.
    pub fn integral_to(&self, s: f64) -> f64 {
        let s = s.clamp(0.0, self.s_max);
        let i = self.locate(s);
        let p = &self.panels[i];
        self.cum[i] + clenshaw(&p.icoef, p.local(s))
    }

    /// `∫_0^{s_max} k`.
    pub fn total(&self) -> f64 {
        self.cum[self.panels.len()]
    }

    /// Panel boundaries, usable as quadrature breakpoints.
    pub fn breaks(&self) -> Vec<f64> {
        let mut v = self.starts.clone();
        v.push(self.s_max);
        v
    }

    pub fn panel_count(&self) -> usize {
        self.panels.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fundsol::{shift_space, shift_time, FundamentalSolutionSpec};
    use crate::gamma::recip_gamma;

    fn ctrl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn interpolates_and_integrates() {
        for &(a, b) in &[(1.5, 0.5), (1.9, 0.1), (1.3, -0.2)] {
            let spec = FundamentalSolutionSpec::new(a, 2, b).unwrap();
            let prof = KernelProfile::new(spec.shifted(), 1e-16, &ctrl()).unwrap();
            assert!(!prof.flagged);
            for i in 0..200 {
                let s = prof.s_max * (i as f64 + 0.37) / 200.0;
                let direct = spec.shifted().profile_value(s, &ctrl()).unwrap();
                assert!((prof.value(s) - direct).abs() < 1e-13 * prof.scale, "{a} {s}");
            }
            // ∫_0^∞ k_b = −1/(2Γ(b+σ+1)).
            let exact = -0.5 * recip_gamma(b + spec.sigma() + 1.0);
            assert!((prof.total() - exact).abs() < 1e-13, "{} {}", prof.total(), exact);
        }
    }

    #[test]
    fn zero_mass_profiles() {
        // Index −σ−1 integrates to zero; the D^α shift of the solution kernel has that index.
        let spec = FundamentalSolutionSpec::new(1.5, 2, 1.5 - 0.375 - 1.0).unwrap();
        let prof = KernelProfile::new(shift_time(spec, 1.5), 1e-16, &ctrl()).unwrap();
        assert!(prof.total().abs() < 1e-13);
        let mid = prof.integral_to(0.5 * prof.s_max);
        assert!(prof.integral_to(0.0) == 0.0 && mid.is_finite());
    }

    #[test]
    fn diagonal_mellin_identity() {
        // ∫_0^∞ k_{2n−1}(s)/s ds = σ(−1)^{n−1}/2 for the solution kernel.
        for &(a, n) in &[(1.5, 2u32), (1.4, 3)] {
            let sigma = a / (2.0 * n as f64);
            let spec = FundamentalSolutionSpec::new(a, n, a - sigma - 1.0).unwrap();
            let prof = KernelProfile::new(shift_space(spec, 2 * n - 1), 1e-16, &ctrl()).unwrap();
            let r = crate::quad::integrate_breaks(
                &mut |s| prof.value(s) / s,
                &prof.breaks(),
                &crate::quad::QuadConfig::default(),
            );
            let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
            assert!((r.value - sign * sigma / 2.0).abs() < 1e-11, "{}", r.value);
        }
    }
}
