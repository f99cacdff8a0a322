//! Named data functions for the Cauchy problem.
//!
//! Every entry is smooth, has analytic derivatives of all orders used by the
//! solver's diagnostics, and carries a growth certificate
//! `|g(x)| ≤ amplitude · exp(k |x|^p)`.
//!
//! Grammar (`parse`):
//!
//! ```text
//! zero
//! const:c
//! gaussian:A,x0,w            A exp(−((x−x0)/w)²)
//! cosgauss:A,x0,w,kappa      A cos(kappa (x−x0)) exp(−((x−x0)/w)²)
//! polygauss:x0,w,c0,c1,...   (Σ c_j (x−x0)^j) exp(−((x−x0)/w)²)
//! bump:A,lo,hi,eps           A (tanh((x−lo)/eps) − tanh((x−hi)/eps))/2
//! expgrow:k                  exp(k (1+x²)^{p/2}),  p = 2n/(2n−α)
//! ```
//!
//! A source term is a spatial entry optionally followed by `*y^m`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::fundsol::decay_exponent;
use crate::specfun::decay_rate;
use crate::{Error, Result};

/// Admissible growth is `k < GROWTH_SAFETY · decay_rate`.
pub const GROWTH_SAFETY: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub enum Func {
    Zero,
    Const(f64),
    Gaussian { a: f64, x0: f64, w: f64 },
    CosGauss { a: f64, x0: f64, w: f64, kappa: f64 },
    PolyGauss { x0: f64, w: f64, coeffs: Vec<f64> },
    Bump { a: f64, lo: f64, hi: f64, eps: f64 },
    ExpGrow { k: f64, p: f64 },
}

/// `|g(x)| ≤ amplitude · exp(k |x|^exponent)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthCertificate {
    pub k: f64,
    pub exponent: f64,
    pub amplitude: f64,
}

fn binom(n: usize, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 0..k {
        r = r * (n - i) as f64 / (i + 1) as f64;
    }
    r
}

/// `d^k/dx^k exp(−((x−x0)/w)²)` via Hermite polynomials.
fn gauss_derivative(k: usize, u: f64, w: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * u);
    let h = match k {
        0 => h0,
        _ => {
            for j in 1..k {
                let h2 = 2.0 * u * h1 - 2.0 * j as f64 * h0;
                h0 = h1;
                h1 = h2;
            }
            h1
        }
    };
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * h * libm::exp(-u * u) / libm::pow(w, k as f64)
}

/// `d^k/dv^k tanh(v)` as a polynomial in `T = tanh v`.
fn tanh_derivative(k: usize, t: f64) -> f64 {
    // Coefficients of P_k(T), P_0 = T, P_{k+1} = P_k'(T)(1 − T²).
    let mut p: Vec<f64> = alloc::vec![0.0, 1.0];
    for _ in 0..k {
        let mut d = alloc::vec![0.0; p.len() + 1];
        for (j, c) in p.iter().enumerate().skip(1) {
            let dj = j as f64 * c;
            d[j - 1] += dj;
            d[j + 1] -= dj;
        }
        p = d;
    }
    p.iter().rev().fold(0.0, |acc, c| acc * t + c)
}

fn poly_derivative(coeffs: &[f64], order: usize, t: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(order)
        .map(|(j, c)| {
            let falling: f64 = (0..order).map(|i| (j - i) as f64).product();
            c * falling * libm::pow(t, (j - order) as f64)
        })
        .sum()
}

impl Func {
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            Func::Zero => 0.0,
            Func::Const(c) => c,
            Func::Gaussian { a, x0, w } => {
                let u = (x - x0) / w;
                a * libm::exp(-u * u)
            }
            Func::CosGauss { a, x0, w, kappa } => {
                let u = (x - x0) / w;
                a * libm::cos(kappa * (x - x0)) * libm::exp(-u * u)
            }
            Func::PolyGauss { x0, w, ref coeffs } => {
                let t = x - x0;
                let u = t / w;
                coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c) * libm::exp(-u * u)
            }
            Func::Bump { a, lo, hi, eps } => 0.5 * a * (libm::tanh((x - lo) / eps) - libm::tanh((x - hi) / eps)),
            Func::ExpGrow { k, p } => libm::exp(k * libm::pow(1.0 + x * x, 0.5 * p)),
        }
    }

    /// `g^{(order)}(x)`, or `None` where no closed form is provided.
    pub fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        if order == 0 {
            return Some(self.value(x));
        }
        Some(match *self {
            Func::Zero | Func::Const(_) => 0.0,
            Func::Gaussian { a, x0, w } => a * gauss_derivative(order, (x - x0) / w, w),
            Func::CosGauss { a, x0, w, kappa } => {
                let t = x - x0;
                let u = t / w;
                (0..=order)
                    .map(|j| {
                        let m = order - j;
                        let trig =
                            libm::pow(kappa, m as f64) * libm::cos(kappa * t + m as f64 * core::f64::consts::FRAC_PI_2);
                        binom(order, j) * trig * gauss_derivative(j, u, w)
                    })
                    .sum::<f64>()
                    * a
            }
            Func::PolyGauss { x0, w, ref coeffs } => {
                let t = x - x0;
                let u = t / w;
                (0..=order)
                    .map(|j| binom(order, j) * poly_derivative(coeffs, order - j, t) * gauss_derivative(j, u, w))
                    .sum()
            }
            Func::Bump { a, lo, hi, eps } => {
                let scale = libm::pow(eps, -(order as f64));
                0.5 * a
                    * scale
                    * (tanh_derivative(order, libm::tanh((x - lo) / eps))
                        - tanh_derivative(order, libm::tanh((x - hi) / eps)))
            }
            Func::ExpGrow { .. } => return None,
        })
    }

    pub fn certificate(&self) -> GrowthCertificate {
        let bounded = |amplitude: f64| GrowthCertificate {
            k: 0.0,
            exponent: 1.0,
            amplitude,
        };
        match *self {
            Func::Zero => bounded(0.0),
            Func::Const(c) => bounded(libm::fabs(c)),
            Func::Gaussian { a, .. } | Func::CosGauss { a, .. } | Func::Bump { a, .. } => bounded(libm::fabs(a)),
            Func::PolyGauss { w, ref coeffs, .. } => bounded(
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        // sup_t |t|^j e^{−t²/w²} = (j w²/(2e))^{j/2}.
                        let s = if j == 0 {
                            1.0
                        } else {
                            libm::pow(j as f64 * w * w / (2.0 * core::f64::consts::E), 0.5 * j as f64)
                        };
                        libm::fabs(*c) * s
                    })
                    .sum(),
            ),
            // (1+x²)^{p/2} ≤ 1 + |x|^p for p ≤ 2.
            Func::ExpGrow { k, p } => GrowthCertificate {
                k,
                exponent: p,
                amplitude: libm::exp(k),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Func::Zero => true,
            Func::Const(c) => *c == 0.0,
            Func::Gaussian { a, .. } | Func::CosGauss { a, .. } | Func::Bump { a, .. } => *a == 0.0,
            Func::PolyGauss { coeffs, .. } => coeffs.iter().all(|c| *c == 0.0),
            Func::ExpGrow { .. } => false,
        }
    }

    /// Parse a catalog entry for the equation with parameters `(α, n)` and
    /// check its growth against the kernel's decay.
    pub fn parse(text: &str, alpha: f64, n: u32) -> Result<Func> {
        let text = text.trim();
        let (name, args) = match text.split_once(':') {
            Some((a, b)) => (a.trim(), b),
            None => (text, ""),
        };
        let nums = || -> Result<Vec<f64>> {
            if args.trim().is_empty() {
                return Ok(Vec::new());
            }
            args.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidParams(format!("bad number `{}` in `{text}`", s.trim())))
                })
                .collect()
        };
        let arity = |v: &Vec<f64>, k: usize| -> Result<()> {
            if v.len() != k {
                return Err(Error::InvalidParams(format!(
                    "`{name}` takes {k} parameters, got {}",
                    v.len()
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidParams(format!("non-finite parameter in `{text}`")));
            }
            Ok(())
        };
        let positive = |x: f64, what: &str| -> Result<()> {
            if x > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("{what} must be positive in `{text}`")))
            }
        };
        let f = match name {
            "zero" => {
                arity(&nums()?, 0)?;
                Func::Zero
            }
            "const" => {
                let v = nums()?;
                arity(&v, 1)?;
                Func::Const(v[0])
            }
            "gaussian" => {
                let v = nums()?;
                arity(&v, 3)?;
                positive(v[2], "width")?;
                Func::Gaussian {
                    a: v[0],
                    x0: v[1],
                    w: v[2],
                }
            }
            "cosgauss" => {
                let v = nums()?;
                arity(&v, 4)?;
                positive(v[2], "width")?;
                Func::CosGauss {
                    a: v[0],
                    x0: v[1],
                    w: v[2],
                    kappa: v[3],
                }
            }
            "polygauss" => {
                let v = nums()?;
                if v.len() < 3 {
                    return Err(Error::InvalidParams(format!(
                        "`polygauss` needs x0, w and at least one coefficient in `{text}`"
                    )));
                }
                arity(&v, v.len())?;
                positive(v[1], "width")?;
                Func::PolyGauss {
                    x0: v[0],
                    w: v[1],
                    coeffs: v[2..].to_vec(),
                }
            }
            "bump" => {
                let v = nums()?;
                arity(&v, 4)?;
                positive(v[3], "eps")?;
                Func::Bump {
                    a: v[0],
                    lo: v[1],
                    hi: v[2],
                    eps: v[3],
                }
            }
            "expgrow" => {
                let v = nums()?;
                arity(&v, 1)?;
                if v[0] < 0.0 {
                    return Err(Error::InvalidParams(format!("growth must be nonnegative in `{text}`")));
                }
                Func::ExpGrow {
                    k: v[0],
                    p: decay_exponent(alpha, n),
                }
            }
            other => return Err(Error::UnknownFunction(other.to_string())),
        };
        check_growth(&f.certificate(), alpha, n)?;
        Ok(f)
    }
}

/// Reject certificates with `k ≥ 0.9 · decay_rate(α, n)`.
pub fn check_growth(cert: &GrowthCertificate, alpha: f64, n: u32) -> Result<()> {
    if cert.k == 0.0 {
        return Ok(());
    }
    let limit = GROWTH_SAFETY * decay_rate(alpha, n)?;
    if !(cert.k < limit) {
        return Err(Error::GrowthViolation { growth: cert.k, limit });
    }
    Ok(())
}

/// `f(x, y) = g(x) · y^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Source {
    pub spatial: Func,
    pub y_power: f64,
}

impl Source {
    pub fn zero() -> Self {
        Source {
            spatial: Func::Zero,
            y_power: 0.0,
        }
    }

    pub fn time_independent(spatial: Func) -> Self {
        Source { spatial, y_power: 0.0 }
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.spatial.value(x) * self.time_factor(y)
    }

    pub fn time_factor(&self, y: f64) -> f64 {
        if self.y_power == 0.0 {
            1.0
        } else {
            libm::pow(y, self.y_power)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.spatial.is_zero()
    }

    /// `g` spec optionally followed by `*y^m`, `m ≥ 0`.
    pub fn parse(text: &str, alpha: f64, n: u32) -> Result<Source> {
        let (g, m) = match text.rsplit_once("*y^") {
            Some((g, m)) => {
                let m: f64 = m
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidParams(format!("bad power `{m}` in `{text}`")))?;
                if !(m >= 0.0) || !m.is_finite() {
                    return Err(Error::InvalidParams(format!("power must be >= 0 in `{text}`")));
                }
                (g, m)
            }
            None => (text, 0.0),
        };
        Ok(Source {
            spatial: Func::parse(g, alpha, n)?,
            y_power: m,
        })
    }
}

/// Canonical text for a function, accepted back by [`Func::parse`].
pub fn describe(f: &Func) -> String {
    match f {
        Func::Zero => "zero".into(),
        Func::Const(c) => format!("const:{c:?}"),
        Func::Gaussian { a, x0, w } => format!("gaussian:{a:?},{x0:?},{w:?}"),
        Func::CosGauss { a, x0, w, kappa } => format!("cosgauss:{a:?},{x0:?},{w:?},{kappa:?}"),
        Func::PolyGauss { x0, w, coeffs } => {
            let mut s = format!("polygauss:{x0:?},{w:?}");
            for c in coeffs {
                s.push_str(&format!(",{c:?}"));
            }
            s
        }
        Func::Bump { a, lo, hi, eps } => format!("bump:{a:?},{lo:?},{hi:?},{eps:?}"),
        Func::ExpGrow { k, .. } => format!("expgrow:{k:?}"),
    }
}
