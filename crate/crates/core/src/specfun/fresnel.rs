//! Fresnel integrals in the normalization
//!
//! ```text
//! S(z) = (1/(2√π)) ∫₀^z sin t / √t dt,   C(z) = (1/(2√π)) ∫₀^z cos t / √t dt,
//! ```
//!
//! so that `S(∞) = C(∞) = 1/(2√2)`. With `t = πx²/2` these are the engineering
//! integrals divided by `√2`.

use num_complex::Complex64;

use crate::{Error, Result};

const SERIES_MAX_X: f64 = 1.5;
const MAX_ITER: usize = 200;

/// Engineering `(C(x), S(x)) = ∫₀^x (cos, sin)(πt²/2) dt` for `x ≥ 0`.
fn engineering(x: f64) -> (f64, f64) {
    use core::f64::consts::{FRAC_PI_2, PI};
    if x == 0.0 {
        return (0.0, 0.0);
    }
    if x < SERIES_MAX_X {
        // Power series in t = πx²/2: C = x Σ (−1)^k t^{2k}/((2k)!(4k+1)),
        // S = x Σ (−1)^k t^{2k+1}/((2k+1)!(4k+3)).
        let t = FRAC_PI_2 * x * x;
        let mut c = 1.0;
        let mut s = 0.0;
        let mut f = 1.0;
        for j in 1..MAX_ITER {
            f *= t / j as f64;
            let term = f / (2 * j + 1) as f64;
            let signed = if (j / 2) % 2 == 0 { term } else { -term };
            if j % 2 == 1 {
                s += signed;
            } else {
                c += signed;
            }
            if j > 2 && term < 1e-17 * (libm::fabs(c) + libm::fabs(s)) {
                break;
            }
        }
        return (x * c, x * s);
    }
    // Continued fraction for the complementary error function, evaluated
    // with the modified Lentz method.
    let pix2 = PI * x * x;
    let mut b = Complex64::new(1.0, -pix2);
    let tiny = 1e-300;
    let mut cc = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut n = -1.0;
    for _ in 1..MAX_ITER {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += 4.0;
        d = (d * a + b).inv();
        cc = b + cc.inv() * a;
        let del = cc * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h *= Complex64::new(x, -x);
    let e = Complex64::new(libm::cos(0.5 * pix2), libm::sin(0.5 * pix2));
    let cs = Complex64::new(0.5, 0.5) * (Complex64::new(1.0, 0.0) - e * h);
    (cs.re, cs.im)
}

fn check(z: f64) -> Result<f64> {
    if !(z >= 0.0) {
        return Err(Error::DomainError(alloc::format!(
            "Fresnel integrals need z >= 0, got {z}"
        )));
    }
    Ok(libm::sqrt(2.0 * z / core::f64::consts::PI))
}

/// `S(z) = (1/(2√π)) ∫₀^z sin t/√t dt`.
pub fn fresnel_s(z: f64) -> Result<f64> {
    let x = check(z)?;
    if x == f64::INFINITY {
        return Ok(core::f64::consts::FRAC_1_SQRT_2 / 2.0);
    }
    Ok(engineering(x).1 * core::f64::consts::FRAC_1_SQRT_2)
}

/// `C(z) = (1/(2√π)) ∫₀^z cos t/√t dt`.
pub fn fresnel_c(z: f64) -> Result<f64> {
    let x = check(z)?;
    if x == f64::INFINITY {
        return Ok(core::f64::consts::FRAC_1_SQRT_2 / 2.0);
    }
    Ok(engineering(x).0 * core::f64::consts::FRAC_1_SQRT_2)
}
