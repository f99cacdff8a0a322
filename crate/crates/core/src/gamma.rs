//! Gamma-function primitives.
//!
//! Everything downstream works with `1/Γ`, which is entire, so series terms at
//! the poles of `Γ` vanish exactly instead of producing infinities.
//!
//! Real arguments use the musl `tgamma`/`lgamma` ports from `libm` (about one
//! ulp); complex arguments use a Lanczos sum; the double-word path uses a
//! shifted Stirling series.

use num_complex::Complex64;

use crate::dd::{self, Dd};

const LANCZOS_R: f64 = 10.900511;
const LANCZOS_D: [f64; 11] = [
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];
const TWO_SQRT_E_OVER_PI: f64 = 1.860382734205265717336249247266663112059421841;
const LN_PI: f64 = 1.1447298858494001741434273513530587116472948129;

// n! for n = 0..=22, all exactly representable.
const FACTORIAL: [f64; 23] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
    51090942171709440000.0,
    1124000727777607680000.0,
];

/// `sin(πx)` with exact zeros at the integers.
pub fn sinpi(x: f64) -> f64 {
    sinpi_parts(x, 0.0)
}

/// `sin(π(hi + lo))` for an unevaluated sum, reducing on `hi` exactly.
pub(crate) fn sinpi_parts(hi: f64, lo: f64) -> f64 {
    if !hi.is_finite() {
        return f64::NAN;
    }
    let n = libm::round(hi);
    let r = (hi - n) + lo;
    let s = libm::sin(core::f64::consts::PI * r);
    if libm::fmod(n, 2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// Rough digamma, good enough for first-order argument corrections.
fn psi_rough(x: f64) -> f64 {
    libm::log(x) - 0.5 / x
}

/// `1/Γ(x)` for real `x`; exactly `0` at `x = 0, −1, −2, …`.
pub fn recip_gamma(x: f64) -> f64 {
    recip_gamma_parts(x, 0.0)
}

/// `1/Γ(hi + lo)` for an unevaluated sum. The low word locates poles exactly
/// and enters the value through a first-order correction.
pub(crate) fn recip_gamma_parts(hi: f64, lo: f64) -> f64 {
    if hi.is_nan() {
        return f64::NAN;
    }
    if hi >= 0.5 {
        if lo == 0.0 && hi == libm::floor(hi) && hi <= 23.0 {
            return 1.0 / FACTORIAL[hi as usize - 1];
        }
        let v = if hi > 171.0 {
            libm::exp(-ln_gamma(hi))
        } else {
            1.0 / libm::tgamma(hi)
        };
        return v * (1.0 - lo * psi_rough(hi));
    }
    // 1/Γ(x) = sin(πx) Γ(1−x) / π
    let s = sinpi_parts(hi, lo);
    if s == 0.0 {
        return 0.0;
    }
    let w = Dd::new_sub(1.0, hi) - lo;
    let corr = 1.0 + w.lo() * psi_rough(w.hi());
    if w.hi() > 171.0 {
        let l = libm::log(libm::fabs(s)) + ln_gamma(w.hi()) - LN_PI;
        return libm::copysign(libm::exp(l), s) * corr;
    }
    s * libm::tgamma(w.hi()) / core::f64::consts::PI * corr
}

/// `(ln|1/Γ(hi+lo)|, sign)`; sign is `0.0` at a pole.
pub(crate) fn ln_recip_gamma_parts(hi: f64, lo: f64) -> (f64, f64) {
    if hi >= 0.5 {
        return (-ln_gamma(hi) - lo * psi_rough(hi), 1.0);
    }
    let s = sinpi_parts(hi, lo);
    if s == 0.0 {
        return (f64::NEG_INFINITY, 0.0);
    }
    let w = Dd::new_sub(1.0, hi) - lo;
    (
        libm::log(libm::fabs(s)) + ln_gamma(w.hi()) + w.lo() * psi_rough(w.hi()) - LN_PI,
        libm::copysign(1.0, s),
    )
}

/// `1/Γ(z)` for complex `z`.
pub fn recip_gamma_complex(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return Complex64::new(recip_gamma(z.re), 0.0);
    }
    if z.re >= 0.5 {
        let mut s = Complex64::new(LANCZOS_D[0], 0.0);
        for (k, d) in LANCZOS_D.iter().enumerate().skip(1) {
            s += *d / (z + (k as f64 - 1.0));
        }
        let base = (z - 0.5 + LANCZOS_R) / core::f64::consts::E;
        let g = s * TWO_SQRT_E_OVER_PI * (base.ln() * (z - 0.5)).exp();
        return g.inv();
    }
    let pz = z * core::f64::consts::PI;
    let w = Complex64::new(1.0, 0.0) - z;
    pz.sin() * recip_gamma_complex(w).inv() / core::f64::consts::PI
}

// B_{2k} / (2k (2k-1)) as exact numerator/denominator pairs, k = 1..=15.
const STIRLING: [(f64, f64); 15] = [
    (1.0, 12.0),
    (-1.0, 360.0),
    (1.0, 1260.0),
    (-1.0, 1680.0),
    (5.0, 66.0 * 90.0),
    (-691.0, 2730.0 * 132.0),
    (7.0, 6.0 * 182.0),
    (-3617.0, 510.0 * 240.0),
    (43867.0, 798.0 * 306.0),
    (-174611.0, 330.0 * 380.0),
    (854513.0, 138.0 * 462.0),
    (-236364091.0, 2730.0 * 552.0),
    (8553103.0, 6.0 * 650.0),
    (-23749461029.0, 870.0 * 756.0),
    (8615841276005.0, 14322.0 * 870.0),
];

/// `ln Γ(x)` in double-word precision for `x ≥ 0.5`.
pub fn ln_gamma_dd(x: Dd) -> Dd {
    let mut w = x;
    let mut prod = dd::dd(1.0);
    while w.hi() < 30.0 {
        prod *= w;
        w += 1.0;
    }
    let inv = dd::div(dd::dd(1.0), w);
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut corr = dd::dd(0.0);
    for (num, den) in STIRLING {
        corr += pow * dd::dd(num) / den;
        pow *= inv2;
    }
    let lnw = dd::ln(w);
    let mut out = (w - 0.5) * lnw - w + dd::half_ln_2pi() + corr;
    if prod.hi() != 1.0 || prod.lo() != 0.0 {
        out -= dd::ln(prod);
    }
    out
}

/// `(ln|1/Γ(x)|, sign)` in double-word precision; sign is `0.0` at a pole.
pub fn ln_recip_gamma_dd(x: Dd) -> (Dd, f64) {
    if x.hi() >= 0.5 {
        return (-ln_gamma_dd(x), 1.0);
    }
    let s = dd::sinpi(x);
    if s.hi() == 0.0 {
        return (dd::dd(f64::NEG_INFINITY), 0.0);
    }
    let sign = libm::copysign(1.0, s.hi());
    let abs_s = if sign < 0.0 { -s } else { s };
    let w = dd::dd(1.0) - x;
    (dd::ln(abs_s) + ln_gamma_dd(w) - dd::ln_pi(), sign)
}
