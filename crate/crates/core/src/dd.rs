//! Double-word ("double-double") helpers.
//!
//! Addition and multiplication come from [`twofloat`]. Division by a
//! double-word and the elementary functions (exp, ln, sinpi) are implemented
//! here: the crate's `TwoFloat / TwoFloat` drops the low word of the
//! reciprocal, and its transcendental routines are only accurate to ~1e-12.

use core::ops::{Add, Mul, Neg, Sub};

pub use twofloat::TwoFloat as Dd;

pub fn ln2() -> Dd {
    parts(core::f64::consts::LN_2, 2.3190468138462996e-17)
}

pub fn pi() -> Dd {
    parts(core::f64::consts::PI, 1.2246467991473532e-16)
}

pub fn ln_pi() -> Dd {
    parts(1.1447298858494002, 1.0265951162707826e-17)
}

pub fn half_ln_2pi() -> Dd {
    parts(0.9189385332046728, -3.8782941580672414e-17)
}

/// Builds a double-word from an already normalized `(hi, lo)` pair.
pub fn parts(hi: f64, lo: f64) -> Dd {
    Dd::try_from((hi, lo)).expect("normalized double-word")
}

#[inline]
pub fn dd(x: f64) -> Dd {
    Dd::from(x)
}

/// `a / b` to double-word accuracy (long division with two corrections).
pub fn div(a: Dd, b: Dd) -> Dd {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    Dd::new_add(q1, q2) + q3
}

#[inline]
pub fn to_f64(x: Dd) -> f64 {
    x.hi() + x.lo()
}

fn scale2(x: Dd, k: i32) -> Dd {
    Dd::try_from((libm::scalbn(x.hi(), k), libm::scalbn(x.lo(), k))).unwrap_or_else(|_| dd(libm::scalbn(x.hi(), k)))
}

/// `e^x` to about 31 digits.
pub fn exp(x: Dd) -> Dd {
    let h = x.hi();
    if h > 709.7 {
        return dd(f64::INFINITY);
    }
    if h < -745.2 {
        return dd(0.0);
    }
    let k = libm::round(h / ln2().hi());
    let r = x - ln2() * k;
    // r in [-ln2/2, ln2/2]; divide by 2^10 and square back up.
    let r = scale2(r, -10);
    let mut term = r;
    let mut sum = r;
    let mut j = 2.0;
    while libm::fabs(term.hi()) > 1e-34 {
        term = term * r / j;
        sum += term;
        j += 1.0;
    }
    // expm1(2r) = expm1(r) * (2 + expm1(r))
    for _ in 0..10 {
        sum = sum * (sum + 2.0);
    }
    let e = sum + 1.0;
    scale2(e, k as i32)
}

/// Natural logarithm of a positive double-word.
pub fn ln(x: Dd) -> Dd {
    let y = dd(libm::log(x.hi()));
    // One Newton step on exp(y) = x doubles the f64 accuracy.
    y + x * exp(-y) - 1.0
}

/// `sin(πx)`, exactly zero at integers.
pub fn sinpi(x: Dd) -> Dd {
    let n = libm::round(x.hi());
    let mut r = x - n;
    // r in [-1/2, 1/2] up to the lo word; fold into the same range again.
    if r.hi() > 0.5 {
        r -= 1.0;
        return sin_small(-(r * pi())) * parity(n);
    }
    let s = sin_small(r * pi());
    s * parity(n)
}

#[inline]
fn parity(n: f64) -> f64 {
    if libm::fmod(n, 2.0) == 0.0 {
        1.0
    } else {
        -1.0
    }
}

fn sin_small(t: Dd) -> Dd {
    if t.hi() == 0.0 {
        return dd(0.0);
    }
    let t2 = t * t;
    let mut term = t;
    let mut sum = t;
    let mut k = 1.0;
    while libm::fabs(term.hi()) > 1e-33 * libm::fabs(sum.hi()) {
        term = -(term * t2) / ((k + 1.0) * (k + 2.0));
        sum += term;
        k += 2.0;
    }
    sum
}

/// Complex double-word number, used only by the series fallback.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn new(re: Dd, im: Dd) -> Self {
        CDd { re, im }
    }

    pub fn from_c64(z: num_complex::Complex64) -> Self {
        CDd::new(dd(z.re), dd(z.im))
    }

    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(to_f64(self.re), to_f64(self.im))
    }

    pub fn scale(self, s: Dd) -> Self {
        CDd::new(self.re * s, self.im * s)
    }

    pub fn norm_f64(self) -> f64 {
        libm::hypot(self.re.hi(), self.im.hi())
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, o: CDd) -> CDd {
        CDd::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for CDd {
    type Output = CDd;
    fn sub(self, o: CDd) -> CDd {
        CDd::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, o: CDd) -> CDd {
        CDd::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Neg for CDd {
    type Output = CDd;
    fn neg(self) -> CDd {
        CDd::new(-self.re, -self.im)
    }
}
