//! Extended-precision real and complex helpers over `astro_float`.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_complex::Complex64;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Number of Stirling correction terms kept.
const STIRLING_TERMS: usize = 50;

/// Working context at a fixed binary precision.
pub struct Hp {
    p: usize,
    cc: Consts,
    /// `B_{2k} / (2k(2k−1))` for `k = 1..=STIRLING_TERMS`.
    stirling: Vec<BigFloat>,
    pi: BigFloat,
    half_ln_2pi: BigFloat,
    shift_to: f64,
}

impl std::fmt::Debug for Hp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hp").field("bits", &self.p).finish()
    }
}

/// Bits needed for `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize
}

impl Hp {
    pub fn new(bits: usize) -> Self {
        let p = bits.max(128);
        let mut cc = Consts::new().expect("constant cache");
        let pi = cc.pi(p, RM);
        let two_pi = pi.mul(&BigFloat::from_i32(2, p), p, RM);
        let half_ln_2pi = two_pi.ln(p, RM, &mut cc).div(&BigFloat::from_i32(2, p), p, RM);
        let stirling = stirling_coefficients(p);
        Hp {
            p,
            cc,
            stirling,
            pi,
            half_ln_2pi,
            shift_to: (0.35 * p as f64).max(40.0),
        }
    }

    pub fn f(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    pub fn int(&self, k: i64) -> BigFloat {
        BigFloat::from_i64(k, self.p)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.p, RM, &mut self.cc)
    }

    /// `ln Γ(x)` for `x ≥ 1/2`.
    fn ln_gamma_pos(&mut self, x: &BigFloat) -> BigFloat {
        let xf = to_f64(x);
        let mut w = x.clone();
        let mut prod = self.int(1);
        if xf < self.shift_to {
            let steps = (self.shift_to - xf).ceil() as i64;
            for _ in 0..steps {
                prod = self.mul(&prod, &w);
                w = self.add(&w, &self.int(1));
            }
        }
        let half = self.f(0.5);
        let lw = self.ln(&w);
        let mut s = self.mul(&self.sub(&w, &half), &lw);
        s = self.sub(&s, &w);
        s = self.add(&s, &self.half_ln_2pi);
        let inv = self.div(&self.int(1), &w);
        let inv2 = self.mul(&inv, &inv);
        let mut pw = inv;
        let cutoff = -(self.p as i64) - 8;
        for c in &self.stirling {
            let t = c.mul(&pw, self.p, RM);
            s = s.add(&t, self.p, RM);
            if exponent(&t) < exponent(&s) + cutoff {
                break;
            }
            pw = pw.mul(&inv2, self.p, RM);
        }
        if xf < self.shift_to {
            let lp = self.ln(&prod);
            s = self.sub(&s, &lp);
        }
        s
    }

    /// `1/Γ(x)`, exactly zero at the poles.
    pub fn rgamma(&mut self, x: &BigFloat) -> BigFloat {
        if x.is_zero() || (x.is_int() && x.is_negative()) {
            return self.int(0);
        }
        if to_f64(x) >= 0.5 {
            let l = self.ln_gamma_pos(x);
            return self.exp(&l.neg());
        }
        // 1/Γ(x) = sin(πx) Γ(1−x) / π, with the sine reduced exactly.
        let fl = x.floor();
        let frac = self.sub(x, &fl);
        let odd = (to_f64(&fl) as i64).rem_euclid(2) == 1;
        let mut s = self.sin(&self.mul(&self.pi, &frac));
        if odd {
            s = s.neg();
        }
        let one_minus = self.sub(&self.int(1), x);
        let l = self.ln_gamma_pos(&one_minus);
        let g = self.exp(&l);
        self.div(&self.mul(&s, &g), &self.pi)
    }
}

/// `B_{2k}/(2k(2k−1))` from the Bernoulli recurrence, run with enough guard
/// bits to absorb its growth.
fn stirling_coefficients(p: usize) -> Vec<BigFloat> {
    let q = p + 4 * STIRLING_TERMS + 128;
    let m_max = 2 * STIRLING_TERMS;
    let mut bern: Vec<BigFloat> = Vec::with_capacity(m_max + 1);
    bern.push(BigFloat::from_i32(1, q));
    for m in 1..=m_max {
        if m > 1 && m % 2 == 1 {
            bern.push(BigFloat::from_i32(0, q));
            continue;
        }
        // B_m = −1/(m+1) Σ_{j<m} C(m+1, j) B_j
        let mut s = BigFloat::from_i32(0, q);
        let mut binom = BigFloat::from_i32(1, q);
        for (j, bj) in bern.iter().enumerate() {
            s = s.add(&binom.mul(bj, q, RM), q, RM);
            // C(m+1, j+1) = C(m+1, j)·(m+1−j)/(j+1)
            binom = binom.mul(&BigFloat::from_i64((m + 1 - j) as i64, q), q, RM).div(
                &BigFloat::from_i64((j + 1) as i64, q),
                q,
                RM,
            );
        }
        let bm = s.div(&BigFloat::from_i64((m + 1) as i64, q), q, RM).neg();
        bern.push(bm);
    }
    (1..=STIRLING_TERMS)
        .map(|k| {
            let d = BigFloat::from_i64((2 * k * (2 * k - 1)) as i64, q);
            let mut c = bern[2 * k].div(&d, q, RM);
            c.set_precision(p, RM).expect("precision");
            c
        })
        .collect()
}

/// Binary exponent, or a very negative number for zero.
pub fn exponent(x: &BigFloat) -> i64 {
    if x.is_zero() {
        return i64::MIN / 4;
    }
    x.exponent().map(|e| e as i64).unwrap_or(i64::MIN / 4)
}

/// Nearest-ish f64 (the top 128 mantissa bits, rounded once).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let hi = *words.last().unwrap_or(&0);
    let lo = if words.len() > 1 { words[words.len() - 2] } else { 0 };
    // value = 0.m × 2^e with the mantissa's top bit set in `hi`.
    let m = ((hi as u128) << 64 | lo as u128) as f64;
    let v = m * 2f64.powi(-128) * pow2(e as i64);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

fn pow2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else if e < -1000 {
        2f64.powi(e as i32 + 200) * 2f64.powi(-200)
    } else {
        2f64.powi(e as i32)
    }
}

/// Complex number with `BigFloat` parts.
#[derive(Debug, Clone)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn from_c64(z: Complex64, hp: &Hp) -> Self {
        BigComplex {
            re: hp.f(z.re),
            im: hp.f(z.im),
        }
    }

    pub fn zero(hp: &Hp) -> Self {
        BigComplex {
            re: hp.int(0),
            im: hp.int(0),
        }
    }

    pub fn one(hp: &Hp) -> Self {
        BigComplex {
            re: hp.int(1),
            im: hp.int(0),
        }
    }

    pub fn add(&self, o: &Self, hp: &Hp) -> Self {
        BigComplex {
            re: hp.add(&self.re, &o.re),
            im: hp.add(&self.im, &o.im),
        }
    }

    pub fn mul(&self, o: &Self, hp: &Hp) -> Self {
        let re = hp.sub(&hp.mul(&self.re, &o.re), &hp.mul(&self.im, &o.im));
        let im = hp.add(&hp.mul(&self.re, &o.im), &hp.mul(&self.im, &o.re));
        BigComplex { re, im }
    }

    pub fn scale(&self, s: &BigFloat, hp: &Hp) -> Self {
        BigComplex {
            re: hp.mul(&self.re, s),
            im: hp.mul(&self.im, s),
        }
    }

    /// Binary exponent of the larger component.
    pub fn exponent(&self) -> i64 {
        exponent(&self.re).max(exponent(&self.im))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_f64() {
        for x in [1.0, -0.1, 3.5e-300, 1.7e300, std::f64::consts::PI, -2.0f64.powi(-1020)] {
            let hp = Hp::new(128);
            assert_eq!(to_f64(&hp.f(x)), x, "{x}");
        }
    }

    #[test]
    fn bernoulli_values() {
        let c = stirling_coefficients(256);
        // B_2/2, B_4/12, B_20/380
        assert!((to_f64(&c[0]) - 1.0 / 12.0).abs() < 1e-17);
        assert!((to_f64(&c[1]) + 1.0 / 360.0).abs() < 1e-19);
        assert!((to_f64(&c[9]) - (-174611.0 / 330.0) / 380.0).abs() < 1e-14);
    }

    #[test]
    fn reciprocal_gamma() {
        let mut hp = Hp::new(256);
        let cases = [
            (1.0, 1.0),
            (5.0, 1.0 / 24.0),
            (0.5, 1.0 / std::f64::consts::PI.sqrt()),
            (-0.5, -1.0 / (2.0 * std::f64::consts::PI.sqrt())),
            (-2.5, -15.0 / (8.0 * std::f64::consts::PI.sqrt())),
            (101.0, 1.0 / 9.332621544394415e157),
        ];
        for (x, want) in cases {
            let got = to_f64(&hp.rgamma(&hp.f(x)));
            assert!(((got - want) / want).abs() < 4e-16, "1/Γ({x}) = {got}, want {want}");
        }
        for pole in [0.0, -1.0, -7.0] {
            assert!(hp.rgamma(&hp.f(pole)).is_zero());
        }
    }

    #[test]
    fn gamma_is_accurate_beyond_f64() {
        // Γ(1/3)·Γ(2/3) = 2π/√3 checked at 200 bits.
        let mut hp = Hp::new(200);
        let third = hp.div(&hp.int(1), &hp.int(3));
        let two_thirds = hp.sub(&hp.int(1), &third);
        let a = hp.rgamma(&third);
        let b = hp.rgamma(&two_thirds);
        let prod = hp.mul(&a, &b);
        let pi = hp.pi.clone();
        let sqrt3 = hp.int(3).sqrt(200, RM);
        let want = hp.div(&sqrt3, &hp.mul(&hp.int(2), &pi));
        let rel = hp.div(&hp.sub(&prod, &want), &want);
        assert!(exponent(&rel) < -190, "rel error 2^{}", exponent(&rel));
    }
}
