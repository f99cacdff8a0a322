use std::f64::consts::PI;

use proptest::prelude::*;
use wrightsol_core::specfun::{
    decay_rate, gen_wright, wright_decay_bound, wright_phi, wright_phi_auto, GenWrightParams, SeriesControl,
    WrightParams,
};
use wrightsol_core::Complex64;

fn z_strategy() -> impl Strategy<Value = Complex64> {
    (
        0.0f64..10.0,
        prop::sample::select(vec![0.0, 0.25, -0.25, 0.75, -0.75, 1.0]),
    )
        .prop_map(|(r, a)| Complex64::from_polar(r, a * PI))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn gen_wright_reduces_to_wright(sigma in 0.1f64..0.9, beta in -2.0f64..3.0, z in z_strategy()) {
        let ctrl = SeriesControl::default();
        let w = wright_phi(&WrightParams { sigma, beta, z }, &ctrl);
        let g = gen_wright(&GenWrightParams { mu: 1.0, a: 1.0, nu: -sigma, b: beta, z }, &ctrl);
        if let (Ok(w), Ok(g)) = (w, g) {
            let tol = 1e-13 * w.value.norm().max(w.max_term * 1e-3).max(1e-300);
            prop_assert!((w.value - g.value).norm() <= tol, "{} vs {}", w.value, g.value);
        }
    }

    #[test]
    fn conjugate_symmetry(sigma in 0.1f64..0.9, beta in -2.0f64..3.0, r in 0.0f64..30.0, a in -PI..PI) {
        let ctrl = SeriesControl::default();
        let z = Complex64::from_polar(r, a);
        let up = wright_phi_auto(&WrightParams { sigma, beta, z }, &ctrl);
        let down = wright_phi_auto(&WrightParams { sigma, beta, z: z.conj() }, &ctrl);
        match (up, down) {
            (Ok(u), Ok(d)) => {
                let tol = 4.0 * f64::EPSILON * u.value.norm() + u.error + d.error;
                prop_assert!((u.value.conj() - d.value).norm() <= tol);
            }
            (Err(e1), Err(e2)) => prop_assert_eq!(core::mem::discriminant(&e1), core::mem::discriminant(&e2)),
            (u, d) => prop_assert!(false, "asymmetric outcome {:?} / {:?}", u, d),
        }
    }

    #[test]
    fn decay_rate_is_positive(alpha in 1.0001f64..1.9999, n in 1u32..8) {
        prop_assert!(decay_rate(alpha, n).unwrap() > 0.0);
    }
}

#[test]
fn kernel_envelope_is_uniform() {
    let (alpha, n, b) = (1.5, 2, 0.5);
    let sigma = alpha / (2.0 * n as f64);
    let ctrl = SeriesControl::default();
    let ratio = |t: f64| {
        let z = -Complex64::from_polar(t, PI / 4.0);
        let v = wright_phi_auto(
            &WrightParams {
                sigma,
                beta: b + 1.0,
                z,
            },
            &ctrl,
        )
        .unwrap()
        .value
        .norm();
        v / wright_decay_bound(alpha, n, b, t).unwrap()
    };
    // The ratio settles to a constant: bounded, with shrinking relative steps.
    let r: Vec<f64> = [5.0, 10.0, 20.0, 40.0].iter().map(|&t| ratio(t)).collect();
    assert!(r.iter().all(|&x| x > 0.0 && x <= 2.0 * r[0]), "{r:?}");
    let steps: Vec<f64> = r.windows(2).map(|w| (w[1] / w[0] - 1.0).abs()).collect();
    assert!(steps.windows(2).all(|w| w[1] < w[0]), "{r:?}");
}
