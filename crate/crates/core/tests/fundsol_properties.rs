use proptest::prelude::*;
use wrightsol_core::fundsol::{gamma_b, shift_space, shift_time, FundamentalSolutionSpec};
use wrightsol_core::specfun::SeriesControl;

fn specs() -> Vec<FundamentalSolutionSpec> {
    let mut out = Vec::new();
    for alpha in [1.3, 1.5, 1.9] {
        for n in [2, 3] {
            let own = alpha - alpha / (2.0 * n as f64) - 1.0;
            for b in [-0.5, 0.5, own] {
                out.push(FundamentalSolutionSpec::new(alpha, n, b).unwrap());
            }
        }
    }
    out
}

#[test]
fn realness_on_grid() {
    let ctrl = SeriesControl::default();
    for spec in specs() {
        for i in 0..20 {
            let dx = -6.0 + 12.0 * i as f64 / 19.0;
            for j in 0..20 {
                let dy = 0.05 + 2.95 * j as f64 / 19.0;
                let v = gamma_b(&spec, dx, dy, &ctrl);
                assert!(v.is_ok(), "{spec:?} at ({dx}, {dy}): {v:?}");
                let paired = spec
                    .shifted()
                    .profile_value(dx.abs() / dy.powf(spec.sigma()), &ctrl)
                    .unwrap()
                    * dy.powf(spec.b);
                let v = v.unwrap();
                assert!((v - paired).abs() <= 1e-12 * v.abs().max(1e-3 * dy.powf(spec.b)));
            }
        }
    }
}

#[test]
fn pde_holds_off_the_diagonal() {
    let ctrl = SeriesControl::default();
    let spec = FundamentalSolutionSpec::new(1.5, 2, 0.3).unwrap();
    for k in 0..10 {
        let dx = 0.15 + 0.37 * k as f64;
        let dy = 0.2 + 0.19 * k as f64;
        let lhs = shift_time(spec, 1.5).evaluate(dx, dy, &ctrl).unwrap();
        let rhs = -shift_space(spec, 4).evaluate(dx, dy, &ctrl).unwrap();
        assert!(
            (lhs - rhs).abs() <= 1e-8 * lhs.abs().max(1e-6),
            "({dx}, {dy}): {lhs} vs {rhs}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn even_in_dx(idx in 0usize..18, dx in 0.0f64..6.0, dy in 0.05f64..3.0) {
        let spec = specs()[idx];
        let ctrl = SeriesControl::default();
        let a = gamma_b(&spec, dx, dy, &ctrl).unwrap();
        let b = gamma_b(&spec, -dx, dy, &ctrl).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn odd_derivatives_are_odd(s in 0u32..6, dx in 0.01f64..4.0, dy in 0.1f64..2.0) {
        let ctrl = SeriesControl::default();
        let sp = shift_space(FundamentalSolutionSpec::new(1.6, 2, 0.2).unwrap(), s);
        let a = sp.evaluate(dx, dy, &ctrl).unwrap();
        let b = sp.evaluate(-dx, dy, &ctrl).unwrap();
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(a, sign * b);
    }

    #[test]
    fn time_shifts_compose(g1 in -1.0f64..1.0, g2 in -1.0f64..1.0) {
        let spec = FundamentalSolutionSpec::new(1.4, 3, 0.1).unwrap();
        let a = shift_time(shift_time(spec, g1), g2);
        let b = shift_time(spec, g1 + g2);
        prop_assert!((a.b_eff() - b.b_eff()).abs() < 1e-14);
    }
}
