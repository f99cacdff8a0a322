use super::*;
use crate::gamma::recip_gamma;

fn problem(alpha: f64, phi: &str, psi: &str, f: &str) -> CauchyProblemSpec {
    CauchyProblemSpec::parse(alpha, 2, phi, psi, f).unwrap()
}

#[test]
fn rejects_bad_problems() {
    assert!(CauchyProblemSpec::parse(2.0, 2, "zero", "zero", "zero").is_err());
    assert!(matches!(
        CauchyProblemSpec::parse(1.5, 2, "expgrow:0.2", "zero", "zero"),
        Err(Error::GrowthViolation { .. })
    ));
    let cfg = QuadratureConfig {
        max_panels: 4,
        ..QuadratureConfig::default()
    };
    assert!(CauchySolver::new(problem(1.5, "zero", "zero", "zero"), cfg).is_err());
}

#[test]
fn zero_data() {
    let s = CauchySolver::new(problem(1.5, "zero", "zero", "zero"), QuadratureConfig::default()).unwrap();
    assert_eq!(s.value(0.3, 0.7).unwrap(), Estimate::ZERO);
}

#[test]
fn manufactured_constant_phi_and_psi() {
    for &a in &[1.3, 1.5, 1.9] {
        let s = CauchySolver::new(problem(a, "const:1", "zero", "zero"), QuadratureConfig::default()).unwrap();
        let p = CauchySolver::new(problem(a, "zero", "const:1", "zero"), QuadratureConfig::default()).unwrap();
        for &y in &[0.25, 1.0, 2.0] {
            for &x in &[-3.0, 0.0, 1.7] {
                let u = s.value(x, y).unwrap();
                let exact = libm::pow(y, a - 1.0) * recip_gamma(a);
                assert!(
                    u.converged && (u.value - exact).abs() < 1e-8,
                    "{a} {x} {y} {u:?} {exact}"
                );
                let u = p.value(x, y).unwrap();
                let exact = libm::pow(y, a - 2.0) * recip_gamma(a - 1.0);
                assert!(
                    u.converged && (u.value - exact).abs() < 1e-8,
                    "{a} {x} {y} {u:?} {exact}"
                );
            }
        }
    }
}

#[test]
fn manufactured_constant_source() {
    for &a in &[1.3, 1.5, 1.9] {
        let s = CauchySolver::new(problem(a, "zero", "zero", "const:1"), QuadratureConfig::default()).unwrap();
        for &y in &[0.5, 1.0] {
            let u = s.value(0.4, y).unwrap();
            let exact = libm::pow(y, a) * recip_gamma(a + 1.0);
            assert!(u.converged && (u.value - exact).abs() < 1e-8, "{a} {y} {u:?} {exact}");
        }
    }
}

#[test]
fn initial_limits_of_constant_phi() {
    let spec = problem(1.5, "const:1", "zero", "zero");
    let (d1, d2) = check_initial_limits(&spec, 0.2, &[0.5, 0.1], &QuadratureConfig::default()).unwrap();
    for e in &d1 {
        assert!((e.value - 1.0).abs() < 1e-8, "{e:?}");
    }
    // D^{α−2} of y^{α−1}/Γ(α) is y/Γ(2).
    assert!((d2[0].value - 0.5).abs() < 1e-8 && (d2[1].value - 0.1).abs() < 1e-8);
}

#[test]
fn residuals_of_constant_data() {
    for (phi, f) in [("const:1", "zero"), ("zero", "const:1")] {
        let spec = problem(1.5, phi, "zero", f);
        let s = CauchySolver::with_operators(
            spec.clone(),
            QuadratureConfig::default(),
            &CauchySolver::residual_operators(&spec),
        )
        .unwrap();
        let r = s.residual(0.3, 0.8).unwrap();
        assert!(r.value.abs() < 1e-8, "{phi} {f} {r:?}");
        let r = s.residual_by_parts(0.3, 0.8).unwrap();
        assert!(r.value.abs() < 1e-8, "{phi} {f} {r:?}");
    }
}

#[test]
fn gaussian_residual() {
    let spec = problem(1.5, "gaussian:1,0,1", "gaussian:0.5,0.2,0.8", "zero");
    let s = CauchySolver::with_operators(
        spec.clone(),
        QuadratureConfig::default(),
        &CauchySolver::residual_operators(&spec),
    )
    .unwrap();
    let u = s.value(0.5, 0.75).unwrap();
    let scale = u.value.abs().max(1.0);
    let r = s.residual(0.5, 0.75).unwrap();
    assert!(r.value.abs() <= 1e-4 * scale, "{r:?}");
    let r = s.residual_by_parts(0.5, 0.75).unwrap();
    assert!(r.value.abs() <= 1e-4 * scale, "{r:?}");
}

#[test]
fn gaussian_source_residual() {
    let spec = problem(1.5, "zero", "zero", "gaussian:1,0,1*y^1");
    let s = CauchySolver::with_operators(
        spec.clone(),
        QuadratureConfig::default(),
        &CauchySolver::residual_operators(&spec),
    )
    .unwrap();
    let r1 = s.residual(0.3, 0.6).unwrap();
    let r2 = s.residual_by_parts(0.3, 0.6).unwrap();
    assert!(r1.value.abs() < 1e-6 && r2.value.abs() < 1e-6, "{r1:?} {r2:?}");
}
