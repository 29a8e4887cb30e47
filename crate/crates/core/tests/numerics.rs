use proptest::prelude::*;
use vacuum_core::numerics::{
    find_root, integrate, integrate_semi_infinite, maximize_unimodal, NumericsError,
    QuadratureSpec, RootSpec,
};

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn polynomial_exact() {
    // ∫₀³ (x⁵ − 2x + 1) dx = 3⁶/6 − 9 + 3
    let v = integrate(|x| x.powi(5) - 2.0 * x + 1.0, 0.0, 3.0, spec()).unwrap();
    assert!((v - (729.0 / 6.0 - 6.0)).abs() < 1e-10);
}

#[test]
fn semi_infinite_exponential_moments() {
    // ∫₀^∞ xⁿ e^{-x} dx = n!
    for (n, fact) in [(0, 1.0), (1, 1.0), (3, 6.0), (6, 720.0)] {
        let v = integrate_semi_infinite(|x| x.powi(n) * (-x).exp(), 0.0, 1.0, spec()).unwrap();
        assert!((v / fact - 1.0).abs() < 1e-10, "n = {n}: {v}");
    }
}

#[test]
fn singular_integrand_reports_depth_or_nonfinite() {
    let e = integrate(|x| 1.0 / x, 0.0, 1.0, QuadratureSpec::new(1e-12, 0.0, 8).unwrap());
    assert!(matches!(
        e,
        Err(NumericsError::MaxDepthExceeded { .. }) | Err(NumericsError::NonFiniteIntegrand { .. })
    ));
}

#[test]
fn root_of_cubic_against_bisection() {
    let g = |x: f64| x * x * x - 2.0 * x - 5.0;
    let (mut lo, mut hi) = (2.0_f64, 3.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 { hi = mid } else { lo = mid }
    }
    let r = find_root(g, RootSpec::new(2.0, 3.0, 1e-14)).unwrap();
    assert!((r - lo).abs() < 1e-12);
}

#[test]
fn no_sign_change_is_an_error() {
    let e = find_root(|x| x * x + 1.0, RootSpec::new(-1.0, 1.0, 1e-12));
    assert!(matches!(e, Err(NumericsError::NoSignChange { .. })));
}

#[test]
fn golden_section_finds_parabola_vertex() {
    let x = maximize_unimodal(|x| -(x - 1.234).powi(2), 0.0, 5.0, 1e-10).unwrap();
    assert!((x - 1.234).abs() < 1e-8);
}

proptest! {
    #[test]
    fn integral_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, k in 0.5f64..4.0) {
        let f = |x: f64| (k * x).sin();
        let g = |x: f64| x * x * (-x).exp();
        let lhs = integrate(|x| a * f(x) + b * g(x), 0.0, 2.0, spec()).unwrap();
        let rhs = a * integrate(f, 0.0, 2.0, spec()).unwrap() + b * integrate(g, 0.0, 2.0, spec()).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn integral_is_additive_over_intervals(m in 0.1f64..2.9) {
        let f = |x: f64| 1.0 / (1.0 + x * x);
        let whole = integrate(f, 0.0, 3.0, spec()).unwrap();
        let split = integrate(f, 0.0, m, spec()).unwrap() + integrate(f, m, 3.0, spec()).unwrap();
        prop_assert!((whole - split).abs() < 1e-12);
        prop_assert!((whole - 3f64.atan()).abs() < 1e-12);
    }

    #[test]
    fn root_invariant_under_rescaling(c in 0.1f64..5.0, scale in 1e-3f64..1e3) {
        // roots of g and scale·g coincide
        let g = |x: f64| x.exp() - 1.0 - c;
        let r1 = find_root(g, RootSpec::new(0.0, 10.0, 1e-13)).unwrap();
        let r2 = find_root(|x| scale * g(x), RootSpec::new(0.0, 10.0, 1e-13)).unwrap();
        prop_assert!((r1 - r2).abs() < 1e-11);
        prop_assert!((r1 - (1.0 + c).ln()).abs() < 1e-11);
    }
}
