use proptest::prelude::*;
use relosc_core::eigenbasis::{mode_function, relativistic_product, FrequencySign};
use relosc_core::geometry::{from_conformal, to_conformal};
use relosc_core::spectrum::quantization_residual;
use relosc_core::{energy, EigenFunction, FrameKind, ModelParams, Regime, SpectrumTable};

/// Tanh-sinh rule on (-1, 1); tolerant of the endpoint behaviour of the
/// weighted products. The integrand receives `u` and `1 - u²`.
fn tanh_sinh<F: Fn(f64, f64) -> f64>(f: F) -> f64 {
    let h = 1.0 / 64.0;
    let half_pi = std::f64::consts::FRAC_PI_2;
    (-256..=256)
        .map(|i| {
            let t = i as f64 * h;
            let s = half_pi * t.sinh();
            let x = s.tanh();
            let one_minus = s.cosh().powi(-2);
            if one_minus == 0.0 {
                0.0
            } else {
                h * half_pi * t.cosh() * one_minus * f(x, one_minus)
            }
        })
        .sum()
}

/// `(U_a, U_b)` with measure `dx / √(1 - ω̂²x²)`, as an integral over `u = ω̂x`.
fn scalar(p: &ModelParams, a: &EigenFunction, b: &EigenFunction) -> f64 {
    let w = p.omega_hat;
    tanh_sinh(|u, c2| {
        let x = u / w;
        // nodes that round onto the horizon carry no weight
        if (w * x).abs() >= 1.0 {
            return 0.0;
        }
        a.value(x) * b.value(x) / (w * c2.sqrt())
    })
}

fn params() -> impl Strategy<Value = ModelParams> {
    (0.5f64..2.0, 0.5f64..2.0, 0.3f64..1.0).prop_map(|(m, w, e)| ModelParams::new(m, w, e).unwrap())
}

#[test]
fn parameter_validation() {
    assert!(ModelParams::new(0.0, 1.0, 0.5).is_err());
    assert!(ModelParams::new(1.0, -1.0, 0.5).is_err());
    assert!(ModelParams::new(1.0, 1.0, -0.1).is_err());
    assert!(ModelParams::new(f64::NAN, 1.0, 0.5).is_err());
    let c = ModelParams::new(1.0, 1.0, 0.0).unwrap();
    assert_eq!(c.regime, Regime::NrhoLimit);
    assert!(c.k.is_none());
    assert!(c.lambda == 0.0 && c.lambda.is_sign_positive());
    assert_eq!(ModelParams::new(1.0, 1.0, 1.0).unwrap().regime, Regime::AntiDeSitter);
    assert_eq!(ModelParams::new(1.0, 1.0, 0.5).unwrap().regime, Regime::Generic);
}

#[test]
fn golden_ratio_ground_state() {
    let p = ModelParams::new(1.0, 1.0, 1.0).unwrap();
    let phi = 0.5 * (1.0 + 5f64.sqrt());
    assert!((p.k.unwrap() - phi).abs() < 1e-15);
    let rows: Vec<_> = SpectrumTable::new(&p, 3).rows().collect();
    assert_eq!(rows.len(), 4);
    for (n, e) in rows {
        assert!((e - (phi + n as f64)).abs() < 1e-13);
    }
}

#[test]
fn ground_state_at_origin() {
    // U_0(0) = [Γ(k + 1) / (√π Γ(k + ½))]^{1/2} ω̂^{1/2}
    let p = ModelParams::new(1.0, 1.0, 1.0).unwrap();
    let u0 = EigenFunction::new(&p, 0).unwrap().value(0.0);
    assert!((u0 - 0.880_019_928_603_015).abs() < 1e-12);
    let c = ModelParams::new(1.0, 1.0, 0.0).unwrap();
    let h0 = EigenFunction::new(&c, 0).unwrap().value(0.0);
    assert!((h0 - std::f64::consts::PI.powf(-0.25)).abs() < 1e-15);
}

#[test]
fn tanh_sinh_oracle_is_sound() {
    // ∫ (1 - u²)^{1/2} du = π/2
    let got = tanh_sinh(|_, c2| c2.sqrt());
    assert!((got - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
}

#[test]
fn outside_horizon_is_an_error() {
    let p = ModelParams::new(1.0, 1.0, 0.5).unwrap();
    let f = EigenFunction::new(&p, 1).unwrap();
    assert!(f.eval(FrameKind::Natural, 2.0 / p.omega_hat).is_err());
    assert!(f.eval(FrameKind::Conformal, 2.0 / p.omega_hat).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orthonormal_against_independent_quadrature(p in params(), a in 0usize..9, b in 0usize..9) {
        let (fa, fb) = (EigenFunction::new(&p, a).unwrap(), EigenFunction::new(&p, b).unwrap());
        let expect = if a == b { 1.0 } else { 0.0 };
        prop_assert!((scalar(&p, &fa, &fb) - expect).abs() < 1e-10);
    }

    #[test]
    fn parity(p in params(), n in 0usize..24, s in 0.0f64..0.99) {
        let f = EigenFunction::new(&p, n).unwrap();
        let x = s / p.omega_hat;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((f.value(-x) - sign * f.value(x)).abs() <= 1e-14 * f.value(x).abs().max(1e-3));
    }

    #[test]
    fn recurrence_matches_monomials_at_low_order(p in params(), n in 0usize..8, s in -0.95f64..0.95) {
        let f = EigenFunction::new(&p, n).unwrap();
        let x = s / p.omega_hat;
        prop_assert!((f.value(x) - f.eval_monomial(x)).abs() < 1e-10);
    }

    #[test]
    fn frames_agree(p in params(), n in 0usize..12, s in -0.99f64..0.99) {
        let f = EigenFunction::new(&p, n).unwrap();
        let xhat = s * std::f64::consts::FRAC_PI_2 / p.omega_hat;
        let x = from_conformal(&p, xhat).unwrap();
        prop_assert!((to_conformal(&p, x).unwrap() - xhat).abs() < 1e-12 / p.omega_hat);
        let (a, b) = (f.eval(FrameKind::Conformal, xhat).unwrap(), f.eval(FrameKind::Natural, x).unwrap());
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_difference_quotient(p in params(), n in 0usize..10, s in -0.8f64..0.8) {
        let f = EigenFunction::new(&p, n).unwrap();
        let x = s / p.omega_hat;
        let h = 1e-5 / p.omega_hat;
        let fd = (f.value(x + h) - f.value(x - h)) / (2.0 * h);
        let d1 = f.eval_derivative(FrameKind::Natural, x).unwrap();
        let scale = f.jet(FrameKind::Natural, x).unwrap().d2.abs().max(1.0) * p.omega_hat.max(1.0);
        prop_assert!((d1 - fd).abs() < 1e-5 * scale);
    }

    #[test]
    fn spectrum_increasing_and_above_mass(p in params(), n in 0usize..200) {
        let (e0, e1) = (energy(&p, n), energy(&p, n + 1));
        prop_assert!(e1 > e0);
        prop_assert!(energy(&p, 0) > p.mass);
        prop_assert!(quantization_residual(&p, n).unwrap().abs() <= 1e-13 * e0 * e0);
    }

    #[test]
    fn anti_de_sitter_spacing_is_uniform(m in 0.1f64..5.0, w in 0.1f64..5.0, n in 0usize..500) {
        let p = ModelParams::new(m, w, 1.0).unwrap();
        prop_assert!((energy(&p, n + 1) - energy(&p, n) - p.omega_hat).abs() < 1e-12 * energy(&p, n + 1));
    }

    #[test]
    fn spectrum_continuous_at_limit(m in 0.5f64..2.0, w in 0.5f64..2.0, n in 0usize..6) {
        let c = ModelParams::new(m, w, 0.0).unwrap();
        let near = ModelParams::new(m, w, 1e-3).unwrap();
        prop_assert!((energy(&near, n) - energy(&c, n)).abs() < 1e-4 * energy(&c, n));
    }

    #[test]
    fn positive_frequency_modes_are_orthonormal(p in params(), a in 0usize..6, b in 0usize..6, t in -5.0f64..5.0) {
        let g = relativistic_product(&p, a, b, t).unwrap();
        let expect = if a == b { 1.0 } else { 0.0 };
        prop_assert!((g.re - expect).abs() < 1e-10 && g.im.abs() < 1e-10);
        let x = 0.3 / p.omega_hat;
        let plus = mode_function(&p, a, t, x, FrequencySign::Positive).unwrap();
        let minus = mode_function(&p, a, t, x, FrequencySign::Negative).unwrap();
        prop_assert_eq!(plus.conj(), minus);
    }
}

