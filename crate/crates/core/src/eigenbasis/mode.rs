use num_complex::Complex64;

use super::function::EigenFunction;
use super::product::InnerProduct;
use crate::error::Result;
use crate::geometry::{FrameKind, ModelParams};
use crate::spectrum::energy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencySign {
    Positive,
    Negative,
}

/// `φ⁺ = e^{-i E_n t} U_n(x) / √(2 E_n)`; `φ⁻` is its complex conjugate.
pub fn mode_function(p: &ModelParams, n: usize, t: f64, x: f64, sign: FrequencySign) -> Result<Complex64> {
    let u = EigenFunction::new(p, n)?.eval(FrameKind::Natural, x)?;
    Ok(mode_value(p, n, u, t, sign))
}

fn mode_value(p: &ModelParams, n: usize, u: f64, t: f64, sign: FrequencySign) -> Complex64 {
    let e = energy(p, n);
    let phi = Complex64::from_polar(u / (2.0 * e).sqrt(), -e * t);
    match sign {
        FrequencySign::Positive => phi,
        FrequencySign::Negative => phi.conj(),
    }
}

/// Relativistic product `i ∫ μ (φ_a* ∂_t φ_b - ∂_t φ_a* φ_b) dx` of two
/// positive-frequency modes at time `t`, by quadrature.
pub fn relativistic_product(p: &ModelParams, a: usize, b: usize, t: f64) -> Result<Complex64> {
    let ua = EigenFunction::new(p, a)?;
    let ub = EigenFunction::new(p, b)?;
    let (ea, eb) = (energy(p, a), energy(p, b));
    let ip = InnerProduct::for_basis(p, a.max(b))?;
    let integrand = |x: f64| {
        let fa = mode_value(p, a, ua.value(x), t, FrequencySign::Positive);
        let fb = mode_value(p, b, ub.value(x), t, FrequencySign::Positive);
        // ∂_t φ⁺ = -i E φ⁺
        let dfa = Complex64::new(0.0, -ea) * fa;
        let dfb = Complex64::new(0.0, -eb) * fb;
        Complex64::i() * (fa.conj() * dfb - dfa.conj() * fb)
    };
    let re = ip.functions(|x| integrand(x).re, |_| 1.0);
    let im = ip.functions(|x| integrand(x).im, |_| 1.0);
    Ok(Complex64::new(re, im))
}
