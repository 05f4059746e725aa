use crate::error::{regime, Result};
use crate::faults::{perturb, Fault};
use crate::geometry::ModelParams;

fn lowest_weight(p: &ModelParams, what: &str) -> Result<f64> {
    p.k.ok_or_else(|| regime(format!("{what} needs epsilon > 0; at epsilon = 0 use the oscillator ladder")))
}

/// `(C⁺_n, C⁻_n)` with `A₊ U_n = C⁺_n U_{n+1}` and `A₋ U_n = C⁻_n U_{n-1}`.
/// `C⁻_0` is defined as 0.
pub fn shift_coefficients(p: &ModelParams, n: usize) -> Result<(f64, f64)> {
    let k = lowest_weight(p, "shift coefficients")?;
    let nf = n as f64;
    let norm = (2.0 * k).sqrt().recip();
    let plus = norm * ((2.0 * k + nf) * (k + nf) / (k + nf + 1.0)).sqrt() * (nf + 1.0).sqrt();
    let minus = if n == 0 {
        0.0
    } else {
        norm * ((2.0 * k + nf - 1.0) * (k + nf) / (k + nf - 1.0)).sqrt() * nf.sqrt()
    };
    Ok((perturb(Fault::ShiftPlus, plus), perturb(Fault::ShiftMinus, minus)))
}

/// `w₊(n) = [(n + 2k)(n + k) / (2k (n + k + 1))]^(1/2)`.
pub fn w_plus(p: &ModelParams, n: usize) -> Result<f64> {
    let k = lowest_weight(p, "w_plus")?;
    let nf = n as f64;
    let w = ((nf + 2.0 * k) * (nf + k) / (2.0 * k * (nf + k + 1.0))).sqrt();
    Ok(perturb(Fault::WeightPlus, w))
}

/// `w₋(n) = w₊(n) (n + k + 1) / (n + k)`.
pub fn w_minus(p: &ModelParams, n: usize) -> Result<f64> {
    let k = lowest_weight(p, "w_minus")?;
    let nf = n as f64;
    let w = ((nf + 2.0 * k) * (nf + k + 1.0) / (2.0 * k * (nf + k))).sqrt();
    Ok(perturb(Fault::WeightMinus, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> f64 {
        0.5 * (1.0 + 5f64.sqrt())
    }

    #[test]
    fn config_a_spot_values() {
        let a = ModelParams::new(1.0, 1.0, 1.0).unwrap();
        let (c0, m0) = shift_coefficients(&a, 0).unwrap();
        assert!((c0 - golden().powf(-0.5)).abs() < 1e-15);
        assert!((c0 - 0.7861514).abs() < 1e-7);
        assert_eq!(m0, 0.0);
        let (_, m1) = shift_coefficients(&a, 1).unwrap();
        assert!((m1 - golden().sqrt()).abs() < 1e-15);
        assert!((m1 - 1.2720196).abs() < 1e-7);
    }

    #[test]
    fn weights_reproduce_shift_coefficients() {
        let b = ModelParams::new(1.0, 1.0, 0.5).unwrap();
        for n in 0..50usize {
            let (cp, cm) = shift_coefficients(&b, n).unwrap();
            let wp = w_plus(&b, n).unwrap() * ((n + 1) as f64).sqrt();
            assert!((cp - wp).abs() < 1e-14 * cp);
            if n > 0 {
                let wm = w_minus(&b, n - 1).unwrap() * (n as f64).sqrt();
                assert!((cm - wm).abs() < 1e-14 * cm);
            }
        }
    }

    #[test]
    fn undefined_at_zero_epsilon() {
        let c = ModelParams::new(1.0, 1.0, 0.0).unwrap();
        assert!(matches!(shift_coefficients(&c, 0), Err(crate::Error::Regime(_))));
        assert!(w_plus(&c, 0).is_err());
    }
}
