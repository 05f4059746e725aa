//! Energy levels in the three regimes.

use serde::Serialize;

use crate::error::{regime, Result};
use crate::faults::{perturb, Fault};
use crate::geometry::{ModelParams, Regime};

/// Positive-frequency energy `E_n`.
///
/// * `ε = 1`: `E_n = ω̂ (k + n)`.
/// * other `ε > 0`: `E_n² = m² + ω̂² [2k (n + 1/2) + n²]`.
/// * `ε = 0`: `E_n² = m² + 2 m ω (n + 1/2)`.
pub fn energy(p: &ModelParams, n: usize) -> f64 {
    let nf = n as f64;
    let e = match (p.regime, p.k) {
        (Regime::AntiDeSitter, Some(k)) => p.omega_hat * (k + nf),
        (Regime::Generic, Some(k)) => generic_energy(p.mass, p.omega_hat, k, nf),
        _ => (p.mass * p.mass + 2.0 * p.mass * p.omega * (nf + 0.5)).sqrt(),
    };
    perturb(Fault::Energy, e)
}

/// The `ε ≠ 1` square-root law, usable at `ε = 1` for cross-checks.
pub fn generic_energy(mass: f64, omega_hat: f64, k: f64, n: f64) -> f64 {
    (mass * mass + omega_hat * omega_hat * (2.0 * k * (n + 0.5) + n * n)).sqrt()
}

/// `E_n² - m² (1 - 1/ε²) - ω̂² (k + n)²`, which vanishes identically.
pub fn quantization_residual(p: &ModelParams, n: usize) -> Result<f64> {
    let k = p.k.ok_or_else(|| regime("the quantization condition needs epsilon > 0"))?;
    let e = energy(p, n);
    let kn = k + n as f64;
    Ok(e * e - p.mass * p.mass * (1.0 - 1.0 / (p.epsilon * p.epsilon))
        - p.omega_hat * p.omega_hat * kn * kn)
}

/// Energies `E_0 ..= E_{n_max}` of one model.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumTable {
    pub params: ModelParams,
    pub n_max: usize,
    pub energies: Vec<f64>,
}

impl SpectrumTable {
    pub fn new(p: &ModelParams, n_max: usize) -> Self {
        SpectrumTable { params: *p, n_max, energies: (0..=n_max).map(|n| energy(p, n)).collect() }
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.energies.iter().copied().enumerate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(e: f64) -> ModelParams {
        ModelParams::new(1.0, 1.0, e).unwrap()
    }

    #[test]
    fn config_examples() {
        let phi = 0.5 * (1.0 + 5f64.sqrt());
        assert!((energy(&cfg(1.0), 0) - phi).abs() < 1e-15);
        assert!((energy(&cfg(1.0), 0) - 1.6180340).abs() < 1e-7);
        let c = cfg(0.0);
        assert!((energy(&c, 0) - 2f64.sqrt()).abs() < 1e-15);
        assert!((energy(&c, 1) - 2.0).abs() < 1e-15);
        let b = cfg(0.5);
        assert!((b.k.unwrap() - 4.531128874149275).abs() < 1e-14);
        // E_0^2 = 1 + 0.25 k by hand.
        let want = (1.0 + 0.25 * b.k.unwrap()).sqrt();
        assert!((energy(&b, 0) - want).abs() < 1e-15);
        assert!((energy(&b, 0) - 1.4604049).abs() < 1e-7);
    }

    #[test]
    fn residual_vanishes() {
        for &e in &[0.25, 0.5, 1.0, 1.7] {
            let p = cfg(e);
            for n in 0..=30 {
                let r = quantization_residual(&p, n).unwrap();
                let scale = energy(&p, n).powi(2);
                assert!(r.abs() <= 1e-12 * scale, "eps={e} n={n} r={r}");
            }
        }
        assert!(quantization_residual(&cfg(0.0), 0).is_err());
    }

    #[test]
    fn anti_de_sitter_agrees_with_generic_law() {
        let p = ModelParams::new(0.8, 1.3, 1.0).unwrap();
        let k = p.k.unwrap();
        for n in 0..=100 {
            let lin = energy(&p, n);
            let sq = generic_energy(p.mass, p.omega_hat, k, n as f64);
            assert!(((lin - sq) / lin).abs() < 1e-12);
        }
    }

    #[test]
    fn monotone_and_above_mass() {
        for &e in &[0.0, 0.01, 0.3, 1.0, 2.0] {
            let t = SpectrumTable::new(&cfg(e), 1000);
            assert!(t.energies.windows(2).all(|w| w[1] > w[0]));
            assert!(t.energies.iter().all(|&en| en > 1.0));
        }
    }

    #[test]
    fn small_epsilon_converges_quadratically() {
        for n in 0..=6 {
            let e0 = energy(&cfg(0.0), n);
            let d1 = (energy(&cfg(0.1), n) - e0).abs();
            let d2 = (energy(&cfg(0.01), n) - e0).abs();
            assert!(d1 / d2 >= 50.0, "n={n}: ratio {}", d1 / d2);
        }
    }
}
