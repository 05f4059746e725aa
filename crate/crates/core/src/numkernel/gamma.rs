use crate::error::{domain, Result};

/// Natural logarithm of the Gamma function for `z > 0`.
pub fn log_gamma(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("log_gamma requires a positive argument, got {z}")));
    }
    Ok(statrs::function::gamma::ln_gamma(z))
}

/// `ln (z)_n` where `(z)_n = z (z + 1) ... (z + n - 1)` and `(z)_0 = 1`.
pub fn pochhammer_log(z: f64, n: u32) -> Result<f64> {
    if n == 0 {
        if !(z > 0.0) {
            return Err(domain(format!("pochhammer_log requires z > 0, got {z}")));
        }
        return Ok(0.0);
    }
    // Short products are summed directly, which is exact to rounding.
    if n <= 32 {
        if !(z > 0.0) {
            return Err(domain(format!("pochhammer_log requires z > 0, got {z}")));
        }
        return Ok((0..n).map(|i| (z + f64::from(i)).ln()).sum());
    }
    Ok(log_gamma(z + f64::from(n))? - log_gamma(z)?)
}

/// `ln Γ(z + 1/2) - ln Γ(z)` for `z > 0`.
///
/// For large `z` the two log-Gamma values are huge and nearly equal, so the
/// difference is taken from its own asymptotic series, after shifting small
/// arguments upwards:
/// `½ ln z + Σ (-1)^j (B_j(½) - B_j) / (j (j - 1) z^(j-1))`.
pub fn log_gamma_half_ratio(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain(format!("log_gamma_half_ratio requires a positive argument, got {z}")));
    }
    // Shift into the asymptotic range with Γ(z + 1) = z Γ(z).
    let mut shift = 0.0;
    let mut z = z;
    while z < 20.0 {
        shift -= ((z + 0.5) / z).ln();
        z += 1.0;
    }
    let r = z.recip();
    let r2 = r * r;
    let series = r
        * (-1.0 / 8.0
            + r2 * (1.0 / 192.0 + r2 * (-1.0 / 640.0 + r2 * (17.0 / 14336.0 + r2 * (-31.0 / 18432.0)))));
    Ok(shift + 0.5 * z.ln() + series)
}
