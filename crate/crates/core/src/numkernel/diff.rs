use crate::error::{Error, Result};

/// Central-difference derivative with two levels of Richardson extrapolation.
///
/// Samples `f` at `x ± h`, `x ± 2h` and `x ± 4h`. Intended as an oracle for
/// analytic derivatives, never as a production path.
pub fn finite_diff_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || x + h == x || x + h - x < f64::MIN_POSITIVE {
        return Err(Error::Numerical(format!("finite-difference step {h} underflows at x = {x}")));
    }
    let central = |step: f64| (f(x + step) - f(x - step)) / (2.0 * step);
    let d1 = central(h);
    let d2 = central(2.0 * h);
    let d4 = central(4.0 * h);
    // O(h^2) errors removed, then O(h^4).
    let r1 = (4.0 * d1 - d2) / 3.0;
    let r2 = (4.0 * d2 - d4) / 3.0;
    Ok((16.0 * r1 - r2) / 15.0)
}
