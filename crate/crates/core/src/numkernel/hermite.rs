use std::f64::consts::PI;

/// Physicists' Hermite polynomial `H_n(y)` from the three-term recurrence.
pub fn hermite_poly(n: usize, y: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * y;
    for j in 1..n {
        let next = 2.0 * y * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Monomial coefficients of `H_n`, lowest degree first.
pub fn hermite_coeffs(n: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 2.0];
    for j in 1..n {
        let mut next = vec![0.0; j + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= 2.0 * j as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `pi^(-1/4) (2^n n!)^(-1/2) H_n(y)`: the Hermite function without its
/// Gaussian factor, by the normalized recurrence (no large intermediates).
pub fn hermite_function_reduced(n: usize, y: f64) -> f64 {
    hermite_reduced_table(n, y)[n]
}

/// Normalized Hermite function `psi_n(y) = pi^(-1/4) (2^n n!)^(-1/2) H_n(y) e^(-y^2/2)`.
pub fn hermite_function(n: usize, y: f64) -> f64 {
    hermite_function_reduced(n, y) * (-0.5 * y * y).exp()
}

/// Reduced Hermite functions of orders `0..=n`.
pub(crate) fn hermite_reduced_table(n: usize, y: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(PI.powf(-0.25));
    if n == 0 {
        return out;
    }
    out.push(2f64.sqrt() * y * out[0]);
    for j in 1..n {
        let jf = j as f64;
        let next = (2.0 / (jf + 1.0)).sqrt() * y * out[j] - (jf / (jf + 1.0)).sqrt() * out[j - 1];
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        assert_eq!(hermite_poly(0, 0.3), 1.0);
        assert!((hermite_poly(1, 0.7) - 1.4).abs() < 1e-15);
        assert_eq!(hermite_poly(3, 1.0), -4.0);
    }

    #[test]
    fn recurrence_matches_explicit_formulas_on_small_integers() {
        let explicit = [
            |_: i64| 1,
            |y: i64| 2 * y,
            |y: i64| 4 * y * y - 2,
            |y: i64| 8 * y * y * y - 12 * y,
            |y: i64| 16 * y.pow(4) - 48 * y * y + 12,
            |y: i64| 32 * y.pow(5) - 160 * y.pow(3) + 120 * y,
        ];
        for (n, f) in explicit.iter().enumerate() {
            for y in -4..=4 {
                assert_eq!(hermite_poly(n, y as f64), f(y) as f64, "n={n} y={y}");
            }
        }
    }

    #[test]
    fn coefficients_agree_with_recurrence() {
        for n in 0..12 {
            let c = hermite_coeffs(n);
            assert_eq!(c.len(), n + 1);
            for &y in &[-1.3, 0.0, 0.4, 2.2] {
                let horner = c.iter().rev().fold(0.0, |acc, &ci| acc * y + ci);
                let rec = hermite_poly(n, y);
                assert!((horner - rec).abs() <= 1e-12 * rec.abs().max(1.0));
            }
        }
    }

    #[test]
    fn normalized_functions_match_definition() {
        let mut fact = 1.0;
        for n in 0..15usize {
            if n > 0 {
                fact *= n as f64;
            }
            for &y in &[-2.5, -0.3, 0.0, 1.1, 3.0] {
                let direct = PI.powf(-0.25) / (2f64.powi(n as i32) * fact).sqrt()
                    * hermite_poly(n, y)
                    * (-0.5 * y * y).exp();
                assert!((hermite_function(n, y) - direct).abs() < 1e-13);
            }
        }
    }
}
