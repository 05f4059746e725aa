use crate::error::{domain, Result};
use crate::faults::{perturb, Fault};

/// Coefficients `d_j` of the terminating series `F(a, b; c; t) = sum_j d_j t^j`
/// where `a = -n_s` is a nonpositive integer.
///
/// `d_j = (a)_j (b)_j / ((c)_j j!)`, produced by forward recurrence on the
/// ratio `d_{j+1} / d_j`.
pub fn terminating_2f1_coeffs(a: i64, b: f64, c: f64) -> Result<Vec<f64>> {
    if a > 0 {
        return Err(domain(format!("first parameter must be a nonpositive integer, got {a}")));
    }
    if !(c > 0.0) {
        return Err(domain(format!("c must be positive, got {c}")));
    }
    let degree = a.unsigned_abs() as usize;
    let a = a as f64;
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut d = 1.0;
    coeffs.push(d);
    for j in 0..degree {
        let j = j as f64;
        d *= (a + j) * (b + j) / ((c + j) * (j + 1.0));
        coeffs.push(perturb(Fault::Hypergeometric, d));
    }
    Ok(coeffs)
}

/// Horner evaluation of `sum_j coeffs[j] t^j`.
pub fn eval_poly(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Term-by-term oracle: explicit rising products, no recurrence.
    fn brute_force(n_s: u32, b: f64, c: f64) -> Vec<f64> {
        let rising = |z: f64, j: u32| (0..j).map(|i| z + f64::from(i)).product::<f64>();
        (0..=n_s)
            .map(|j| {
                let fact: f64 = (1..=j).map(f64::from).product();
                rising(-f64::from(n_s), j) * rising(b, j) / (rising(c, j) * fact)
            })
            .collect()
    }

    #[test]
    fn degree_zero() {
        assert_eq!(terminating_2f1_coeffs(0, 7.3, 1.5).unwrap(), vec![1.0]);
    }

    #[test]
    fn degree_one() {
        assert_eq!(terminating_2f1_coeffs(-1, 3.0, 0.5).unwrap(), vec![1.0, -6.0]);
    }

    #[test]
    fn degree_two_matches_oracle() {
        let got = terminating_2f1_coeffs(-2, 2.0, 1.5).unwrap();
        let want = brute_force(2, 2.0, 1.5);
        assert_eq!(want.len(), 3);
        assert!((want[1] + 8.0 / 3.0).abs() < 1e-15);
        // (-2)_2 (2)_2 / ((3/2)_2 2!) = 2 * 6 / (15/4 * 2)
        assert!((want[2] - 8.0 / 5.0).abs() < 1e-15);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-14);
        }
    }

    #[test]
    fn higher_degrees_match_oracle() {
        for n_s in 0..12 {
            let got = terminating_2f1_coeffs(-(n_s as i64), 4.5311 + n_s as f64, 0.5).unwrap();
            let want = brute_force(n_s, 4.5311 + n_s as f64, 0.5);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() <= 1e-13 * w.abs().max(1.0));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(terminating_2f1_coeffs(1, 1.0, 1.0).is_err());
        assert!(terminating_2f1_coeffs(-2, 1.0, 0.0).is_err());
        assert!(terminating_2f1_coeffs(-2, 1.0, -0.5).is_err());
    }

    #[test]
    fn horner() {
        assert_eq!(eval_poly(&[1.0, -2.0, 3.0], 2.0), 9.0);
        assert_eq!(eval_poly(&[], 2.0), 0.0);
    }
}
