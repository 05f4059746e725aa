/// Jacobi polynomial `P_n^(alpha, beta)(z)` from the standard three-term recurrence.
pub fn jacobi_p(n: usize, alpha: f64, beta: f64, z: f64) -> f64 {
    jacobi_p_shifted(n, alpha, beta, 0.5 * (1.0 - z))
}

/// `P_n^(alpha, beta)(1 - 2t)`, evaluated with the recurrence written in `t`.
///
/// Writing the recurrence in `t` removes the `alpha^2 - beta^2` cancellation
/// that the `z` form suffers when `beta` is large and `z` is close to 1.
pub fn jacobi_p_shifted(n: usize, alpha: f64, beta: f64, t: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let p = alpha + beta;
    let mut cur = (alpha + 1.0) - (p + 2.0) * t;
    for m in 2..=n {
        let m = m as f64;
        let s = 2.0 * m + p;
        // s (s - 2) + alpha^2 - beta^2, expanded without cancellation.
        let constant = 4.0 * m * (m + p - 1.0) + 2.0 * p * (alpha - 1.0);
        let linear = 2.0 * s * (s - 2.0);
        let lhs = 2.0 * m * (m + p) * (s - 2.0);
        let next = ((s - 1.0) * (constant - linear * t) * cur
            - 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * s * prev)
            / lhs;
        prev = cur;
        cur = next;
    }
    cur
}
