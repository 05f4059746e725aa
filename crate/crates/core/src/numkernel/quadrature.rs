use nalgebra::DMatrix;
use serde::Serialize;

use super::gamma::log_gamma_half_ratio;
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureKind {
    GaussJacobi,
    GaussLegendre,
    GaussHermite,
}

/// Gauss rule for one of the classical symmetric weights.
///
/// * `GaussJacobi`: weight `(1 - u^2)^alpha` on `(-1, 1)`.
/// * `GaussLegendre`: the `alpha = 0` case.
/// * `GaussHermite`: weight `exp(-y^2)` on the real line.
#[derive(Debug, Clone, Serialize)]
pub struct QuadratureRule {
    pub kind: QuadratureKind,
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Common exponent `alpha = beta`, only for Gauss-Jacobi.
    pub jacobi_exponent: Option<f64>,
}

impl QuadratureRule {
    /// `sum_i w_i f(x_i)`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Quadrature order used for scalar products up to basis index `n_max`.
pub fn default_order(n_max: usize) -> usize {
    2 * n_max + 32
}

/// Gauss-Jacobi rule on `(-1, 1)` for the weight `(1 - u^2)^alpha`.
pub fn make_jacobi_rule(alpha: f64, order: usize) -> Result<QuadratureRule> {
    if !(alpha > -1.0) {
        return Err(domain(format!("Jacobi exponent must exceed -1, got {alpha}")));
    }
    // Zeroth moment B(1/2, alpha + 1).
    let mu0 = std::f64::consts::PI.sqrt() * (-log_gamma_half_ratio(alpha + 1.0)?).exp();
    // b_j² = j (j + 2α) / ((2j + 2α - 1)(2j + 2α + 1)); the j = 1 factor
    // cancels, which matters at α = -1/2 where both vanish.
    let off_diag = |j: usize| {
        if j == 1 {
            return (2.0 * alpha + 3.0).recip().sqrt();
        }
        let j = j as f64;
        (j * (j + 2.0 * alpha) / ((2.0 * j + 2.0 * alpha - 1.0) * (2.0 * j + 2.0 * alpha + 1.0))).sqrt()
    };
    let (nodes, weights) = golub_welsch(order, mu0, off_diag)?;
    Ok(QuadratureRule {
        kind: if alpha == 0.0 { QuadratureKind::GaussLegendre } else { QuadratureKind::GaussJacobi },
        order,
        nodes,
        weights,
        jacobi_exponent: (alpha != 0.0).then_some(alpha),
    })
}

pub fn make_legendre_rule(order: usize) -> Result<QuadratureRule> {
    make_jacobi_rule(0.0, order)
}

/// Gauss-Hermite rule for the weight `exp(-y^2)`.
pub fn make_hermite_rule(order: usize) -> Result<QuadratureRule> {
    let mu0 = std::f64::consts::PI.sqrt();
    let (nodes, weights) = golub_welsch(order, mu0, |j| (j as f64 / 2.0).sqrt())?;
    Ok(QuadratureRule { kind: QuadratureKind::GaussHermite, order, nodes, weights, jacobi_exponent: None })
}

/// Nodes from the eigenvalues of the symmetric Jacobi matrix (zero diagonal,
/// off-diagonal `b(j)` between rows `j - 1` and `j`), polished by Newton on
/// the orthonormal recurrence. Weights are Christoffel numbers
/// `1 / sum_j p_j(x)^2`, which keeps small tail weights relatively accurate.
fn golub_welsch<B: Fn(usize) -> f64>(order: usize, mu0: f64, b: B) -> Result<(Vec<f64>, Vec<f64>)> {
    if order < 1 {
        return Err(domain("quadrature order must be at least 1"));
    }
    let coupling: Vec<f64> = (0..=order).map(|j| if j == 0 { 0.0 } else { b(j) }).collect();
    let mut jm = DMatrix::<f64>::zeros(order, order);
    for j in 1..order {
        jm[(j, j - 1)] = coupling[j];
        jm[(j - 1, j)] = coupling[j];
    }
    let mut nodes: Vec<f64> = jm.symmetric_eigenvalues().iter().copied().collect();
    nodes.sort_by(f64::total_cmp);

    let p0 = mu0.sqrt().recip();
    // Returns (p_order(x), p_order'(x), sum_{j<order} p_j(x)^2).
    let recur = |x: f64| {
        let (mut pm, mut p) = (0.0, p0);
        let (mut dm, mut d) = (0.0, 0.0);
        let mut sum_sq = 0.0;
        for j in 0..order {
            sum_sq += p * p;
            let next = (x * p - coupling[j] * pm) / coupling[j + 1];
            let dnext = (p + x * d - coupling[j] * dm) / coupling[j + 1];
            pm = p;
            p = next;
            dm = d;
            d = dnext;
        }
        (p, d, sum_sq)
    };

    for x in nodes.iter_mut() {
        for _ in 0..2 {
            let (p, d, _) = recur(*x);
            if d != 0.0 && d.is_finite() {
                *x -= p / d;
            }
        }
    }
    // Enforce the exact symmetry of the weight.
    for i in 0..order / 2 {
        let j = order - 1 - i;
        let half = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -half;
        nodes[j] = half;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }
    let mut weights: Vec<f64> = nodes.iter().map(|&x| recur(x).2.recip()).collect();
    for i in 0..order / 2 {
        let j = order - 1 - i;
        let w = 0.5 * (weights[i] + weights[j]);
        weights[i] = w;
        weights[j] = w;
    }
    if nodes.iter().chain(&weights).any(|v| !v.is_finite()) || weights.iter().any(|&w| w <= 0.0) {
        return Err(Error::Numerical(format!("Gauss rule of order {order} lost finiteness")));
    }
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Numerical(format!("Gauss rule of order {order} has coincident nodes")));
    }
    Ok((nodes, weights))
}
