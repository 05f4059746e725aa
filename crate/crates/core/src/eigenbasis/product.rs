use nalgebra::DMatrix;

use super::function::{EigenFunction, Envelope};
use crate::error::{usage, Result};
use crate::geometry::ModelParams;
use crate::numkernel::{default_order, make_hermite_rule, make_jacobi_rule, QuadratureRule};

/// The scalar product `(f, g) = ∫_D μ(x) f(x) g(x) dx` realized by a Gauss rule.
///
/// For `ε > 0` the substitution `u = ω̂ x` turns the measure into
/// `(1 - u²)^(-1/2) du / ω̂`; pulling out both envelopes leaves the
/// Gauss-Jacobi weight `(1 - u²)^(k - 1/2)` times a polynomial. For `ε = 0`
/// the same happens with `y = √(mω) x` and the Hermite weight.
#[derive(Debug, Clone)]
pub struct InnerProduct {
    params: ModelParams,
    rule: QuadratureRule,
}

impl InnerProduct {
    pub fn new(p: &ModelParams, order: usize) -> Result<Self> {
        let rule = match p.k {
            Some(k) => make_jacobi_rule(k - 0.5, order)?,
            None => make_hermite_rule(order)?,
        };
        Ok(InnerProduct { params: *p, rule })
    }

    /// A rule exact for every pair of basis functions up to `n_max`.
    pub fn for_basis(p: &ModelParams, n_max: usize) -> Result<Self> {
        Self::new(p, default_order(n_max))
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    fn scale(&self) -> f64 {
        if self.params.is_limit() {
            (self.params.mass * self.params.omega).sqrt()
        } else {
            self.params.omega_hat
        }
    }

    /// Natural-frame coordinates of the quadrature nodes.
    pub fn node_coords(&self) -> Vec<f64> {
        let s = self.scale();
        self.rule.nodes.iter().map(|v| v / s).collect()
    }

    /// `(f, g)` for two basis functions, exact up to rounding.
    pub fn basis(&self, f: &EigenFunction, g: &EigenFunction) -> Result<f64> {
        self.params.ensure_same(&f.params)?;
        self.params.ensure_same(&g.params)?;
        Ok(self.rule.integrate(|v| f.reduced(v) * g.reduced(v)) / self.scale())
    }

    /// `(f, g)` for arbitrary natural-frame samplers. Both functions are
    /// divided by the basis envelope at each node, so they should decay at
    /// least like it for the rule to converge.
    pub fn functions<F, G>(&self, f: F, g: G) -> f64
    where
        F: Fn(f64) -> f64,
        G: Fn(f64) -> f64,
    {
        let s = self.scale();
        let envelope_sq = |v: f64| match self.params.k {
            Some(k) => Envelope::Jacobi { exponent: k }.at(v),
            None => (-v * v).exp(),
        };
        self.rule.integrate(|v| {
            let x = v / s;
            f(x) * g(x) / envelope_sq(v)
        }) / s
    }

    /// Gram matrix `G_{ij} = (U_i, U_j)`.
    pub fn gram(&self, fs: &[EigenFunction]) -> Result<DMatrix<f64>> {
        for f in fs {
            self.params.ensure_same(&f.params)?;
        }
        let s = self.scale();
        // reduced values at every node, one row per function
        let table: Vec<Vec<f64>> =
            fs.iter().map(|f| self.rule.nodes.iter().map(|&v| f.reduced(v)).collect()).collect();
        let n = fs.len();
        let mut gram = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let sum: f64 = self
                    .rule
                    .weights
                    .iter()
                    .zip(table[i].iter().zip(&table[j]))
                    .map(|(w, (a, b))| w * a * b)
                    .sum();
                gram[(i, j)] = sum / s;
                gram[(j, i)] = sum / s;
            }
        }
        Ok(gram)
    }
}

/// `(f, g)` for two basis functions of the same model.
pub fn scalar_product(f: &EigenFunction, g: &EigenFunction) -> Result<f64> {
    if f.params != g.params {
        return Err(usage("scalar product of functions from different models"));
    }
    InnerProduct::for_basis(&f.params, f.n().max(g.n()))?.basis(f, g)
}

/// Sup-norm error of the rank-`terms` projector `sum_{n < terms} U_n (U_n, f)`
/// against `f`, measured on `grid` (natural-frame coordinates).
pub fn completeness_probe<F: Fn(f64) -> f64>(
    p: &ModelParams,
    terms: usize,
    f: F,
    grid: &[f64],
) -> Result<f64> {
    let ip = InnerProduct::new(p, default_order(terms).max(96))?;
    let basis = super::basis(p, terms.saturating_sub(1))?;
    let coeffs: Vec<f64> = if terms == 0 {
        Vec::new()
    } else {
        basis.iter().map(|u| ip.functions(|x| u.value(x), &f)).collect()
    };
    let mut worst: f64 = 0.0;
    for &x in grid {
        let approx: f64 = if terms == 0 {
            0.0
        } else {
            basis.iter().zip(&coeffs).map(|(u, c)| c * u.value(x)).sum()
        };
        worst = worst.max((approx - f(x)).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenbasis::{basis, GridSpec};
    use crate::geometry::FrameKind;

    fn cfg(e: f64) -> ModelParams {
        ModelParams::new(1.0, 1.0, e).unwrap()
    }

    #[test]
    fn examples() {
        let a = cfg(1.0);
        let u: Vec<_> = basis(&a, 4).unwrap();
        assert!((scalar_product(&u[0], &u[0]).unwrap() - 1.0).abs() < 1e-13);
        assert!(scalar_product(&u[0], &u[1]).unwrap().abs() < 1e-15);
        assert!(scalar_product(&u[2], &u[4]).unwrap().abs() < 1e-11);
    }

    #[test]
    fn mismatched_models() {
        let f = EigenFunction::new(&cfg(1.0), 0).unwrap();
        let g = EigenFunction::new(&cfg(0.5), 0).unwrap();
        assert!(matches!(scalar_product(&f, &g), Err(crate::Error::Usage(_))));
        let ip = InnerProduct::for_basis(&cfg(1.0), 2).unwrap();
        assert!(ip.basis(&f, &g).is_err());
    }

    #[test]
    fn gram_is_identity() {
        for e in [1.0, 0.5, 0.0, 0.1] {
            let p = cfg(e);
            let fs = basis(&p, 32).unwrap();
            let g = InnerProduct::for_basis(&p, 32).unwrap().gram(&fs).unwrap();
            let dev = (g - DMatrix::<f64>::identity(33, 33)).abs().max();
            assert!(dev < 1e-10, "eps={e}: {dev}");
        }
    }

    #[test]
    fn sampled_route_matches_basis_route() {
        let p = cfg(0.5);
        let ip = InnerProduct::for_basis(&p, 6).unwrap();
        let f = EigenFunction::new(&p, 4).unwrap();
        let g = EigenFunction::new(&p, 6).unwrap();
        let a = ip.functions(|x| f.value(x), |x| f.value(x));
        assert!((a - 1.0).abs() < 1e-12);
        let b = ip.functions(|x| f.value(x), |x| g.value(x));
        assert!(b.abs() < 1e-12);
    }

    #[test]
    fn completeness_examples() {
        let a = cfg(1.0);
        let grid = GridSpec::new(&a, FrameKind::Natural, 257, 8).coords();
        let u3 = EigenFunction::new(&a, 3).unwrap();
        let e5 = completeness_probe(&a, 5, |x| u3.value(x), &grid).unwrap();
        assert!(e5 <= 1e-10, "{e5}");
        let e3 = completeness_probe(&a, 3, |x| u3.value(x), &grid).unwrap();
        let sup = grid.iter().map(|&x| u3.value(x).abs()).fold(0.0, f64::max);
        assert!((e3 - sup).abs() < 1e-12);
    }
}
