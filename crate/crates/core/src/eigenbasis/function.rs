use serde::Serialize;

use crate::error::{regime, Result};
use crate::faults::{perturb, Fault};
use crate::geometry::{Frame, FrameKind, ModelParams};
use crate::numkernel::{
    eval_poly, hermite_coeffs, jacobi_p_shifted, log_gamma, log_gamma_half_ratio, pochhammer_log, terminating_2f1_coeffs,
};

/// Main quantum number `n = 2 n_s + s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisIndex {
    pub n: usize,
    pub n_s: usize,
    pub s: usize,
}

impl BasisIndex {
    pub fn new(n: usize) -> Self {
        BasisIndex { n, n_s: n / 2, s: n % 2 }
    }
}

/// Decaying factor multiplying the polynomial part, as a function of the
/// scaled variable `v` (`u = ω̂ x` for `ε > 0`, `y = √(mω) x` for `ε = 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Envelope {
    /// `(1 - u²)^exponent` with `exponent = k / 2`.
    Jacobi { exponent: f64 },
    /// `exp(-y² / 2)`.
    Gaussian,
}

impl Envelope {
    pub fn at(&self, v: f64) -> f64 {
        match *self {
            Envelope::Jacobi { exponent } => (exponent * (-v * v).ln_1p()).exp(),
            Envelope::Gaussian => (-0.5 * v * v).exp(),
        }
    }
}

/// Value and first two derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// `N_{n_s, s}` as `(sign, ln |N|)`.
pub fn normalization(p: &ModelParams, n: usize) -> Result<(f64, f64)> {
    let k = p.k.ok_or_else(|| regime("normalization N_{n_s,s} needs epsilon > 0"))?;
    let BasisIndex { n_s, s, .. } = BasisIndex::new(n);
    let (n_s, s) = (n_s as f64, s as f64);
    let sign = if (n_s as usize).is_multiple_of(2) { 1.0 } else { -1.0 };
    // ln Γ(k + s + n_s) - ln Γ(k + n_s + 1/2), without the large cancelling terms
    let ratio = if s == 0.0 {
        -log_gamma_half_ratio(k + n_s)?
    } else {
        log_gamma_half_ratio(k + n_s + 0.5)?
    };
    let ln_bracket = (k + s + 2.0 * n_s).ln() + ratio - log_gamma(n_s + s + 0.5)?;
    let ln_abs = (s + 0.5) * p.omega_hat.ln() - 0.5 * log_gamma(n_s + 1.0)?
        + pochhammer_log(s + 0.5, n_s as u32)?
        + 0.5 * ln_bracket;
    Ok((sign, ln_abs))
}

/// Normalized energy eigenfunction `U_n`.
///
/// The canonical form is `U_n(x) = envelope(v) * sum_j poly_coeffs[j] v^j`
/// with `v = scale * x`. The expanded coefficients are kept for structural
/// checks; values and derivatives are computed from the orthogonal-polynomial
/// recurrence, which stays accurate where the monomial sum cancels badly.
#[derive(Debug, Clone, Serialize)]
pub struct EigenFunction {
    pub params: ModelParams,
    pub index: BasisIndex,
    pub envelope: Envelope,
    /// `ω̂` for `ε > 0`, `√(mω)` for `ε = 0`.
    pub scale: f64,
    pub poly_coeffs: Vec<f64>,
    /// `N_{n_s,s}` for `ε > 0`; `(mω/π)^(1/4) (n! 2^n)^(-1/2)` for `ε = 0`.
    pub norm_factor: f64,
    /// Multiplies the recurrence-evaluated polynomial.
    prefactor: f64,
}

impl EigenFunction {
    pub fn new(p: &ModelParams, n: usize) -> Result<Self> {
        let index = BasisIndex::new(n);
        if p.is_limit() {
            return Ok(Self::hermite(p, index));
        }
        let k = p.k()?;
        let (sign, ln_abs) = normalization(p, n)?;
        let norm_factor = perturb(Fault::Normalization, sign * ln_abs.exp());
        let (n_s, s) = (index.n_s, index.s);
        let d = terminating_2f1_coeffs(-(n_s as i64), k + (s + n_s) as f64, s as f64 + 0.5)?;
        let lead = norm_factor * p.omega_hat.powi(-(s as i32));
        let mut poly_coeffs = vec![0.0; n + 1];
        for (j, dj) in d.iter().enumerate() {
            poly_coeffs[s + 2 * j] = lead * dj;
        }
        // F(-n_s, n_s + a + b + 1; a + 1; t) = n_s! / (a + 1)_{n_s} P_{n_s}^{(a,b)}(1 - 2t)
        let ln_ratio = log_gamma(n_s as f64 + 1.0)? - pochhammer_log(s as f64 + 0.5, n_s as u32)?;
        let prefactor = lead * ln_ratio.exp();
        Ok(EigenFunction {
            params: *p,
            index,
            envelope: Envelope::Jacobi { exponent: 0.5 * k },
            scale: p.omega_hat,
            poly_coeffs,
            norm_factor,
            prefactor,
        })
    }

    fn hermite(p: &ModelParams, index: BasisIndex) -> Self {
        let n = index.n;
        let mw = p.mass * p.omega;
        let ln_fact: f64 = (1..=n).map(|i| (i as f64).ln()).sum();
        let ln_norm = 0.25 * (mw / std::f64::consts::PI).ln()
            - 0.5 * (ln_fact + n as f64 * std::f64::consts::LN_2);
        let norm_factor = perturb(Fault::Normalization, ln_norm.exp());
        let poly_coeffs = hermite_coeffs(n).into_iter().map(|h| h * norm_factor).collect();
        // The recurrence already carries pi^(-1/4) (2^n n!)^(-1/2).
        let prefactor =
            norm_factor * (0.5 * (ln_fact + n as f64 * std::f64::consts::LN_2)).exp() * std::f64::consts::PI.powf(0.25);
        EigenFunction {
            params: *p,
            index,
            envelope: Envelope::Gaussian,
            scale: mw.sqrt(),
            poly_coeffs,
            norm_factor,
            prefactor,
        }
    }

    pub fn n(&self) -> usize {
        self.index.n
    }

    /// Polynomial part at the scaled variable `v`, so `U = envelope(v) * reduced(v)`.
    pub fn reduced(&self, v: f64) -> f64 {
        match self.envelope {
            Envelope::Gaussian => {
                self.prefactor * crate::numkernel::hermite_function_reduced(self.index.n, v)
            }
            Envelope::Jacobi { exponent } => {
                let (alpha, beta) = self.jacobi_exponents(2.0 * exponent);
                let q = jacobi_p_shifted(self.index.n_s, alpha, beta, v * v);
                self.prefactor * if self.index.s == 1 { v * q } else { q }
            }
        }
    }

    fn jacobi_exponents(&self, k: f64) -> (f64, f64) {
        (self.index.s as f64 - 0.5, k - 0.5)
    }

    /// Evaluation from the expanded monomial coefficients. Accurate only for
    /// low `n`; kept as an independent route for cross-checks.
    pub fn eval_monomial(&self, x: f64) -> f64 {
        let v = self.scale * x;
        self.envelope.at(v) * eval_poly(&self.poly_coeffs, v)
    }

    /// `U_n` at natural-frame `x` without a domain check (NaN beyond the horizon).
    pub fn value(&self, x: f64) -> f64 {
        let v = self.scale * x;
        self.natural_jet(v, (1.0 - v) * (1.0 + v)).value
    }

    /// `U_n` at `coord` in the given frame.
    pub fn eval(&self, frame: FrameKind, coord: f64) -> Result<f64> {
        Ok(self.jet(frame, coord)?.value)
    }

    /// `dU_n/dx` or `dU_n/dx̂`, depending on the frame.
    pub fn eval_derivative(&self, frame: FrameKind, coord: f64) -> Result<f64> {
        Ok(self.jet(frame, coord)?.d1)
    }

    /// Value, first and second derivative with respect to the frame's coordinate.
    pub fn jet(&self, frame: FrameKind, coord: f64) -> Result<Jet> {
        Frame::new(&self.params, frame).check(coord)?;
        if self.params.is_limit() || frame == FrameKind::Natural {
            let v = self.scale * coord;
            return Ok(self.natural_jet(v, (1.0 - v) * (1.0 + v)));
        }
        let theta = self.params.omega_hat * coord;
        let (sin, cos) = theta.sin_cos();
        let nat = self.natural_jet(sin, cos * cos);
        let w = self.params.omega_hat;
        Ok(Jet {
            value: nat.value,
            d1: cos * nat.d1,
            d2: cos * cos * nat.d2 - w * sin * nat.d1,
        })
    }

    /// Natural-frame jet at scaled variable `v`; `c2 = 1 - v²` is passed in so
    /// the conformal route can supply `cos²` without cancellation.
    fn natural_jet(&self, v: f64, c2: f64) -> Jet {
        match self.envelope {
            Envelope::Gaussian => self.hermite_jet(v),
            Envelope::Jacobi { exponent } => self.jacobi_jet(v, c2, 2.0 * exponent),
        }
    }

    fn hermite_jet(&self, y: f64) -> Jet {
        let n = self.index.n;
        let table = crate::numkernel::hermite_reduced_table(n + 2, y);
        let g = (-0.5 * y * y).exp();
        let psi = |j: isize| if j < 0 { 0.0 } else { table[j as usize] * g };
        let nf = n as f64;
        let ni = n as isize;
        let d1 = (nf / 2.0).sqrt() * psi(ni - 1) - ((nf + 1.0) / 2.0).sqrt() * psi(ni + 1);
        let d2 = 0.5
            * ((nf * (nf - 1.0)).max(0.0).sqrt() * psi(ni - 2) - (2.0 * nf + 1.0) * psi(ni)
                + ((nf + 1.0) * (nf + 2.0)).sqrt() * psi(ni + 2));
        let s = self.scale;
        let a = self.prefactor;
        Jet { value: a * psi(ni), d1: a * s * d1, d2: a * s * s * d2 }
    }

    fn jacobi_jet(&self, u: f64, c2: f64, k: f64) -> Jet {
        let BasisIndex { n_s, s, .. } = self.index;
        let (alpha, beta) = self.jacobi_exponents(k);
        let t = u * u;
        let pp = alpha + beta;
        let nsf = n_s as f64;
        let p0 = jacobi_p_shifted(n_s, alpha, beta, t);
        let p1 = if n_s >= 1 {
            -(nsf + pp + 1.0) * jacobi_p_shifted(n_s - 1, alpha + 1.0, beta + 1.0, t)
        } else {
            0.0
        };
        let p2 = if n_s >= 2 {
            (nsf + pp + 1.0) * (nsf + pp + 2.0) * jacobi_p_shifted(n_s - 2, alpha + 2.0, beta + 2.0, t)
        } else {
            0.0
        };
        // Q(u) = u^s P(u²)
        let (q0, q1, q2) = if s == 0 {
            (p0, 2.0 * u * p1, 2.0 * p1 + 4.0 * t * p2)
        } else {
            (u * p0, p0 + 2.0 * t * p1, 6.0 * u * p1 + 4.0 * u * t * p2)
        };
        // E(u) = (1 - u²)^(k/2)
        let e0 = (0.5 * k * c2.ln()).exp();
        let e1 = -k * u * e0 / c2;
        let e2 = e0 * (-k / c2 + k * (k - 2.0) * t / (c2 * c2));
        let a = self.prefactor;
        let w = self.scale;
        Jet {
            value: a * e0 * q0,
            d1: a * w * (e1 * q0 + e0 * q1),
            d2: a * w * w * (e2 * q0 + 2.0 * e1 * q1 + e0 * q2),
        }
    }
}
