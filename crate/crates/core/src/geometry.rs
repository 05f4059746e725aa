//! Metric family, horizon-bounded domain, weight function and the map
//! between the natural frame `(t, x)` and the conformal frame `(t, x̂)`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{domain, regime, usage, Result};
use crate::faults::{perturb, Fault};

/// Spectral regime of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `ε > 0`, `ε ≠ 1`.
    Generic,
    /// `ε = 1`, the anti-de Sitter oscillator.
    AntiDeSitter,
    /// `ε = 0`, the harmonic-oscillator limit.
    NrhoLimit,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Generic => "generic",
            Regime::AntiDeSitter => "anti_de_sitter",
            Regime::NrhoLimit => "nrho_limit",
        }
    }
}

/// Physical parameters `(m, ω, ε)` and the quantities derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub mass: f64,
    pub omega: f64,
    pub epsilon: f64,
    /// `ω̂ = ε ω`.
    pub omega_hat: f64,
    /// `λ = -ε²`.
    pub lambda: f64,
    /// Lowest weight `k > 1`, the positive root of `k (k - 1) = m² / (ε² ω̂²)`.
    /// Absent for `ε = 0`.
    pub k: Option<f64>,
    pub regime: Regime,
}

impl ModelParams {
    pub fn new(mass: f64, omega: f64, epsilon: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(domain("mass must be positive"));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(domain("omega must be positive"));
        }
        if !(epsilon >= 0.0) || !epsilon.is_finite() {
            return Err(domain("epsilon must be nonnegative"));
        }
        let omega_hat = epsilon * omega;
        let (k, regime) = if epsilon == 0.0 {
            (None, Regime::NrhoLimit)
        } else {
            let ratio = mass / (epsilon * omega_hat);
            let k = 0.5 * (1.0 + (1.0 + 4.0 * ratio * ratio).sqrt());
            let regime = if epsilon == 1.0 { Regime::AntiDeSitter } else { Regime::Generic };
            (Some(perturb(Fault::LowestWeight, k)), regime)
        };
        // `0.0 - ε²` keeps λ = +0 rather than -0 in the limit.
        Ok(ModelParams { mass, omega, epsilon, omega_hat, lambda: 0.0 - epsilon * epsilon, k, regime })
    }

    /// The lowest weight, or a regime error at `ε = 0`.
    pub fn k(&self) -> Result<f64> {
        self.k.ok_or_else(|| regime("the lowest weight k is undefined for epsilon = 0"))
    }

    pub fn is_limit(&self) -> bool {
        self.regime == Regime::NrhoLimit
    }

    /// `m² / ε²`, the strength of the `tan²` term. Only for `ε > 0`.
    pub fn coupling(&self) -> Result<f64> {
        if self.is_limit() {
            return Err(regime("coupling m^2/epsilon^2 is undefined for epsilon = 0"));
        }
        Ok(self.mass * self.mass / (self.epsilon * self.epsilon))
    }

    /// Half-width `x_e` of the natural-frame domain (`∞` for `ε = 0`).
    pub fn horizon(&self) -> f64 {
        if self.is_limit() {
            f64::INFINITY
        } else {
            self.omega_hat.recip()
        }
    }

    pub(crate) fn ensure_same(&self, other: &ModelParams) -> Result<()> {
        if self != other {
            return Err(usage("functions belong to different model parameters"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameKind {
    /// Coordinates `(t, x)` with weight `μ(x)`.
    Natural,
    /// Coordinates `(t, x̂)` in which the metric is conformally flat.
    Conformal,
}

/// A coordinate frame together with its symmetric open domain `(-x_e, x_e)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Frame {
    pub kind: FrameKind,
    pub half_width: f64,
}

impl Frame {
    pub fn new(p: &ModelParams, kind: FrameKind) -> Self {
        let half_width = match (p.is_limit(), kind) {
            (true, _) => f64::INFINITY,
            (false, FrameKind::Natural) => p.omega_hat.recip(),
            (false, FrameKind::Conformal) => FRAC_PI_2 / p.omega_hat,
        };
        Frame { kind, half_width }
    }

    pub fn bounds(&self) -> (f64, f64) {
        (-self.half_width, self.half_width)
    }

    pub fn contains(&self, coord: f64) -> bool {
        coord.is_finite() && coord.abs() < self.half_width
    }

    pub(crate) fn check(&self, coord: f64) -> Result<()> {
        if self.contains(coord) {
            Ok(())
        } else {
            Err(domain(format!(
                "coordinate {coord} is not inside the open domain (-{0}, {0})",
                self.half_width
            )))
        }
    }
}

/// `(g00, g11)` of the static metric at `coord` in the given frame.
pub fn metric_components(p: &ModelParams, frame: FrameKind, coord: f64) -> Result<(f64, f64)> {
    Frame::new(p, frame).check(coord)?;
    if frame == FrameKind::Conformal && !p.is_limit() {
        let tan = (p.omega_hat * coord).tan();
        let g00 = 1.0 + tan * tan / (p.epsilon * p.epsilon);
        return Ok((g00, -g00));
    }
    let w2x2 = p.omega * p.omega * coord * coord;
    let numer = 1.0 + (1.0 + p.lambda) * w2x2;
    let denom = 1.0 + p.lambda * w2x2;
    Ok((numer / denom, -numer / (denom * denom)))
}

/// Weight `μ(x) = (1 - ω̂² x²)^(-1/2)` of the natural-frame scalar product.
pub fn weight_mu(p: &ModelParams, x: f64) -> Result<f64> {
    Frame::new(p, FrameKind::Natural).check(x)?;
    if p.is_limit() {
        return Ok(1.0);
    }
    let u = p.omega_hat * x;
    Ok(((1.0 - u) * (1.0 + u)).sqrt().recip())
}

/// `x̂ = arcsin(ω̂ x) / ω̂`, with the integration constant fixed so `x = 0 ↔ x̂ = 0`.
pub fn to_conformal(p: &ModelParams, x: f64) -> Result<f64> {
    Frame::new(p, FrameKind::Natural).check(x)?;
    if p.is_limit() {
        return Ok(x);
    }
    Ok((p.omega_hat * x).asin() / p.omega_hat)
}

/// `x = sin(ω̂ x̂) / ω̂`.
pub fn from_conformal(p: &ModelParams, xhat: f64) -> Result<f64> {
    Frame::new(p, FrameKind::Conformal).check(xhat)?;
    if p.is_limit() {
        return Ok(xhat);
    }
    Ok((p.omega_hat * xhat).sin() / p.omega_hat)
}

/// Symmetric Pöschl-Teller potential `k (k - 1) ω̂² tan²(ω̂ x̂)`.
pub fn pt_potential(p: &ModelParams, xhat: f64) -> Result<f64> {
    let k = p.k()?;
    Frame::new(p, FrameKind::Conformal).check(xhat)?;
    let tan = (p.omega_hat * xhat).tan();
    Ok(k * (k - 1.0) * p.omega_hat * p.omega_hat * tan * tan)
}
