//! Coordinate-representation actions of the shift, ladder and energy
//! operators, evaluated pointwise from analytic eigenfunction jets.

use num_complex::Complex64;

use crate::eigenbasis::{EigenFunction, Jet};
use crate::error::{regime, Result};
use crate::geometry::{weight_mu, Frame, FrameKind, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftSign {
    Raise,
    Lower,
}

/// First-order operator `a(x) d/dx + b(x)` frozen at one point, with the
/// derivatives of its coefficients so it can act on a jet.
#[derive(Debug, Clone, Copy)]
struct FirstOrder {
    a: f64,
    da: f64,
    b: f64,
    db: f64,
}

impl FirstOrder {
    /// Value and first derivative of `L g`.
    fn on_jet(&self, g: Jet) -> (f64, f64) {
        let value = self.a * g.d1 + self.b * g.value;
        let d1 = self.da * g.d1 + self.a * g.d2 + self.db * g.value + self.b * g.d1;
        (value, d1)
    }

    fn on_value(&self, (value, d1): (f64, f64)) -> f64 {
        self.a * d1 + self.b * value
    }
}

/// `(A_(±) U_n)(x̂) = (ω̂ √(2k))⁻¹ [∓ cos(ω̂x̂) d/dx̂ + ω̂ sin(ω̂x̂) (k + n)] U_n(x̂)`.
pub fn shift_action_at(p: &ModelParams, sign: ShiftSign, f: &EigenFunction, xhat: f64) -> Result<f64> {
    let k = p.k.ok_or_else(|| regime("the differential shift operators need epsilon > 0"))?;
    let w = p.omega_hat;
    let jet = f.jet(FrameKind::Conformal, xhat)?;
    let (sin, cos) = (w * xhat).sin_cos();
    let d = match sign {
        ShiftSign::Raise => -cos * jet.d1,
        ShiftSign::Lower => cos * jet.d1,
    };
    Ok((d + w * sin * (k + f.n() as f64) * jet.value) / (w * (2.0 * k).sqrt()))
}

/// Shift action sampled on conformal-frame coordinates.
pub fn apply_shift_differential(
    p: &ModelParams,
    sign: ShiftSign,
    f: &EigenFunction,
    xhats: &[f64],
) -> Result<Vec<f64>> {
    xhats.iter().map(|&x| shift_action_at(p, sign, f, x)).collect()
}

/// Harmonic-oscillator ladder as differential operators at `ε = 0`:
/// `a = (2mω)^(-1/2) (d/dx + mωx)`, `a† = (2mω)^(-1/2) (-d/dx + mωx)`.
pub fn oscillator_ladder_at(p: &ModelParams, sign: ShiftSign, f: &EigenFunction, x: f64) -> Result<f64> {
    let mw = p.mass * p.omega;
    let jet = f.jet(FrameKind::Natural, x)?;
    let d = match sign {
        ShiftSign::Raise => -jet.d1,
        ShiftSign::Lower => jet.d1,
    };
    Ok((d + mw * x * jet.value) / (2.0 * mw).sqrt())
}

/// The pair `ã`, `ã†` in the conformal frame, with `P̂ = i d/dx̂`.
#[derive(Debug, Clone, Copy)]
pub struct TildeLadder {
    k: f64,
    w: f64,
}

impl TildeLadder {
    pub fn new(p: &ModelParams) -> Result<Self> {
        let k = p.k.ok_or_else(|| regime("ã, ã† need epsilon > 0"))?;
        Ok(TildeLadder { k, w: p.omega_hat })
    }

    fn scale(&self) -> f64 {
        (self.w * (2.0 * self.k).sqrt()).recip()
    }

    /// `c (± d/dx̂ + k ω̂ tan ω̂x̂)` where `-iP̂ = d/dx̂`.
    fn op(&self, sign: f64, xhat: f64) -> FirstOrder {
        let c = self.scale();
        let tan = (self.w * xhat).tan();
        let sec2 = 1.0 + tan * tan;
        FirstOrder { a: sign * c, da: 0.0, b: c * self.k * self.w * tan, db: c * self.k * self.w * self.w * sec2 }
    }

    fn lower(&self, xhat: f64) -> FirstOrder {
        self.op(1.0, xhat)
    }

    fn raise(&self, xhat: f64) -> FirstOrder {
        self.op(-1.0, xhat)
    }

    /// Multiplication by `ã† + ã = √(2k) tan ω̂x̂`.
    fn sum(&self, xhat: f64) -> FirstOrder {
        let tan = (self.w * xhat).tan();
        let s = (2.0 * self.k).sqrt();
        FirstOrder { a: 0.0, da: 0.0, b: s * tan, db: s * self.w * (1.0 + tan * tan) }
    }

    /// `(ã g)(x̂)` and `(ã† g)(x̂)`.
    pub fn apply(&self, sign: ShiftSign, g: Jet, xhat: f64) -> f64 {
        let op = match sign {
            ShiftSign::Lower => self.lower(xhat),
            ShiftSign::Raise => self.raise(xhat),
        };
        op.on_jet(g).0
    }

    /// `([ã, ã†] g, g, (ã† + ã)² g / 2k)` at one point.
    pub fn commutator_terms(&self, g: Jet, xhat: f64) -> (f64, f64, f64) {
        let (lo, up) = (self.lower(xhat), self.raise(xhat));
        let comm = lo.on_value(up.on_jet(g)) - up.on_value(lo.on_jet(g));
        let s = self.sum(xhat);
        let sq = s.on_value(s.on_jet(g));
        (comm, g.value, sq / (2.0 * self.k))
    }

    /// `(ã† ã g)(x̂)`.
    pub fn number_like(&self, g: Jet, xhat: f64) -> f64 {
        self.raise(xhat).on_value(self.lower(xhat).on_jet(g))
    }

    /// `X_ef g = (ω̂√(2k))⁻¹ (ã† + ã) g`.
    pub fn effective_position(&self, g: Jet, xhat: f64) -> f64 {
        self.scale() * self.sum(xhat).on_jet(g).0
    }

    /// `P̂ g = -i ω̂ √(k/2) (ã† - ã) g`, returned as the complex value.
    pub fn momentum(&self, g: Jet, xhat: f64) -> Complex64 {
        let diff = self.raise(xhat).on_jet(g).0 - self.lower(xhat).on_jet(g).0;
        Complex64::new(0.0, -self.w * (self.k / 2.0).sqrt() * diff)
    }
}

/// `(E² U)` from the differential form: `m² + P̂² + (m²/ε²) tan²(ω̂x̂)` in the
/// conformal frame, or `m² - d²/dx² + m²ω²x²` at `ε = 0`.
pub fn energy_square_action(p: &ModelParams, f: &EigenFunction, coord: f64) -> Result<f64> {
    let m2 = p.mass * p.mass;
    if p.is_limit() {
        let j = f.jet(FrameKind::Natural, coord)?;
        let mw = p.mass * p.omega;
        return Ok(m2 * j.value - j.d2 + mw * mw * coord * coord * j.value);
    }
    let j = f.jet(FrameKind::Conformal, coord)?;
    let tan = (p.omega_hat * coord).tan();
    Ok(m2 * j.value - j.d2 + p.coupling()? * tan * tan * j.value)
}

/// Left side of the radial equation minus `(E² - m²) U`, in either frame:
///
/// * natural: `-(1 - ω̂²x²) U'' + ω̂² x U' + (m²/ε²) ω̂²x² / (1 - ω̂²x²) U`
/// * conformal: `-U'' + (m²/ε²) tan²(ω̂x̂) U`
/// * `ε = 0`: `-U'' + m²ω²x² U`
///
/// Returns `(residual, (E² - m²) U)` so callers can normalize.
pub fn ode_residual_at(
    p: &ModelParams,
    frame: FrameKind,
    f: &EigenFunction,
    e2: f64,
    coord: f64,
) -> Result<(f64, f64)> {
    let rhs_scale = e2 - p.mass * p.mass;
    let frame = if p.is_limit() { FrameKind::Natural } else { frame };
    let j = f.jet(frame, coord)?;
    let lhs = if p.is_limit() {
        let mw = p.mass * p.omega;
        -j.d2 + mw * mw * coord * coord * j.value
    } else {
        let g = p.coupling()?;
        match frame {
            FrameKind::Natural => {
                let u = p.omega_hat * coord;
                let c2 = (1.0 - u) * (1.0 + u);
                -c2 * j.d2 + p.omega_hat * u * j.d1 + g * u * u / c2 * j.value
            }
            FrameKind::Conformal => {
                let tan = (p.omega_hat * coord).tan();
                -j.d2 + g * tan * tan * j.value
            }
        }
    };
    Ok((lhs - rhs_scale * j.value, rhs_scale * j.value))
}

/// General first-order operator `(D U)(x) = i [f(x) U'(x) + h(x) U(x)]`.
pub struct DiffOperator {
    pub frame: FrameKind,
    pub f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    /// `df/dx` in the same coordinate.
    pub df: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub h: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl DiffOperator {
    /// `P̂ = i d/dx̂` in the conformal frame.
    pub fn momentum() -> Self {
        DiffOperator { frame: FrameKind::Conformal, f: Box::new(|_| 1.0), df: Box::new(|_| 0.0), h: Box::new(|_| 0.0) }
    }

    pub fn apply(&self, g: Jet, coord: f64) -> Complex64 {
        Complex64::new(0.0, (self.f)(coord) * g.d1 + (self.h)(coord) * g.value)
    }

    /// `D† g = D g + i r g`, with `r` from [`adjoint_defect`].
    pub fn apply_adjoint(&self, p: &ModelParams, g: Jet, coord: f64) -> Result<Complex64> {
        let r = defect_at(p, self, coord)?;
        Ok(self.apply(g, coord) + Complex64::new(0.0, r * g.value))
    }
}

fn defect_at(p: &ModelParams, d: &DiffOperator, coord: f64) -> Result<f64> {
    Frame::new(p, d.frame).check(coord)?;
    // (μ f)'/μ = f' + f μ'/μ
    let log_mu_prime = match d.frame {
        FrameKind::Conformal => 0.0,
        FrameKind::Natural if p.is_limit() => 0.0,
        FrameKind::Natural => {
            weight_mu(p, coord)?;
            let w2 = p.omega_hat * p.omega_hat;
            w2 * coord / (1.0 - w2 * coord * coord)
        }
    };
    Ok((d.df)(coord) + (d.f)(coord) * log_mu_prime - 2.0 * (d.h)(coord))
}

/// The adjoint correction `D† - D = i [(μf)'/μ - 2h]`, returned as its
/// real coefficient `r` (so the correction is `i r`) at each coordinate.
/// `D` is self-adjoint exactly where `r` vanishes.
pub fn adjoint_defect(p: &ModelParams, d: &DiffOperator, coords: &[f64]) -> Result<Vec<f64>> {
    coords.iter().map(|&c| defect_at(p, d, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::shift_coefficients;

    fn cfg(e: f64) -> ModelParams {
        ModelParams::new(1.0, 1.0, e).unwrap()
    }

    fn interior(p: &ModelParams) -> Vec<f64> {
        let h = Frame::new(p, FrameKind::Conformal).half_width;
        (1..40).map(|i| h * (i as f64 / 20.0 - 1.0)).collect()
    }

    #[test]
    fn lowering_annihilates_ground_state() {
        let a = cfg(1.0);
        let u0 = EigenFunction::new(&a, 0).unwrap();
        let v = apply_shift_differential(&a, ShiftSign::Lower, &u0, &interior(&a)).unwrap();
        assert!(v.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn raising_ground_state() {
        let a = cfg(1.0);
        let u0 = EigenFunction::new(&a, 0).unwrap();
        let u1 = EigenFunction::new(&a, 1).unwrap();
        let c = shift_coefficients(&a, 0).unwrap().0;
        for x in interior(&a) {
            let lhs = shift_action_at(&a, ShiftSign::Raise, &u0, x).unwrap();
            assert!((lhs - c * u1.eval(FrameKind::Conformal, x).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn lowering_second_state_config_b() {
        let b = cfg(0.5);
        let u2 = EigenFunction::new(&b, 2).unwrap();
        let u1 = EigenFunction::new(&b, 1).unwrap();
        let c = shift_coefficients(&b, 2).unwrap().1;
        for x in interior(&b) {
            let lhs = shift_action_at(&b, ShiftSign::Lower, &u2, x).unwrap();
            assert!((lhs - c * u1.eval(FrameKind::Conformal, x).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn momentum_is_self_adjoint_and_cos_is_not() {
        let a = cfg(1.0);
        let xs = interior(&a);
        assert!(adjoint_defect(&a, &DiffOperator::momentum(), &xs).unwrap().iter().all(|r| *r == 0.0));
        let w = a.omega_hat;
        let d = DiffOperator {
            frame: FrameKind::Conformal,
            f: Box::new(move |x| (w * x).cos()),
            df: Box::new(move |x| -w * (w * x).sin()),
            h: Box::new(|_| 0.0),
        };
        let r = adjoint_defect(&a, &d, &xs).unwrap();
        for (x, r) in xs.iter().zip(r) {
            assert!((r + w * (w * x).sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn natural_frame_defect_uses_weight() {
        // f = 1, h = μ'/(2μ) is self-adjoint in L²(D, μ).
        let b = cfg(0.5);
        let w2 = b.omega_hat * b.omega_hat;
        let d = DiffOperator {
            frame: FrameKind::Natural,
            f: Box::new(|_| 1.0),
            df: Box::new(|_| 0.0),
            h: Box::new(move |x| 0.5 * w2 * x / (1.0 - w2 * x * x)),
        };
        let xs: Vec<f64> = (1..20).map(|i| (i as f64 / 10.0 - 1.0) * 1.9).collect();
        assert!(adjoint_defect(&b, &d, &xs).unwrap().iter().all(|r| r.abs() < 1e-15));
        assert!(adjoint_defect(&b, &d, &[2.0]).is_err());
    }

    #[test]
    fn tilde_ladder_identities() {
        let b = cfg(0.5);
        let t = TildeLadder::new(&b).unwrap();
        let k = b.k.unwrap();
        for n in 0..4 {
            let u = EigenFunction::new(&b, n).unwrap();
            let e2 = crate::spectrum::energy(&b, n).powi(2);
            for x in interior(&b) {
                let g = u.jet(FrameKind::Conformal, x).unwrap();
                let (comm, id, sq) = t.commutator_terms(g, x);
                assert!((comm - id - sq).abs() < 1e-9 * (1.0 + comm.abs()));
                let rebuilt = b.mass * b.mass * g.value
                    + 2.0 * k * b.omega_hat * b.omega_hat * (t.number_like(g, x) + 0.5 * g.value);
                assert!((rebuilt - e2 * g.value).abs() < 1e-9 * (1.0 + e2));
                let xef = (b.omega_hat * x).tan() / b.omega_hat * g.value;
                assert!((t.effective_position(g, x) - xef).abs() < 1e-12 * (1.0 + xef.abs()));
                let pm = t.momentum(g, x);
                assert!(pm.re == 0.0 && (pm.im - g.d1).abs() < 1e-12 * (1.0 + g.d1.abs()));
            }
        }
    }

    #[test]
    fn limit_ladder() {
        let c = cfg(0.0);
        let u0 = EigenFunction::new(&c, 0).unwrap();
        let u1 = EigenFunction::new(&c, 1).unwrap();
        for i in 0..20 {
            let x = i as f64 * 0.3 - 3.0;
            assert!(oscillator_ladder_at(&c, ShiftSign::Lower, &u0, x).unwrap().abs() < 1e-14);
            let r = oscillator_ladder_at(&c, ShiftSign::Raise, &u0, x).unwrap();
            assert!((r - u1.eval(FrameKind::Natural, x).unwrap()).abs() < 1e-14);
        }
        assert!(shift_action_at(&c, ShiftSign::Raise, &u0, 0.1).is_err());
        assert!(TildeLadder::new(&c).is_err());
    }
}
