//! Named identity checks and their tolerance table.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::coefficients::{shift_coefficients, w_minus, w_plus};
use super::differential::{
    energy_square_action, ode_residual_at, oscillator_ladder_at, shift_action_at, DiffOperator,
    ShiftSign, TildeLadder,
};
use super::matrix::{build_matrix, commutator, OperatorLabel, OperatorMatrix};
use crate::eigenbasis::{basis, completeness_probe, relativistic_product, EigenFunction, GridSpec, InnerProduct};
use crate::error::{regime, usage, Error, Result};
use crate::geometry::{FrameKind, ModelParams};
use crate::numkernel::{make_jacobi_rule, make_legendre_rule, QuadratureRule};
use crate::spectrum::{energy, generic_energy, quantization_residual};

/// Truncation used by the identity suites unless overridden.
pub const DEFAULT_N_MAX: usize = 64;

/// Grid-based checks below this many points are rejected.
pub const MIN_GRID_POINTS: usize = 9;

macro_rules! identities {
    ($($variant:ident => $name:literal, $tol:expr, $needs_k:expr;)*) => {
        /// Every identity the engine knows how to check.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Identity {
            $($variant,)*
        }

        impl Identity {
            pub const ALL: &'static [Identity] = &[$(Identity::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Identity::$variant => $name,)*
                }
            }

            pub fn default_tolerance(self) -> f64 {
                match self {
                    $(Identity::$variant => $tol,)*
                }
            }

            /// Whether the identity is defined for `p` (some need a finite `k`).
            pub fn applies(self, p: &ModelParams) -> bool {
                let needs_k = match self {
                    $(Identity::$variant => $needs_k,)*
                };
                !needs_k || p.k.is_some()
            }
        }
    };
}

identities! {
    AdjointGap => "adjoint_gap", 1e-10, true;
    BoundaryDecay => "boundary_decay", 1.0, false;
    CanonicalCommutation => "canonical_commutation", 1e-10, true;
    Casimir => "casimir", 1e-11, true;
    CommutatorAA => "commutator_AA", 1e-11, false;
    CommutatorNA => "commutator_NA", 1e-11, false;
    Completeness => "completeness", 1.0, false;
    E2Crosscheck => "e2_crosscheck", 1e-8, false;
    E2Matrix => "e2_matrix", 1e-12, false;
    E2Regimes => "e2_regimes", 1e-12, true;
    FrameConsistency => "frame_consistency", 1e-11, true;
    HermiteLimit => "hermite_limit", 0.02, false;
    KgIdentity => "kg_identity", 1e-11, false;
    ModeProduct => "mode_product", 1e-10, false;
    NonUnitarity => "non_unitarity", 1e-12, true;
    NrhoLimitCoeffs => "nrho_limit_coeffs", 0.02, false;
    NrhoLimitOps => "nrho_limit_ops", 1e-9, false;
    NrhoLimitWeights => "nrho_limit_weights", 0.02, false;
    OdeResidual => "ode_residual", 1e-8, false;
    Orthonormality => "orthonormality", 1e-10, false;
    ParamsConsistency => "params_consistency", 1e-12, true;
    PhaseConvention => "phase_convention", 0.0, false;
    RepresentationConsistency => "representation_consistency", 1e-10, false;
    ShiftAction => "shift_action", 1e-8, false;
    ShiftMatrix => "shift_matrix", 1e-12, true;
    SimilarityK => "similarity_K", 1e-12, true;
    SpectrumLimit => "spectrum_limit", 0.02, false;
    TildeLadder => "tilde_ladder", 1e-8, true;
}

impl Identity {
    pub fn valid_names() -> String {
        Self::ALL.iter().map(|i| i.name()).collect::<Vec<_>>().join(", ")
    }

    /// Identities defined for `p`, sorted by name.
    pub fn all_for(p: &ModelParams) -> Vec<Identity> {
        let mut ids: Vec<Identity> = Self::ALL.iter().copied().filter(|i| i.applies(p)).collect();
        ids.sort_by_key(|i| i.name());
        ids
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|i| i.name() == s)
            .ok_or_else(|| usage(format!("unknown identity `{s}`; valid identities: {}", Self::valid_names())))
    }
}

/// Identity name to tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    table: BTreeMap<Identity, f64>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { table: Identity::ALL.iter().map(|&i| (i, i.default_tolerance())).collect() }
    }
}

impl Tolerances {
    pub fn get(&self, id: Identity) -> f64 {
        self.table.get(&id).copied().unwrap_or_else(|| id.default_tolerance())
    }

    pub fn set(&mut self, id: Identity, tol: f64) -> Result<()> {
        if !(tol >= 0.0) || !tol.is_finite() {
            return Err(usage(format!("tolerance for {id} must be a finite nonnegative number, got {tol}")));
        }
        self.table.insert(id, tol);
        Ok(())
    }

    /// Applies one `NAME=VAL` override.
    pub fn apply_override(&mut self, spec: &str) -> Result<()> {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| usage(format!("tolerance override `{spec}` is not of the form NAME=VAL")))?;
        let id: Identity = name.trim().parse()?;
        let tol: f64 = value
            .trim()
            .parse()
            .map_err(|_| usage(format!("tolerance override `{spec}`: `{value}` is not a number")))?;
        self.set(id, tol)
    }

    /// Applies a comma-separated list of `NAME=VAL` overrides.
    pub fn apply_list(&mut self, list: &str) -> Result<()> {
        list.split(',').map(str::trim).filter(|s| !s.is_empty()).try_for_each(|s| self.apply_override(s))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Identity, f64)> + '_ {
        self.table.iter().map(|(&i, &t)| (i, t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    pub scope: String,
    pub verdict: Verdict,
    /// A representative measured quantity, where one is meaningful.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured: Option<f64>,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, deviation: f64, tolerance: f64, scope: impl Into<String>) -> Self {
        // NaN compares false, so a broken computation fails.
        let verdict = if deviation <= tolerance { Verdict::Pass } else { Verdict::Fail };
        VerificationReport {
            identity: identity.into(),
            max_abs_deviation: deviation,
            tolerance,
            scope: scope.into(),
            verdict,
            measured: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Truncation, grid and tolerances shared by a suite run.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub grid_points: usize,
    pub tolerances: Tolerances,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { n_max: DEFAULT_N_MAX, grid_points: GridSpec::DEFAULT_POINTS, tolerances: Tolerances::default() }
    }
}

struct Outcome {
    deviation: f64,
    scope: String,
    measured: Option<f64>,
}

impl Outcome {
    fn new(deviation: f64, scope: impl Into<String>) -> Self {
        Outcome { deviation, scope: scope.into(), measured: None }
    }

    fn measured(self, value: f64) -> Self {
        Outcome { measured: Some(value), ..self }
    }
}

/// Maximum that propagates NaN.
fn sup(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |acc: f64, v| if acc.is_nan() || v.is_nan() { f64::NAN } else { acc.max(v) })
}

fn diag(dim: usize, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_fn(dim, |n, _| f(n as f64)))
}

fn interior(n_max: usize) -> usize {
    n_max.saturating_sub(2)
}

fn limit_model(p: &ModelParams) -> Result<ModelParams> {
    ModelParams::new(p.mass, p.omega, 0.0)
}

/// Convergence probe points for the `ε → 0` limits.
const PROBE: (f64, f64) = (0.1, 0.01);

/// `max_i err_i(ε₂) / err_i(ε₁)` over the probe pair; `err` gets the model at each `ε`.
fn convergence_ratio(
    p: &ModelParams,
    mut err: impl FnMut(&ModelParams) -> Result<Vec<f64>>,
) -> Result<(f64, f64)> {
    let coarse = err(&ModelParams::new(p.mass, p.omega, PROBE.0)?)?;
    let fine = err(&ModelParams::new(p.mass, p.omega, PROBE.1)?)?;
    let ratio = sup(coarse.iter().zip(&fine).map(|(c, f)| f / c));
    Ok((ratio, sup(coarse)))
}

fn grid(p: &ModelParams, frame: FrameKind, opts: &VerifyOptions, n_top: usize) -> Vec<f64> {
    GridSpec::new(p, frame, opts.grid_points, n_top).coords()
}

/// `∫ h(x̂) dx̂` over the conformal domain using a Gauss-Jacobi rule in
/// `u = sin(ω̂x̂)`. Exact when `h(x̂(u)) (1 - u²)^(-1/2)` is the rule weight
/// times a polynomial of low enough degree.
fn conformal_integral(p: &ModelParams, rule: &QuadratureRule, h: impl Fn(f64) -> f64) -> f64 {
    let w = p.omega_hat;
    let alpha = rule.jacobi_exponent.unwrap_or(0.0);
    rule.integrate(|u| {
        let c2 = (1.0 - u) * (1.0 + u);
        h(u.asin() / w) / (w * c2.powf(alpha + 0.5))
    })
}

/// Runs one identity check.
pub fn verify_identity(p: &ModelParams, id: Identity, opts: &VerifyOptions) -> Result<VerificationReport> {
    if !id.applies(p) {
        return Err(regime(format!("identity {id} needs epsilon > 0")));
    }
    if opts.grid_points < MIN_GRID_POINTS {
        return Err(usage(format!("grid needs at least {MIN_GRID_POINTS} points, got {}", opts.grid_points)));
    }
    let out = match id {
        Identity::AdjointGap => adjoint_gap(p, opts)?,
        Identity::BoundaryDecay => boundary_decay(p, opts)?,
        Identity::CanonicalCommutation => canonical_commutation(p, opts)?,
        Identity::Casimir => casimir(p, opts)?,
        Identity::CommutatorAA => commutator_aa(p, opts)?,
        Identity::CommutatorNA => commutator_na(p, opts)?,
        Identity::Completeness => completeness(p, opts)?,
        Identity::E2Crosscheck => e2_crosscheck(p, opts)?,
        Identity::E2Matrix => e2_matrix(p, opts)?,
        Identity::E2Regimes => e2_regimes(p)?,
        Identity::FrameConsistency => frame_consistency(p, opts)?,
        Identity::HermiteLimit => hermite_limit(p)?,
        Identity::KgIdentity => kg_identity(p, opts)?,
        Identity::ModeProduct => mode_product(p, opts)?,
        Identity::NonUnitarity => non_unitarity(p, opts)?,
        Identity::NrhoLimitCoeffs => nrho_limit_coeffs(p)?,
        Identity::NrhoLimitOps => nrho_limit_ops(p, opts)?,
        Identity::NrhoLimitWeights => nrho_limit_weights(p)?,
        Identity::OdeResidual => ode_residual(p, opts)?,
        Identity::Orthonormality => orthonormality(p, opts)?,
        Identity::ParamsConsistency => params_consistency(p)?,
        Identity::PhaseConvention => phase_convention(p)?,
        Identity::RepresentationConsistency => representation_consistency(p, opts)?,
        Identity::ShiftAction => shift_action(p, opts)?,
        Identity::ShiftMatrix => shift_matrix(p, opts)?,
        Identity::SimilarityK => similarity_k(p, opts)?,
        Identity::SpectrumLimit => spectrum_limit(p)?,
        Identity::TildeLadder => tilde_ladder(p, opts)?,
    };
    let mut report = VerificationReport::new(id.name(), out.deviation, opts.tolerances.get(id), out.scope);
    report.measured = out.measured;
    Ok(report)
}

/// Runs `ids` (duplicates removed) and returns the reports sorted by identity name.
pub fn run_suite(p: &ModelParams, ids: &[Identity], opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    let mut ids = ids.to_vec();
    ids.sort_by_key(|i| i.name());
    ids.dedup();
    ids.into_iter().map(|id| verify_identity(p, id, opts)).collect()
}

fn orthonormality(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let fs = basis(p, opts.n_max)?;
    let g = InnerProduct::for_basis(p, opts.n_max)?.gram(&fs)?;
    let dim = fs.len();
    let dev = sup((0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).map(|(i, j)| {
        let want = if i == j { 1.0 } else { 0.0 };
        (g[(i, j)] - want).abs()
    }));
    Ok(Outcome::new(dev, format!("Gram matrix of U_0..U_{}", opts.n_max)))
}

/// Gram matrix from conformal-frame values and a Gauss-Legendre rule in `x̂`,
/// compared with the natural-frame Gauss-Jacobi Gram matrix.
fn frame_consistency(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let fs = basis(p, opts.n_max)?;
    let natural = InnerProduct::for_basis(p, opts.n_max)?.gram(&fs)?;
    let rule = make_legendre_rule(2 * opts.n_max + 320)?;
    let half = std::f64::consts::FRAC_PI_2 / p.omega_hat;
    let table = fs
        .iter()
        .map(|f| rule.nodes.iter().map(|&t| f.eval(FrameKind::Conformal, half * t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut dev: f64 = 0.0;
    for i in 0..fs.len() {
        for j in i..fs.len() {
            let g: f64 =
                half * rule.weights.iter().zip(table[i].iter().zip(&table[j])).map(|(w, (a, b))| w * a * b).sum::<f64>();
            dev = sup([dev, (g - natural[(i, j)]).abs()]);
        }
    }
    Ok(Outcome::new(dev, format!("Gram matrices of U_0..U_{} in both frames", opts.n_max)))
}

/// `max_n |U_n(edge)| / max_grid |U_n|`; below 1 means the functions fall off towards the horizon.
fn boundary_decay(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let xs = grid(p, FrameKind::Natural, opts, opts.n_max);
    let mut worst: f64 = 0.0;
    for f in basis(p, opts.n_max)? {
        let vals: Vec<f64> = xs.iter().map(|&x| f.value(x).abs()).collect();
        let peak = sup(vals.iter().copied());
        let edge = vals[0].max(vals[vals.len() - 1]);
        worst = sup([worst, edge / peak]);
    }
    Ok(Outcome::new(worst, format!("outermost of {} grid points, n <= {}", opts.grid_points, opts.n_max)))
}

fn small(n_max: usize, cap: usize) -> usize {
    n_max.min(cap)
}

fn ode_residual(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let top = small(opts.n_max, 8);
    let frames: &[FrameKind] =
        if p.is_limit() { &[FrameKind::Natural] } else { &[FrameKind::Natural, FrameKind::Conformal] };
    let mut dev: f64 = 0.0;
    for &frame in frames {
        let xs = grid(p, frame, opts, opts.n_max);
        for n in 0..=top {
            let f = EigenFunction::new(p, n)?;
            let e2 = energy(p, n).powi(2);
            let (mut res, mut scale) = (0.0_f64, 0.0_f64);
            for &x in &xs {
                let (r, s) = ode_residual_at(p, frame, &f, e2, x)?;
                res = sup([res, r.abs()]);
                scale = scale.max(s.abs());
            }
            dev = sup([dev, res / scale]);
        }
    }
    Ok(Outcome::new(dev, format!("relative, n <= {top}, {} frame(s)", frames.len())))
}

fn e2_crosscheck(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let top = small(opts.n_max, 8);
    let frame = if p.is_limit() { FrameKind::Natural } else { FrameKind::Conformal };
    let xs = grid(p, frame, opts, opts.n_max);
    let mut dev: f64 = 0.0;
    for n in 0..=top {
        let f = EigenFunction::new(p, n)?;
        let e2 = energy(p, n).powi(2);
        let (mut res, mut scale) = (0.0_f64, 0.0_f64);
        for &x in &xs {
            let u = f.eval(frame, x)?;
            res = sup([res, (energy_square_action(p, &f, x)? - e2 * u).abs()]);
            scale = scale.max((e2 * u).abs());
        }
        dev = sup([dev, res / scale]);
    }
    Ok(Outcome::new(dev, format!("relative, differential form vs E_n^2 U_n, n <= {top}")))
}

fn e2_matrix(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let top = opts.n_max.max(100);
    let m = build_matrix(p, OperatorLabel::E2, top)?;
    let dev = sup((0..=top).map(|n| {
        let e2 = energy(p, n).powi(2);
        (m.get(n, n) - e2).abs() / e2
    }));
    let off = if m.band == (0, 0) { 0.0 } else { f64::INFINITY };
    Ok(Outcome::new(sup([dev, off]), format!("relative, diagonal n <= {top}")))
}

fn e2_regimes(p: &ModelParams) -> Result<Outcome> {
    let k = p.k()?;
    let mut dev: f64 = 0.0;
    for n in 0..=100 {
        let e = energy(p, n);
        dev = sup([dev, quantization_residual(p, n)?.abs() / (e * e)]);
        if p.epsilon == 1.0 {
            dev = sup([dev, (generic_energy(p.mass, p.omega_hat, k, n as f64) - e).abs() / e]);
        }
    }
    Ok(Outcome::new(dev, "relative, n <= 100"))
}

fn params_consistency(p: &ModelParams) -> Result<Outcome> {
    let k = p.k()?;
    let m2 = p.mass * p.mass;
    let casimir = k * (k - 1.0) * p.epsilon * p.epsilon * p.omega_hat * p.omega_hat;
    let dev = sup([
        (casimir - m2).abs() / m2,
        (p.omega_hat - p.epsilon * p.omega).abs(),
        (p.lambda + p.epsilon * p.epsilon).abs(),
    ]);
    Ok(Outcome::new(dev, "k(k-1) eps^2 omega_hat^2 = m^2, relative").measured(k))
}

fn representation_consistency(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let top = small(opts.n_max, 8);
    let xs = grid(p, FrameKind::Natural, opts, opts.n_max);
    let mut dev: f64 = 0.0;
    for n in 0..=top {
        let f = EigenFunction::new(p, n)?;
        let scale = sup(xs.iter().map(|&x| f.value(x).abs()));
        let diff = sup(xs.iter().map(|&x| (f.eval_monomial(x) - f.value(x)).abs()));
        dev = sup([dev, diff / scale]);
    }
    Ok(Outcome::new(dev, format!("relative, monomial vs recurrence, n <= {top}")))
}

fn phase_convention(p: &ModelParams) -> Result<Outcome> {
    let q = limit_model(p)?;
    let mismatches = (0..=10)
        .map(|n| {
            let lead = |m: &ModelParams| EigenFunction::new(m, n).map(|f| f.poly_coeffs[n].signum());
            Ok(if lead(p)? == lead(&q)? { 0.0 } else { 1.0 })
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(Outcome::new(mismatches.iter().sum(), "sign of leading coefficient vs epsilon = 0, n <= 10"))
}

fn hermite_limit(p: &ModelParams) -> Result<Outcome> {
    let q = limit_model(p)?;
    let reach = 3.0 / (p.mass * p.omega).sqrt();
    let probe = |e: &ModelParams| -> Result<Vec<f64>> {
        let half = reach.min(0.9 * e.horizon());
        let xs: Vec<f64> = (0..=120).map(|i| half * (i as f64 / 60.0 - 1.0)).collect();
        (0..=6)
            .map(|n| {
                let (f, g) = (EigenFunction::new(e, n)?, EigenFunction::new(&q, n)?);
                Ok(sup(xs.iter().map(|&x| (f.value(x) - g.value(x)).abs())))
            })
            .collect()
    };
    let (ratio, coarse) = convergence_ratio(p, probe)?;
    Ok(Outcome::new(ratio, "error ratio eps = 0.01 vs 0.1, n <= 6, |x| <= 3/sqrt(m omega)").measured(coarse))
}

/// Projector error ratios for `N = 8, 24, 48`. Errors already at the
/// round-off floor count as converged.
fn completeness(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    const FLOOR: f64 = 1e-10;
    let terms = [8, 24, 48];
    let xs = grid(p, FrameKind::Natural, opts, *terms.last().unwrap());
    let errors = match p.k {
        Some(k) => {
            let w = p.omega_hat;
            let f = move |x: f64| ((1.0 - w * x) * (1.0 + w * x)).powf(0.5 * (k + 1.0));
            terms.iter().map(|&n| completeness_probe(p, n, f, &xs)).collect::<Result<Vec<_>>>()?
        }
        None => {
            let s = (p.mass * p.omega).sqrt();
            let f = move |x: f64| {
                let y = s * x;
                (-0.5 * y * y).exp() / (1.0 + y * y)
            };
            terms.iter().map(|&n| completeness_probe(p, n, f, &xs)).collect::<Result<Vec<_>>>()?
        }
    };
    let ratio = sup(errors.windows(2).map(|w| if w[0] <= FLOOR && w[1] <= FLOOR { 0.0 } else { w[1] / w[0] }));
    Ok(Outcome::new(ratio, "largest error ratio between N = 8, 24, 48").measured(errors[2]))
}

fn shift_action(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let fs = basis(p, opts.n_max)?;
    let limit = p.is_limit();
    let frame = if limit { FrameKind::Natural } else { FrameKind::Conformal };
    let xs = grid(p, frame, opts, opts.n_max);
    let act = |sign, f: &EigenFunction, x| {
        if limit {
            oscillator_ladder_at(p, sign, f, x)
        } else {
            shift_action_at(p, sign, f, x)
        }
    };
    let coeffs = |n: usize| -> Result<(f64, f64)> {
        if limit {
            Ok(((n as f64 + 1.0).sqrt(), (n as f64).sqrt()))
        } else {
            shift_coefficients(p, n)
        }
    };
    let mut dev: f64 = 0.0;
    for &x in &xs {
        dev = sup([dev, act(ShiftSign::Lower, &fs[0], x)?.abs()]);
    }
    for n in 0..opts.n_max {
        let cp = coeffs(n)?.0;
        let cm = coeffs(n + 1)?.1;
        for &x in &xs {
            let (lo, hi) = (fs[n].eval(frame, x)?, fs[n + 1].eval(frame, x)?);
            dev = sup([dev, (act(ShiftSign::Raise, &fs[n], x)? - cp * hi).abs()]);
            dev = sup([dev, (act(ShiftSign::Lower, &fs[n + 1], x)? - cm * lo).abs()]);
        }
    }
    Ok(Outcome::new(dev, format!("sup over {} grid points, n <= {}", opts.grid_points, opts.n_max)))
}

fn shift_matrix(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let ap = build_matrix(p, OperatorLabel::APlus, opts.n_max)?;
    let am = build_matrix(p, OperatorLabel::AMinus, opts.n_max)?;
    let mut dev: f64 = 0.0;
    for n in 0..opts.n_max {
        dev = sup([dev, (ap.get(n + 1, n) - shift_coefficients(p, n)?.0).abs()]);
        dev = sup([dev, (am.get(n, n + 1) - shift_coefficients(p, n + 1)?.1).abs()]);
    }
    Ok(Outcome::new(dev, format!("matrix entries vs C_n, n <= {}", opts.n_max)))
}

fn ladder(p: &ModelParams, n_max: usize) -> Result<(OperatorMatrix, OperatorMatrix, OperatorMatrix)> {
    Ok((
        build_matrix(p, OperatorLabel::APlus, n_max)?,
        build_matrix(p, OperatorLabel::AMinus, n_max)?,
        build_matrix(p, OperatorLabel::N, n_max)?,
    ))
}

fn interior_scope(n_max: usize) -> String {
    format!("interior block n <= {}", interior(n_max))
}

fn commutator_aa(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let (ap, am, _) = ladder(p, opts.n_max)?;
    let c = commutator(&am, &ap)?;
    let inv_k = p.k.map_or(0.0, f64::recip);
    let want = diag(c.dim, |n| 1.0 + n * inv_k);
    Ok(Outcome::new(c.max_abs_diff_within(&want, interior(opts.n_max)), interior_scope(opts.n_max)))
}

fn commutator_na(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let (ap, am, n) = ladder(p, opts.n_max)?;
    let up = commutator(&n, &ap)?.max_abs_diff_within(&ap.entries, interior(opts.n_max));
    let down = commutator(&n, &am)?.max_abs_diff_within(&(-&am.entries), interior(opts.n_max));
    Ok(Outcome::new(sup([up, down]), interior_scope(opts.n_max)))
}

fn kg_identity(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let kg = build_matrix(p, OperatorLabel::KG, opts.n_max)?;
    let want = match p.k {
        Some(k) => diag(kg.dim, |n| n * (n + 2.0 * k - 1.0)),
        None => diag(kg.dim, |n| n),
    };
    Ok(Outcome::new(kg.max_abs_diff_within(&want, interior(opts.n_max)), interior_scope(opts.n_max)))
}

fn casimir(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let k = p.k()?;
    let kp = build_matrix(p, OperatorLabel::KPlus, opts.n_max)?;
    let km = build_matrix(p, OperatorLabel::KMinus, opts.n_max)?;
    let k3 = build_matrix(p, OperatorLabel::K3, opts.n_max)?;
    let c = &k3.entries * &k3.entries - 0.5 * (&kp.entries * &km.entries + &km.entries * &kp.entries);
    let c = OperatorMatrix::new("casimir", c);
    let top = interior(opts.n_max);
    let dev = c.max_abs_diff_within(&diag(c.dim, |_| k * (k - 1.0)), top);
    let mean = (0..=top.min(c.dim - 1)).map(|n| c.get(n, n)).sum::<f64>() / (top.min(c.dim - 1) + 1) as f64;
    Ok(Outcome::new(dev, interior_scope(opts.n_max)).measured(mean))
}

fn similarity_k(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let k = p.k()?;
    let kp = build_matrix(p, OperatorLabel::KPlus, opts.n_max)?;
    let ap = build_matrix(p, OperatorLabel::APlus, opts.n_max)?;
    let adag = build_matrix(p, OperatorLabel::ADag, opts.n_max)?;
    let dim = kp.dim;
    let s = (2.0 * k).sqrt() * diag(dim, |n| (n + k).sqrt()) * &ap.entries * diag(dim, |n| (n + k).sqrt().recip());
    let t = &adag.entries * diag(dim, |n| (n + 2.0 * k).sqrt());
    let top = interior(opts.n_max);
    Ok(Outcome::new(sup([kp.max_abs_diff_within(&s, top), kp.max_abs_diff_within(&t, top)]), interior_scope(opts.n_max)))
}

fn non_unitarity(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let k = p.k()?;
    let (ap, am, _) = ladder(p, opts.n_max)?;
    let kp = build_matrix(p, OperatorLabel::KPlus, opts.n_max)?;
    let km = build_matrix(p, OperatorLabel::KMinus, opts.n_max)?;
    let mut dev = sup((0..opts.n_max).map(|n| {
        let nf = n as f64;
        (ap.get(n + 1, n) / am.get(n, n + 1) - (k + nf) / (k + nf + 1.0)).abs()
    }));
    // K₊ᵀ = K₋ must hold exactly, not merely to tolerance.
    if kp.entries.transpose() != km.entries {
        dev = f64::INFINITY;
    }
    Ok(Outcome::new(dev, format!("A_plus/A_minus^T ratio and K_plus^T = K_minus, n <= {}", opts.n_max)))
}

fn tilde_ladder(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let t = TildeLadder::new(p)?;
    let k = p.k()?;
    let w = p.omega_hat;
    let top = small(opts.n_max, 5);
    let xs = grid(p, FrameKind::Conformal, opts, opts.n_max);
    let m2 = p.mass * p.mass;
    let mut dev: f64 = 0.0;
    for n in 0..=top {
        let f = EigenFunction::new(p, n)?;
        let e2 = energy(p, n).powi(2);
        let jets = xs.iter().map(|&x| f.jet(FrameKind::Conformal, x)).collect::<Result<Vec<_>>>()?;
        let peak = sup(jets.iter().map(|j| j.value.abs()));
        for (&x, &g) in xs.iter().zip(&jets) {
            let (comm, id, sq) = t.commutator_terms(g, x);
            dev = sup([dev, (comm - id - sq).abs() / (1.0 + id.abs() + sq.abs())]);
            let rebuilt = m2 * g.value + 2.0 * k * w * w * (t.number_like(g, x) + 0.5 * g.value);
            dev = sup([dev, (rebuilt - e2 * g.value).abs() / (e2 * peak)]);
            let xef = (w * x).tan() / w * g.value;
            dev = sup([dev, (t.effective_position(g, x) - xef).abs() / (1.0 + xef.abs())]);
        }
    }
    Ok(Outcome::new(dev, format!("commutator, E^2 and X_ef pointwise, n <= {top}")))
}

fn canonical_commutation(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let k = p.k()?;
    let top = small(opts.n_max, 4);
    let rule = make_jacobi_rule(k - 0.5, 48)?;
    let fs = basis(p, top)?;
    let mut dev: f64 = 0.0;
    for (i, u) in fs.iter().enumerate() {
        for (j, v) in fs.iter().enumerate() {
            // [P̂, X̂] V = i (V + x̂ V') - i x̂ V'
            let value = conformal_integral(p, &rule, |x| {
                let (a, b) = match (u.jet(FrameKind::Conformal, x), v.jet(FrameKind::Conformal, x)) {
                    (Ok(a), Ok(b)) => (a, b),
                    _ => return f64::NAN,
                };
                let px = Complex64::new(0.0, b.value + x * b.d1);
                let xp = Complex64::new(0.0, x * b.d1);
                (a.value * (px - xp)).im
            });
            let want = if i == j { 1.0 } else { 0.0 };
            dev = sup([dev, (value - want).abs()]);
        }
    }
    Ok(Outcome::new(dev, format!("<U_i, [P, X] U_j> = i delta_ij, i, j <= {top}")))
}

/// `<U_{n+1}, A₊U_n> - <A₋U_{n+1}, U_n> = C⁺_n - C⁻_{n+1}`, and the boundary
/// term of `P̂` vanishing on basis pairs.
fn adjoint_gap(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let k = p.k()?;
    let top = small(opts.n_max, 5);
    let exact = make_jacobi_rule(k - 0.5, 48)?;
    let shifted = make_jacobi_rule(k - 1.0, 48)?;
    let fs = basis(p, top)?;
    let jet = |f: &EigenFunction, x| f.jet(FrameKind::Conformal, x).map_or(f64::NAN, |j| j.value);
    let act = |s, f: &EigenFunction, x| shift_action_at(p, s, f, x).unwrap_or(f64::NAN);
    let mut dev: f64 = 0.0;
    for n in 0..top {
        let (u, v) = (&fs[n], &fs[n + 1]);
        let lhs = conformal_integral(p, &exact, |x| jet(v, x) * act(ShiftSign::Raise, u, x));
        let rhs = conformal_integral(p, &exact, |x| act(ShiftSign::Lower, v, x) * jet(u, x));
        let gap = shift_coefficients(p, n)?.0 - shift_coefficients(p, n + 1)?.1;
        dev = sup([dev, (lhs - rhs - gap).abs()]);
    }
    let momentum = DiffOperator::momentum();
    for u in &fs {
        for v in &fs {
            let both = conformal_integral(p, &shifted, |x| {
                let (a, b) = match (u.jet(FrameKind::Conformal, x), v.jet(FrameKind::Conformal, x)) {
                    (Ok(a), Ok(b)) => (a, b),
                    _ => return f64::NAN,
                };
                // <U, P V> - <P U, V> for real U, V
                (a.value * momentum.apply(b, x) + momentum.apply(a, x) * b.value).im
            });
            dev = sup([dev, both.abs()]);
        }
    }
    Ok(Outcome::new(dev, format!("shift pairs n < {top}, momentum pairs n <= {top}")))
}

fn nrho_limit_coeffs(p: &ModelParams) -> Result<Outcome> {
    let (ratio, coarse) = convergence_ratio(p, |e| {
        let mut errs = Vec::new();
        for n in 0..=6 {
            let (plus, minus) = shift_coefficients(e, n)?;
            errs.push((plus - (n as f64 + 1.0).sqrt()).abs());
            if n > 0 {
                errs.push((minus - (n as f64).sqrt()).abs());
            }
        }
        Ok(errs)
    })?;
    Ok(Outcome::new(ratio, "error ratio eps = 0.01 vs 0.1, n <= 6").measured(coarse))
}

fn nrho_limit_weights(p: &ModelParams) -> Result<Outcome> {
    let (ratio, coarse) = convergence_ratio(p, |e| {
        (0..=6).map(|n| Ok(sup([(w_plus(e, n)? - 1.0).abs(), (w_minus(e, n)? - 1.0).abs()]))).collect()
    })?;
    Ok(Outcome::new(ratio, "error ratio eps = 0.01 vs 0.1, n <= 6").measured(coarse))
}

fn spectrum_limit(p: &ModelParams) -> Result<Outcome> {
    let q = limit_model(p)?;
    let (ratio, coarse) =
        convergence_ratio(p, |e| Ok((0..=6).map(|n| (energy(e, n) - energy(&q, n)).abs()).collect()))?;
    Ok(Outcome::new(ratio, "error ratio eps = 0.01 vs 0.1, n <= 6").measured(coarse))
}

/// At `ε = 0`: ladder matrices equal `a`, `a†`, the Klein-Gordon matrix equals
/// `N`, and the differential `a`, `a†`, `X`, `P` act as in the harmonic oscillator.
fn nrho_limit_ops(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let q = limit_model(p)?;
    let n_max = opts.n_max;
    let get = |l| build_matrix(&q, l, n_max);
    let mut dev = sup([
        get(OperatorLabel::APlus)?.max_abs_diff_within(&get(OperatorLabel::ADag)?.entries, n_max),
        get(OperatorLabel::AMinus)?.max_abs_diff_within(&get(OperatorLabel::A)?.entries, n_max),
        get(OperatorLabel::KG)?.max_abs_diff_within(&get(OperatorLabel::N)?.entries, n_max),
    ]);
    let top = small(n_max, 6);
    let fs = basis(&q, top + 2)?;
    let xs = grid(&q, FrameKind::Natural, opts, top + 2);
    let mw = q.mass * q.omega;
    for &x in &xs {
        dev = sup([dev, oscillator_ladder_at(&q, ShiftSign::Lower, &fs[0], x)?.abs()]);
        for n in 0..=top {
            let raised = oscillator_ladder_at(&q, ShiftSign::Raise, &fs[n], x)?;
            dev = sup([dev, (raised - (n as f64 + 1.0).sqrt() * fs[n + 1].value(x)).abs()]);
        }
        for n in 0..2 {
            let up = (n as f64 + 1.0).sqrt() * fs[n + 1].value(x);
            let down = if n > 0 { (n as f64).sqrt() * fs[n - 1].value(x) } else { 0.0 };
            let jet = fs[n].jet(FrameKind::Natural, x)?;
            let xu = (up + down) / (2.0 * mw).sqrt();
            dev = sup([dev, (xu - x * jet.value).abs()]);
            // P = -i √(mω/2)(a† - a) against i d/dx
            let pu = -(mw / 2.0).sqrt() * (up - down);
            dev = sup([dev, (pu - jet.d1).abs()]);
        }
    }
    Ok(Outcome::new(dev, format!("epsilon = 0 matrices n <= {n_max}, differential ladder n <= {top}")))
}

fn mode_product(p: &ModelParams, opts: &VerifyOptions) -> Result<Outcome> {
    let top = small(opts.n_max, 4);
    let mut dev: f64 = 0.0;
    for a in 0..=top {
        for b in 0..=top {
            let want = if a == b { 1.0 } else { 0.0 };
            dev = sup([dev, (relativistic_product(p, a, b, 0.7)? - want).norm()]);
        }
    }
    Ok(Outcome::new(dev, format!("positive-frequency modes at t = 0.7, n <= {top}")))
}
