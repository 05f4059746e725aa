//! Energy spectra, normalized eigenfunctions and the operator algebra of the
//! one-parameter family of (1+1)-dimensional relativistic oscillators.
//!
//! The models are free massive scalar fields on the static backgrounds
//! `ds² = g00 dt² + g11 dx²` with `λ = -ε²`. For `ε > 0` the wave functions
//! live on the horizon-bounded interval `|x| < 1/(εω)` and the number
//! operator together with the shift operators span a lowest-weight `so(1,2)`
//! representation; at `ε = 0` everything reduces to the harmonic oscillator.
//!
//! Modules, bottom up:
//!
//! * [`numkernel`]: log-Gamma, hypergeometric and orthogonal polynomials, Gauss rules.
//! * [`geometry`]: model parameters, frames, metric and weight.
//! * [`spectrum`]: energy levels.
//! * [`eigenbasis`]: eigenfunctions, scalar products, mode functions.
//! * [`opalg`]: operator matrices, differential actions, verification engine.
//! * [`output`]: CSV and JSON emitters.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eigenbasis;
pub mod error;
pub mod faults;
pub mod geometry;
pub mod numkernel;
pub mod opalg;
pub mod output;
pub mod spectrum;

pub use eigenbasis::{EigenFunction, GridSpec, InnerProduct};
pub use error::{Error, Result};
pub use geometry::{Frame, FrameKind, ModelParams, Regime};
pub use opalg::{OperatorLabel, OperatorMatrix, Tolerances, VerificationReport};
pub use spectrum::{energy, SpectrumTable};
