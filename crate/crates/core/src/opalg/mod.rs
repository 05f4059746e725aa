//! The operator algebra: matrix representations in the energy basis,
//! coordinate-space differential actions, and the identity checks.

mod coefficients;
mod differential;
mod matrix;
mod verify;

pub use coefficients::{shift_coefficients, w_minus, w_plus};
pub use differential::{
    adjoint_defect, apply_shift_differential, energy_square_action, ode_residual_at, oscillator_ladder_at,
    shift_action_at, DiffOperator, ShiftSign, TildeLadder,
};
pub use matrix::{build_matrix, commutator, OperatorLabel, OperatorMatrix};
pub use verify::{
    run_suite, verify_identity, Identity, Tolerances, Verdict, VerificationReport, VerifyOptions, DEFAULT_N_MAX,
    MIN_GRID_POINTS,
};
