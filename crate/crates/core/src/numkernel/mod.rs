//! Special functions and quadrature primitives.
//!
//! Nothing in here knows about oscillators: it is log-space Gamma arithmetic,
//! terminating hypergeometric series, classical orthogonal polynomials and
//! Gauss rules built from their recurrences.

mod diff;
mod gamma;
mod hermite;
mod hypergeometric;
mod jacobi;
mod quadrature;

pub use diff::finite_diff_derivative;
pub use gamma::{log_gamma, log_gamma_half_ratio, pochhammer_log};
pub(crate) use hermite::hermite_reduced_table;
pub use hermite::{hermite_coeffs, hermite_function, hermite_function_reduced, hermite_poly};
pub use hypergeometric::{eval_poly, terminating_2f1_coeffs};
pub use jacobi::{jacobi_p, jacobi_p_shifted};
pub use quadrature::{
    default_order, make_hermite_rule, make_jacobi_rule, make_legendre_rule, QuadratureKind,
    QuadratureRule,
};
