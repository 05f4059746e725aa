//! Normalized energy eigenfunctions, the weighted scalar product, mode
//! functions and completeness probes.

mod function;
mod grid;
mod mode;
mod product;

pub use function::{normalization, BasisIndex, EigenFunction, Envelope, Jet};
pub use grid::GridSpec;
pub use mode::{mode_function, relativistic_product, FrequencySign};
pub use product::{completeness_probe, scalar_product, InnerProduct};

use crate::error::Result;
use crate::geometry::ModelParams;

/// `U_0 ..= U_{n_max}`.
pub fn basis(p: &ModelParams, n_max: usize) -> Result<Vec<EigenFunction>> {
    (0..=n_max).map(|n| EigenFunction::new(p, n)).collect()
}
