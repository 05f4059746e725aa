//! Fault injection for mutation checks.
//!
//! Every coefficient formula that the verification engine depends on passes
//! its result through [`perturb`]. With the `fault-injection` feature
//! enabled, a test can arm one [`Fault`] on the current thread; the matching
//! formula then returns a value scaled by `1 + FAULT_SCALE`. Without the
//! feature `perturb` is the identity and compiles away.

/// The individual formulas that can be corrupted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fault {
    /// Positive root for the lowest weight `k`.
    LowestWeight,
    /// Energy levels.
    Energy,
    /// Diagonal of the energy-square matrix.
    EnergySquareMatrix,
    /// Eigenfunction normalization factor.
    Normalization,
    /// Coefficients of the terminating hypergeometric series.
    Hypergeometric,
    /// Raising coefficient of the shift action.
    ShiftPlus,
    /// Lowering coefficient of the shift action.
    ShiftMinus,
    /// `w_(+)(n)` factor of the raising operator.
    WeightPlus,
    /// `w_(-)(n)` factor of the lowering operator.
    WeightMinus,
    /// Matrix elements of the unitary generators `K_(±)`.
    UnitaryGenerators,
}

impl Fault {
    pub const ALL: [Fault; 10] = [
        Fault::LowestWeight,
        Fault::Energy,
        Fault::EnergySquareMatrix,
        Fault::Normalization,
        Fault::Hypergeometric,
        Fault::ShiftPlus,
        Fault::ShiftMinus,
        Fault::WeightPlus,
        Fault::WeightMinus,
        Fault::UnitaryGenerators,
    ];
}

/// Relative size of an injected perturbation.
pub const FAULT_SCALE: f64 = 1e-3;

#[cfg(feature = "fault-injection")]
mod active {
    use super::{Fault, FAULT_SCALE};
    use std::cell::Cell;

    thread_local! {
        static ARMED: Cell<Option<Fault>> = const { Cell::new(None) };
    }

    /// Arms `fault` on the current thread until the guard is dropped.
    pub fn inject(fault: Fault) -> FaultGuard {
        ARMED.with(|a| a.set(Some(fault)));
        FaultGuard { _private: () }
    }

    pub struct FaultGuard {
        _private: (),
    }

    impl Drop for FaultGuard {
        fn drop(&mut self) {
            ARMED.with(|a| a.set(None));
        }
    }

    #[inline]
    pub(crate) fn perturb(which: Fault, value: f64) -> f64 {
        match ARMED.with(Cell::get) {
            Some(f) if f == which => value * (1.0 + FAULT_SCALE),
            _ => value,
        }
    }
}

#[cfg(feature = "fault-injection")]
pub use active::{inject, FaultGuard};

#[cfg(feature = "fault-injection")]
pub(crate) use active::perturb;

#[cfg(not(feature = "fault-injection"))]
#[inline(always)]
pub(crate) fn perturb(_which: Fault, value: f64) -> f64 {
    value
}
