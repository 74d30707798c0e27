//! Exact integer linear algebra.
//!
//! Everything here works over ℤ, optionally with a modulus attached to each
//! coordinate: a modulus `m > 0` means the coordinate lives in ℤ/m, and `0`
//! means the coordinate is free. Mixed moduli are handled by stacking the rows
//! `m·eᵢ` under whatever relation matrix is being reduced, so a single row
//! Hermite normal form code path serves kernels, solving and cokernels alike.

mod matrix;
mod modular;
mod normal_form;

pub use matrix::{modulus_gcd, IntMatrix, Moduli};
pub use modular::{
    cokernel_invariants, kernel_mod, kernel_rel, present_subgroup, solve_mod, LatticeSolver,
    SolveResult, SubgroupPresentation,
};
pub use normal_form::{hnf, snf, NormalFormResult};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {context} (expected {expected}, found {found})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
}

pub(crate) fn check_dim(
    context: &'static str,
    expected: usize,
    found: usize,
) -> Result<(), LinalgError> {
    if expected == found {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
