//! Exact linear algebra over `Z` and `Q`.
//!
//! The classification algorithms in this crate reduce, almost without
//! exception, to four lattice primitives: Hermite form (canonical bases),
//! Smith form (divisibility structure), completion of a partial basis of
//! `Z^n`, and saturation of a rational span against the integer lattice.

mod hnf;
mod matrix;
mod unimodular;

pub use hnf::{complete_to_basis, hnf, saturation_basis, snf};
pub use matrix::{IntMatrix, IntVector, RatMatrix, RatVector};
pub use unimodular::{
    random_unimodular, unimodular_inverse, AffineUnimodularMap, UnimodularMap,
};

pub(crate) use hnf::{hnf_rank, inverse_int};

use crate::scalar::Int;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZlinalgError {
    /// The rows span a lattice that is not saturated in `Z^n` (or are
    /// dependent), so they cannot be extended to a basis.
    #[error("rows do not form part of a basis of the integer lattice")]
    NotSaturated,
    /// A matrix expected to have determinant `±1` does not.
    #[error("matrix has determinant {det}, not ±1")]
    NotUnimodular { det: Int },
}
