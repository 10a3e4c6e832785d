//! Exact integer linear algebra.
//!
//! Everything here works over [`BigInt`]; there is no machine-word fast path.
//! Operations that change a basis return a [`UnimodularWitness`] carrying both
//! the transformation and its inverse so callers can move data back and forth
//! without recomputing anything.

mod matrix;
mod normal_form;
mod reduce;
mod vector;

use num_bigint::BigInt;

pub use matrix::{IntMatrix, UnimodularWitness};
pub use normal_form::{hermite_normal_form, integer_kernel, smith_normal_form, SmithForm};
pub use reduce::{complete_to_basis, extended_gcd, gcd_reduce};
pub use vector::IntVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("vector has no nonzero entry")]
    ZeroVector,
    #[error("vector is not primitive (gcd of entries is {0})")]
    NotPrimitive(BigInt),
    #[error("dimension {got} is too small (need at least {min})")]
    DimensionTooSmall { got: usize, min: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not unimodular")]
    NotUnimodular,
}
