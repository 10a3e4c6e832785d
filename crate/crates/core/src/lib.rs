//! Exact-arithmetic classification of compact connected toric contact
//! manifolds.
//!
//! The crate is `no_std` (it needs `alloc`) and is organized in four layers:
//!
//! * [`lattice`]: integer vectors and matrices, gcd reduction, Hermite and
//!   Smith normal forms, unimodular (`SL(d,ℤ)`) witnesses.
//! * [`cone`]: rational polyhedral cones with generator/facet descriptions,
//!   lineality, normalization to `{x₁,…,x_{d−k} ≥ 0}`, Reeb vectors and
//!   slices.
//! * [`classify`]: the decision tree mapping moment data to a manifold label
//!   and a fillability verdict, with witnesses.
//! * [`forms`]: exterior calculus with polynomial coefficients, used to check
//!   contact forms, moment maps and filling identities by exact evaluation.
//!
//! All scalars are arbitrary precision; there is no floating point anywhere.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod classify;
pub mod cone;
pub mod forms;
pub mod lattice;

pub use num_bigint::BigInt;

/// Exact rational scalar, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub use classify::{classify, ClassificationResult, ClassifyError, ToricInput};
pub use cone::{Cone, ConeError};
pub use lattice::{IntMatrix, IntVector, LatticeError, UnimodularWitness};
