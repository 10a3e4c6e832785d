//! Exterior calculus with rational polynomial coefficients, and exact
//! sampled checks of contact and filling conditions.
//!
//! Forms live on the ambient coordinates of a chart such as
//! `T^k × ℝ^k × ℂ^{d−k}`; complex coordinates are split as `z = a + ib`.
//! Manifold checks evaluate forms on exact tangent frames at rational points
//! of the sphere factor, so every positivity test is an exact sign.

mod chart;
mod form;
mod library;
mod poly;
mod verify;

use alloc::string::String;

pub use chart::{ChartKind, ManifoldChart, SamplePoint};
pub use form::{FormDisplay, PolyForm, VectorField};
pub use library::{
    alpha_prime, alpha_t, beta, dtheta12, f1_f2, strong_filling_liouville, strong_filling_omega,
    weak_fill_polynomial, NamedForm, WeakFillForms,
};
pub use poly::{Monomial, Poly, PolyDisplay, Vars};
pub use verify::{
    contact_volume, moment_map, verify_contact_condition, verify_moment_image,
    verify_strong_filling, verify_weak_fill, verify_zk_invariance, MomentMap,
    VerificationReport, WeakFillReport, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormsError {
    #[error("forms are over different variable lists")]
    VariableMismatch,
    #[error("expected degree {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("point or vector has {got} coordinates, expected {expected}")]
    PointDimension { expected: usize, got: usize },
    #[error("action weight has {got} entries, expected {expected}")]
    WeightMismatch { expected: usize, got: usize },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("sample count must be positive")]
    InvalidSampleCount,
    #[error("no t = 2^-n with n ≤ 20 makes ∂P/∂τ positive on the samples")]
    NoPositiveT,
    #[error("rotation of order {0} has irrational entries")]
    UnsupportedRotation(u32),
}
