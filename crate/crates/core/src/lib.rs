//! Exact symbolic verification of hypercomplex structures on the generalized
//! tangent bundle `TM ⊕ T*M` of a coordinate chart.
//!
//! Everything is computed with exact rational functions; an identity holds
//! when its residual reduces to the zero field, never up to a tolerance.

pub mod cartan;
pub mod connection;
pub mod examples;
pub mod courant;
#[cfg(feature = "mutation-hook")]
pub mod mutation;
#[cfg(not(feature = "mutation-hook"))]
mod mutation;
pub mod nijenhuis;
pub mod quaternionic;
pub mod report;
pub mod run;
pub mod sample;
pub mod scalar;
pub mod structure;
pub mod theorem;

use thiserror::Error;

pub use cartan::{OneForm, TwoForm, VectorField};
pub use courant::GSection;
pub use quaternionic::{GEndo, HKTriple};
pub use report::{CheckReport, Witness};
pub use scalar::{Chart, Rational, ScalarError, ScalarField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not antisymmetric at ({row}, {col})")]
    NotAntisymmetric { row: usize, col: usize },
    #[error("matrix does not square to minus the identity")]
    NotAlmostComplex,
    #[error("supplied inverse does not invert the 2-form")]
    NotInverse,
    #[error("structure is not a certified almost hypercomplex triple: {0}")]
    UncertifiedStructure(String),
    #[error("observed vanishing pattern contradicts the equivalence theorem: {0}")]
    InconsistentEquivalence(String),
}
