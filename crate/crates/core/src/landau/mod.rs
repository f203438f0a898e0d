//! Landau levels of the constant-field model and the Toeplitz calculus on them.

pub mod coefficients;
pub mod fock;
pub mod laguerre;
pub mod levels;
pub mod polyanalytic;
pub mod projection;
pub mod symbol;
pub mod toeplitz;

use thiserror::Error;

use crate::calculus::CalculusError;

pub use coefficients::{
    compose_coefficients, make_admissible_f1, make_admissible_f2, CompositionCoefficients, TaylorData,
};
pub use fock::{fock_matrix, FockLabel, FockMatrix, FockOp, FockTruncation};
pub use laguerre::laguerre;
pub use levels::{enumerate_levels, LandauLevel, MultiIndex};
pub use polyanalytic::{
    decompose_polyanalytic, reconstruct_polyanalytic, scalar_multiple_of_projection, PolyanalyticCoefficients,
};
pub use projection::{full_projection, projection_kernel, ProjectionMethod};
pub use symbol::SymbolPoly;
pub use toeplitz::{model_commutator, model_toeplitz, poisson_flat, POISSON_SIGN};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LandauError {
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error("level cutoff {cutoff} is below the lowest level {lowest}")]
    CutoffTooLow { cutoff: String, lowest: String },
    #[error("multi-index has {found} entries, expected {expected}")]
    IndexArity { expected: usize, found: usize },
    #[error("symbol must be scalar (d = 1), got d = {0}")]
    NotScalar(usize),
    #[error("projection constraint violated for {0}")]
    ConstraintViolation(&'static str),
    #[error("kernel is not reproducing: P*K*P differs from K")]
    NotReproducing,
    #[error("polyanalytic basis is singular at {0}")]
    SingularBasis(String),
    #[error("kernel is not in the span of the polyanalytic basis")]
    NotRepresentable,
    #[error("level has {0} indices, expected exactly one")]
    NotSimple(usize),
    #[error("invalid Fock word: {0}")]
    InvalidWord(String),
}
