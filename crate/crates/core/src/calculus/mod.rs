//! Exact calculus of Gaussian-weighted polynomial kernels on `C^n`.

pub mod field;
pub mod kernel;
pub mod poly;

use thiserror::Error;

pub use field::{CoeffMatrix, GaussRational, Rational};
pub use kernel::{FieldParams, GaussKernel, GeneratorId, GeneratorKind};
pub use poly::{ComplexPolynomial, Monomial, Side, Slot, Var};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CalculusError {
    #[error("invalid field parameters: {0}")]
    InvalidParams(String),
    #[error("coordinate {coord} out of range for n = {n}")]
    CoordinateOutOfRange { coord: usize, n: usize },
    #[error("kernels have different field parameters")]
    ParamsMismatch,
    #[error("polynomial has {found} complex coordinates, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("coefficient dimension {found} does not match fibre dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("symbol uses variables outside the {0:?} side")]
    WrongSide(Side),
}
