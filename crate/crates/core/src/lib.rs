//! Exact Gaussian kernel calculus and the Landau-level model built on it.
//!
//! [`calculus`] handles kernels `q(Z, Z')·𝒫(Z, Z')` with exact Gaussian-rational
//! coefficients. [`landau`] adds projections onto Landau levels, model Toeplitz
//! operators, the coefficient engine and a floating-point Fock-space oracle.

pub mod calculus;
pub mod landau;
