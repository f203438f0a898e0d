use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::LandauError;
use crate::calculus::{CalculusError, CoeffMatrix, ComplexPolynomial, GaussRational, Side, Var};

/// A polynomial symbol in `z, z̄` only (the left variables).
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolPoly(ComplexPolynomial);

impl SymbolPoly {
    pub fn new(p: ComplexPolynomial) -> Result<Self, LandauError> {
        if !p.uses_only(Side::Left) {
            return Err(CalculusError::WrongSide(Side::Left).into());
        }
        Ok(Self(p))
    }

    pub fn zero(n: usize, d: usize) -> Self {
        Self(ComplexPolynomial::zero(n, d))
    }

    pub fn constant(n: usize, c: CoeffMatrix) -> Self {
        Self(ComplexPolynomial::constant(n, c))
    }

    pub fn scalar(n: usize, d: usize, c: GaussRational) -> Self {
        Self(ComplexPolynomial::scalar(n, d, c))
    }

    /// `z_j` (`conj = false`) or `z̄_j`.
    pub fn coordinate(n: usize, d: usize, j: usize, conj: bool) -> Self {
        let v = if conj { Var::zbar(j) } else { Var::z(j) };
        Self(ComplexPolynomial::var(n, d, v))
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn d(&self) -> usize {
        self.0.d()
    }

    pub fn poly(&self) -> &ComplexPolynomial {
        &self.0
    }

    pub fn into_poly(self) -> ComplexPolynomial {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    /// Degree at most one.
    pub fn is_linear(&self) -> bool {
        self.degree().is_none_or(|d| d <= 1)
    }

    pub fn value_at_origin(&self) -> CoeffMatrix {
        self.0.constant_term()
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self(self.0.homogeneous_part(degree))
    }

    /// `∂/∂z_j` or `∂/∂z̄_j`.
    pub fn derivative(&self, j: usize, conj: bool) -> Self {
        let v = if conj { Var::zbar(j) } else { Var::z(j) };
        Self(self.0.derivative(v))
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self(self.0.scale(c))
    }

    pub fn lift(&self, d: usize) -> Self {
        Self(self.0.lift(d))
    }

    /// The same polynomial written in `z', z̄'`.
    pub fn on_right(&self) -> ComplexPolynomial {
        self.0.move_to_side(Side::Right)
    }
}

impl fmt::Debug for SymbolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl Add for &SymbolPoly {
    type Output = SymbolPoly;
    fn add(self, rhs: &SymbolPoly) -> SymbolPoly {
        SymbolPoly(&self.0 + &rhs.0)
    }
}

impl Sub for &SymbolPoly {
    type Output = SymbolPoly;
    fn sub(self, rhs: &SymbolPoly) -> SymbolPoly {
        SymbolPoly(&self.0 - &rhs.0)
    }
}

impl Mul for &SymbolPoly {
    type Output = SymbolPoly;
    fn mul(self, rhs: &SymbolPoly) -> SymbolPoly {
        SymbolPoly(&self.0 * &rhs.0)
    }
}

impl Neg for &SymbolPoly {
    type Output = SymbolPoly;
    fn neg(self) -> SymbolPoly {
        SymbolPoly(-&self.0)
    }
}
