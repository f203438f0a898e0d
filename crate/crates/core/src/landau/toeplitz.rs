//! Model Toeplitz operators `P_Λ F P_Λ` and their commutators.

use super::levels::LandauLevel;
use super::projection::full_projection;
use super::symbol::SymbolPoly;
use super::LandauError;
use crate::calculus::field::int;
use crate::calculus::{FieldParams, GaussKernel, Rational, Side};

/// Global sign of the Poisson bracket.
///
/// On every level `P z P = b̄/a` and `P z̄ P = b̄⁺/a`, so `[PzP, Pz̄P] = -(2/a) P`.
/// The Fock-space oracle confirms this value, hence `-1`.
pub const POISSON_SIGN: i64 = -1;

/// Kernel of `P_Λ M_F P_Λ`, computed as `P_Λ ∗ (F · P_Λ)`.
pub fn model_toeplitz(level: &LandauLevel, f: &SymbolPoly) -> Result<GaussKernel, LandauError> {
    let p = full_projection(level)?;
    toeplitz_with(&p, f)
}

pub(crate) fn toeplitz_with(p: &GaussKernel, f: &SymbolPoly) -> Result<GaussKernel, LandauError> {
    let fp = p.mul_symbol(f.poly(), Side::Left)?;
    Ok(p.convolve(&fp)?)
}

/// `[T_F, T_G]` for the model Toeplitz operators of one level.
pub fn model_commutator(level: &LandauLevel, f: &SymbolPoly, g: &SymbolPoly) -> Result<GaussKernel, LandauError> {
    let p = full_projection(level)?;
    let tf = toeplitz_with(&p, f)?;
    let tg = toeplitz_with(&p, g)?;
    Ok(&tf.convolve(&tg)? - &tg.convolve(&tf)?)
}

/// `σ Σ_j (2/a_j)(∂_{z_j}F ∂_{z̄_j}G - ∂_{z̄_j}F ∂_{z_j}G)` for scalar symbols.
pub fn poisson_flat(params: &FieldParams, f: &SymbolPoly, g: &SymbolPoly) -> Result<SymbolPoly, LandauError> {
    for s in [f, g] {
        if s.d() != 1 {
            return Err(LandauError::NotScalar(s.d()));
        }
    }
    let n = params.n();
    let mut acc = SymbolPoly::zero(n, 1);
    for j in 0..n {
        let w: Rational = int(2 * POISSON_SIGN) / params.a_j(j);
        let term =
            &(&f.derivative(j, false) * &g.derivative(j, true)) - &(&f.derivative(j, true) * &g.derivative(j, false));
        acc = &acc + &SymbolPoly::new(term.poly().scale_real(&w))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::field::{gauss_int, rat};
    use crate::landau::levels::MultiIndex;

    #[test]
    fn bracket_of_coordinates() {
        let params = FieldParams::scalar(&[3]).unwrap();
        let z = SymbolPoly::coordinate(1, 1, 0, false);
        let zb = SymbolPoly::coordinate(1, 1, 0, true);
        let b = poisson_flat(&params, &z, &zb).unwrap();
        assert_eq!(b.value_at_origin().as_scalar(), Some(gauss_int(-2, 0) * rat(1, 3)));
        assert!(poisson_flat(&params, &z, &z).unwrap().is_zero());
    }

    #[test]
    fn holomorphic_symbol_on_lowest_level() {
        let params = FieldParams::scalar(&[2]).unwrap();
        let level = LandauLevel::containing(&params, &MultiIndex::zero(1)).unwrap();
        let z = SymbolPoly::coordinate(1, 1, 0, false);
        let t = model_toeplitz(&level, &z).unwrap();
        assert_eq!(t.q(), z.poly());
        let one = SymbolPoly::scalar(1, 1, gauss_int(1, 0));
        assert_eq!(model_toeplitz(&level, &one).unwrap(), full_projection(&level).unwrap());
    }
}
