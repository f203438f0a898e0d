use num_traits::One;

use super::laguerre::laguerre_coefficients;
use super::levels::{LandauLevel, MultiIndex};
use super::LandauError;
use crate::calculus::field::rat;
use crate::calculus::kernel::ladder_norm;
use crate::calculus::{ComplexPolynomial, FieldParams, GaussKernel, GeneratorId, GeneratorKind, Rational, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionMethod {
    /// `b^k_z b̄^k_{z'} 𝒫 / (2^{|k|} a^k k!)`.
    Ladder,
    /// `∏_j L_{k_j}(a_j |z_j - z'_j|² / 2) · 𝒫`.
    Laguerre,
}

/// Kernel of the projection onto the eigenspace indexed by `k`.
pub fn projection_kernel(
    params: &FieldParams,
    k: &MultiIndex,
    method: ProjectionMethod,
) -> Result<GaussKernel, LandauError> {
    if k.n() != params.n() {
        return Err(LandauError::IndexArity {
            expected: params.n(),
            found: k.n(),
        });
    }
    match method {
        ProjectionMethod::Ladder => {
            let mut word = Vec::new();
            for (j, &kj) in k.0.iter().enumerate() {
                for _ in 0..kj {
                    word.push(GeneratorId::left(GeneratorKind::B, j));
                    word.push(GeneratorId::right(GeneratorKind::BBar, j));
                }
            }
            let raw = GaussKernel::bergman(params).apply_word(&word)?;
            Ok(raw.scale_real(&(Rational::one() / ladder_norm(params, &k.0))))
        }
        ProjectionMethod::Laguerre => {
            let n = params.n();
            let mut q = ComplexPolynomial::one(n, 1);
            for (j, &kj) in k.0.iter().enumerate() {
                if kj == 0 {
                    continue;
                }
                let dz = &ComplexPolynomial::var(n, 1, Var::z(j)) - &ComplexPolynomial::var(n, 1, Var::zp(j));
                let dzb = &ComplexPolynomial::var(n, 1, Var::zbar(j)) - &ComplexPolynomial::var(n, 1, Var::zpbar(j));
                let x = (&dz * &dzb).scale_real(&(params.a_j(j) * rat(1, 2)));
                let mut factor = ComplexPolynomial::zero(n, 1);
                let mut power = ComplexPolynomial::one(n, 1);
                for c in laguerre_coefficients(kj, 0) {
                    factor = &factor + &power.scale_real(&c);
                    power = &power * &x;
                }
                q = &q * &factor;
            }
            Ok(GaussKernel::from_poly(params, q)?)
        }
    }
}

/// `𝒫_Λ = Σ_{k ∈ 𝒦_Λ} 𝒫_{Λ_k}`.
pub fn full_projection(level: &LandauLevel) -> Result<GaussKernel, LandauError> {
    let mut acc = GaussKernel::zero(&level.params);
    for k in &level.indices {
        acc = &acc + &projection_kernel(&level.params, k, ProjectionMethod::Laguerre)?;
    }
    Ok(acc)
}
