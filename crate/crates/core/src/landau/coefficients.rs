//! Expansion coefficients `K_r(f)` of Toeplitz kernels and `K_r(f, g)` of their products.

use super::levels::LandauLevel;
use super::projection::full_projection;
use super::symbol::SymbolPoly;
use super::LandauError;
use crate::calculus::field::int;
use crate::calculus::{GaussKernel, Side};

/// Jet of a symbol at the base point: `parts[k] = (1/k!)(d^k f)_0`, homogeneous of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorData {
    parts: Vec<SymbolPoly>,
}

impl TaylorData {
    /// Splits a polynomial symbol into homogeneous parts up to `order`.
    pub fn from_symbol(f: &SymbolPoly, order: u32) -> Self {
        Self {
            parts: (0..=order).map(|k| f.homogeneous_part(k)).collect(),
        }
    }

    /// Uses the given parts; part `k` must be homogeneous of degree `k`.
    pub fn from_parts(parts: Vec<SymbolPoly>) -> Self {
        for (k, p) in parts.iter().enumerate() {
            assert_eq!(
                &p.homogeneous_part(k as u32),
                p,
                "part {k} is not homogeneous of degree {k}"
            );
        }
        Self { parts }
    }

    pub fn order(&self) -> u32 {
        self.parts.len() as u32 - 1
    }

    pub fn part(&self, k: u32) -> &SymbolPoly {
        &self.parts[k as usize]
    }

    /// Jet of the product `fg`, truncated to the smaller order.
    pub fn product(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let parts = (0..=order)
            .map(|k| {
                let mut acc = SymbolPoly::zero(self.parts[0].n(), self.parts[0].d());
                for i in 0..=k {
                    acc = &acc + &(self.part(i) * other.part(k - i));
                }
                acc
            })
            .collect();
        Self { parts }
    }

    fn lifted(&self, d: usize) -> Self {
        Self {
            parts: self
                .parts
                .iter()
                .map(|p| if p.d() == d { p.clone() } else { p.lift(d) })
                .collect(),
        }
    }
}

/// `K_r(f)`, `K_r(g)` and `K_r(f, g)` for `r ≤ r_max`.
#[derive(Clone, Debug)]
pub struct CompositionCoefficients {
    pub k_f: Vec<GaussKernel>,
    pub k_g: Vec<GaussKernel>,
    pub k_fg: Vec<GaussKernel>,
}

/// Checks `P∗F₁ + F₁∗P = F₁` and `P∗F₂ + F₁∗F₁ + F₂∗P = F₂`.
pub fn check_projection_constraints(p: &GaussKernel, f1: &GaussKernel, f2: &GaussKernel) -> Result<(), LandauError> {
    let lhs1 = &p.convolve(f1)? + &f1.convolve(p)?;
    if &lhs1 != f1 {
        return Err(LandauError::ConstraintViolation("F1"));
    }
    let lhs2 = &(&p.convolve(f2)? + &f1.convolve(f1)?) + &f2.convolve(p)?;
    if &lhs2 != f2 {
        return Err(LandauError::ConstraintViolation("F2"));
    }
    Ok(())
}

/// `K_r(f) = Σ_{r₁+r₂+k=r} F_{r₁} ∗ (f_k · F_{r₂})` with `F₀ = P_Λ`.
pub fn toeplitz_coefficients(
    f_series: &[GaussKernel],
    f: &TaylorData,
    r_max: u32,
) -> Result<Vec<GaussKernel>, LandauError> {
    let params = f_series[0].params();
    let f = f.lifted(params.d());
    (0..=r_max)
        .map(|r| {
            let mut acc = GaussKernel::zero(params);
            for k in 0..=r.min(f.order()) {
                for r1 in 0..=(r - k) {
                    let r2 = r - k - r1;
                    let right = f_series[r2 as usize].mul_symbol(f.part(k).poly(), Side::Left)?;
                    acc = &acc + &f_series[r1 as usize].convolve(&right)?;
                }
            }
            Ok(acc)
        })
        .collect()
}

/// Coefficients of `T_f`, `T_g` and of the product `T_f T_g` up to order `r_max ≤ 2`.
pub fn compose_coefficients(
    level: &LandauLevel,
    f1: &GaussKernel,
    f2: &GaussKernel,
    f: &TaylorData,
    g: &TaylorData,
    r_max: u32,
) -> Result<CompositionCoefficients, LandauError> {
    assert!(r_max <= 2, "closed forms exist only up to r = 2");
    let p = full_projection(level)?;
    check_projection_constraints(&p, f1, f2)?;
    let series = [p, f1.clone(), f2.clone()];
    let k_f = toeplitz_coefficients(&series, f, r_max)?;
    let k_g = toeplitz_coefficients(&series, g, r_max)?;
    let k_fg = (0..=r_max as usize)
        .map(|r| {
            let mut acc = GaussKernel::zero(&level.params);
            for r1 in 0..=r {
                acc = &acc + &k_f[r1].convolve(&k_g[r - r1])?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>, LandauError>>()?;
    Ok(CompositionCoefficients { k_f, k_g, k_fg })
}

fn scalar_projection(level: &LandauLevel) -> Result<GaussKernel, LandauError> {
    let scalar = LandauLevel {
        params: level.params.with_fiber(1),
        value: level.value.clone(),
        indices: level.indices.clone(),
    };
    full_projection(&scalar)
}

fn lift_kernel(k: &GaussKernel, level: &LandauLevel) -> Result<GaussKernel, LandauError> {
    Ok(GaussKernel::from_poly(&level.params, k.q().clone())?)
}

/// `A = P∗S + S∗P - 2 P∗S∗P` for a scalar seed `S`, lifted to the fibre dimension of `level`.
pub fn make_admissible_f1(s: &GaussKernel, level: &LandauLevel) -> Result<GaussKernel, LandauError> {
    if s.params().d() != 1 {
        return Err(LandauError::NotScalar(s.params().d()));
    }
    let p = scalar_projection(level)?;
    let ps = p.convolve(s)?;
    let a = &(&ps + &s.convolve(&p)?) - &ps.convolve(&p)?.scale_real(&int(2));
    lift_kernel(&a, level)
}

/// A synthetic second coefficient `F₂ = F₁∗F₁ - 2 P∗F₁∗F₁∗P + A(S₂)` that satisfies
/// `P∗F₂ + F₁∗F₁ + F₂∗P = F₂` whenever `F₁` satisfies its own constraint.
pub fn make_admissible_f2(f1: &GaussKernel, s2: &GaussKernel, level: &LandauLevel) -> Result<GaussKernel, LandauError> {
    let p = full_projection(level)?;
    let ff = f1.convolve(f1)?;
    let pffp = p.convolve(&ff)?.convolve(&p)?;
    let a = make_admissible_f1(s2, level)?;
    Ok(&(&ff - &pffp.scale_real(&int(2))) + &a)
}
