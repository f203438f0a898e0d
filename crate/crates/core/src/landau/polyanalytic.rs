//! Decomposition `K = Σ_{k,k'} b^k_z b̄^{k'}_{z'} [Q_{kk'}(z, z̄') 𝒫]` of reproducing kernels.
//!
//! The images of the monomials `z^α z̄'^γ` under each ladder word are reduced to an
//! echelon basis by exact elimination on leading monomials; `K` is then reduced
//! against that basis. A dependent image is reported as a singular basis and a
//! nonzero remainder as a kernel outside the span.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::levels::{LandauLevel, MultiIndex};
use super::projection::{full_projection, projection_kernel, ProjectionMethod};
use super::LandauError;
use crate::calculus::{
    CoeffMatrix, ComplexPolynomial, FieldParams, GaussKernel, GaussRational, GeneratorId, GeneratorKind, Monomial, Var,
};

/// `Q_{kk'}` for every pair in `𝒦_Λ × 𝒦_Λ`; pairs with `Q = 0` are omitted.
pub type PolyanalyticCoefficients = BTreeMap<(MultiIndex, MultiIndex), ComplexPolynomial>;

struct Unknown {
    pair: (MultiIndex, MultiIndex),
    monomial: Monomial,
}

struct Row {
    pivot: Monomial,
    pivot_value: GaussRational,
    terms: BTreeMap<Monomial, GaussRational>,
    /// This row as a combination of the original unknowns.
    combination: HashMap<usize, GaussRational>,
}

fn ladder_word(k: &MultiIndex, kp: &MultiIndex) -> Vec<GeneratorId> {
    let mut word = Vec::new();
    for (j, &kj) in k.0.iter().enumerate() {
        word.extend(std::iter::repeat_n(GeneratorId::left(GeneratorKind::B, j), kj as usize));
    }
    for (j, &kj) in kp.0.iter().enumerate() {
        word.extend(std::iter::repeat_n(
            GeneratorId::right(GeneratorKind::BBar, j),
            kj as usize,
        ));
    }
    word
}

/// Monomials `z^α z̄'^γ` with `|α| + |γ| ≤ degree`.
fn holomorphic_monomials(n: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for exps in MultiIndex::up_to(2 * n, degree) {
        let mut m = Monomial::one(n);
        for j in 0..n {
            *m.exp_mut(Var::z(j)) = exps.0[j];
            *m.exp_mut(Var::zpbar(j)) = exps.0[n + j];
        }
        out.push(m);
    }
    out
}

fn scalar_image(
    params: &FieldParams,
    word: &[GeneratorId],
    m: &Monomial,
) -> Result<BTreeMap<Monomial, GaussRational>, LandauError> {
    let scalar = params.with_fiber(1);
    let seed = ComplexPolynomial::from_terms(scalar.n(), 1, [(m.clone(), CoeffMatrix::identity(1))]);
    let k = GaussKernel::from_poly(&scalar, seed)?.apply_word(word)?;
    Ok(k.q().terms().map(|(m, c)| (m.clone(), c.get(0, 0).clone())).collect())
}

fn reduce_row(rows: &[Row], index: &HashMap<Monomial, usize>, row: &mut Row) -> bool {
    loop {
        let Some(lead) = row.terms.keys().next_back().cloned() else {
            return false;
        };
        let Some(&r) = index.get(&lead) else {
            row.pivot_value = row.terms[&lead].clone();
            row.pivot = lead;
            return true;
        };
        let basis = &rows[r];
        let factor = &row.terms[&lead] / &basis.pivot_value;
        for (m, c) in &basis.terms {
            let v = row.terms.entry(m.clone()).or_insert_with(GaussRational::zero);
            *v = &*v - &factor * c;
            if v.is_zero() {
                row.terms.remove(m);
            }
        }
        for (u, c) in &basis.combination {
            let v = row.combination.entry(*u).or_insert_with(GaussRational::zero);
            *v = &*v - &factor * c;
        }
    }
}

/// Decomposes a kernel with `P_Λ ∗ K ∗ P_Λ = K` into polyanalytic coefficients.
pub fn decompose_polyanalytic(k: &GaussKernel, level: &LandauLevel) -> Result<PolyanalyticCoefficients, LandauError> {
    let params = &level.params;
    let p = full_projection(level)?;
    if &p.convolve(k)?.convolve(&p)? != k {
        return Err(LandauError::NotReproducing);
    }
    let Some(degree) = k.q().degree() else {
        return Ok(BTreeMap::new());
    };
    let n = params.n();

    let mut unknowns = Vec::new();
    let mut rows: Vec<Row> = Vec::new();
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for kk in &level.indices {
        for kp in &level.indices {
            let shift = kk.total() + kp.total();
            if shift > degree {
                continue;
            }
            let word = ladder_word(kk, kp);
            for m in holomorphic_monomials(n, degree - shift) {
                let u = unknowns.len();
                let terms = scalar_image(params, &word, &m)?;
                unknowns.push(Unknown {
                    pair: (kk.clone(), kp.clone()),
                    monomial: m,
                });
                let mut row = Row {
                    pivot: Monomial::one(n),
                    pivot_value: GaussRational::zero(),
                    terms,
                    combination: HashMap::from([(u, GaussRational::one())]),
                };
                if !reduce_row(&rows, &index, &mut row) {
                    let un = &unknowns[u];
                    return Err(LandauError::SingularBasis(format!(
                        "{:?}/{:?} monomial {:?}",
                        un.pair.0, un.pair.1, un.monomial
                    )));
                }
                index.insert(row.pivot.clone(), rows.len());
                rows.push(row);
            }
        }
    }

    // Reduce K with matrix coefficients; the basis rows are scalar.
    let d = params.d();
    let mut rest: BTreeMap<Monomial, CoeffMatrix> = k.q().terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    let mut weights: Vec<CoeffMatrix> = vec![CoeffMatrix::zero(d); rows.len()];
    while let Some(lead) = rest.keys().next_back().cloned() {
        let Some(&r) = index.get(&lead) else {
            return Err(LandauError::NotRepresentable);
        };
        let row = &rows[r];
        let factor = rest[&lead].scale(&(GaussRational::one() / &row.pivot_value));
        for (m, c) in &row.terms {
            let v = rest.entry(m.clone()).or_insert_with(|| CoeffMatrix::zero(d));
            *v = &*v - &factor.scale(c);
            if v.is_zero() {
                rest.remove(m);
            }
        }
        weights[r].add_assign_ref(&factor);
    }

    let mut by_unknown: HashMap<usize, CoeffMatrix> = HashMap::new();
    for (row, w) in rows.iter().zip(&weights) {
        if w.is_zero() {
            continue;
        }
        for (u, c) in &row.combination {
            by_unknown
                .entry(*u)
                .or_insert_with(|| CoeffMatrix::zero(d))
                .add_assign_ref(&w.scale(c));
        }
    }
    let mut out: PolyanalyticCoefficients = BTreeMap::new();
    let mut grouped: BTreeMap<(MultiIndex, MultiIndex), Vec<(Monomial, CoeffMatrix)>> = BTreeMap::new();
    for (u, c) in by_unknown {
        let un = &unknowns[u];
        grouped
            .entry(un.pair.clone())
            .or_default()
            .push((un.monomial.clone(), c));
    }
    for (pair, terms) in grouped {
        let q = ComplexPolynomial::from_terms(n, d, terms);
        if !q.is_zero() {
            out.insert(pair, q);
        }
    }
    Ok(out)
}

/// `Σ b^k_z b̄^{k'}_{z'} [Q_{kk'} 𝒫]`.
pub fn reconstruct_polyanalytic(
    params: &FieldParams,
    coeffs: &PolyanalyticCoefficients,
) -> Result<GaussKernel, LandauError> {
    let mut acc = GaussKernel::zero(params);
    for ((k, kp), q) in coeffs {
        let term = GaussKernel::from_poly(params, q.clone())?.apply_word(&ladder_word(k, kp))?;
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `Some(Q)` iff `K = Q·𝒫_{Λ_k}` for the single index of a simple level.
pub fn scalar_multiple_of_projection(k: &GaussKernel, level: &LandauLevel) -> Result<Option<CoeffMatrix>, LandauError> {
    if !level.is_simple() {
        return Err(LandauError::NotSimple(level.multiplicity()));
    }
    let p = projection_kernel(&level.params, &level.indices[0], ProjectionMethod::Laguerre)?;
    // The constant term of 𝒫_{Λ_k} is ∏ L_{k_j}(0) = 1, so Q is read off K's constant term.
    let q = k.q().constant_term();
    let candidate = GaussKernel::from_poly(&level.params, p.q().left_mul_matrix(&q))?;
    Ok((&candidate == k).then_some(q))
}
