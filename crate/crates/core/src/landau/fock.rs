//! Truncated matrices in the eigenbasis `φ_{k,β}`: an independent floating-point oracle.
//!
//! Ladder actions on the basis:
//!
//! ```text
//! b_j  φ_{k,β} = √(2a_j(k_j+1)) φ_{k+e_j,β}      b⁺_j φ_{k,β} = √(2a_j k_j) φ_{k-e_j,β}
//! b̄_j  φ_{k,β} = √(2a_j(β_j+1)) φ_{k,β+e_j}      b̄⁺_j φ_{k,β} = √(2a_j β_j) φ_{k,β-e_j}
//! ```
//!
//! with `z_j = (b⁺_j + b̄_j)/a_j` and `z̄_j = (b_j + b̄⁺_j)/a_j`. These are checked
//! against quadrature of the explicit functions by [`validate_ladder_coefficients`].

use std::collections::HashMap;

use faer::Mat;
use num_complex::Complex64;

use super::levels::MultiIndex;
use super::symbol::SymbolPoly;
use super::LandauError;
use crate::calculus::field::to_f64;
use crate::calculus::{FieldParams, GeneratorKind, Var};

type C = faer::c64;

fn c(z: Complex64) -> C {
    C::new(z.re, z.im)
}

/// One factor of an operator word.
#[derive(Clone, Debug)]
pub enum FockOp {
    Ladder(GeneratorKind, usize),
    Mul(SymbolPoly),
    Project(MultiIndex),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FockLabel {
    pub k: MultiIndex,
    pub beta: MultiIndex,
}

/// Basis cutoff: `|k| ≤ k_max`, `|β| ≤ beta_max`. Assertions use only labels at
/// least `margin` steps inside both cutoffs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockTruncation {
    pub k_max: u32,
    pub beta_max: u32,
    pub margin: u32,
}

impl FockTruncation {
    pub fn new(k_max: u32, beta_max: u32) -> Self {
        Self {
            k_max,
            beta_max,
            margin: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FockMatrix {
    labels: Vec<FockLabel>,
    index: HashMap<FockLabel, usize>,
    trunc: FockTruncation,
    data: Mat<C>,
}

impl FockMatrix {
    pub fn labels(&self) -> &[FockLabel] {
        &self.labels
    }

    pub fn data(&self) -> &Mat<C> {
        &self.data
    }

    pub fn index_of(&self, label: &FockLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn entry(&self, row: &FockLabel, col: &FockLabel) -> Option<Complex64> {
        let (i, j) = (self.index_of(row)?, self.index_of(col)?);
        let v = self.data[(i, j)];
        Some(Complex64::new(v.re, v.im))
    }

    /// Indices of labels away from the truncation edge.
    pub fn interior(&self) -> Vec<usize> {
        let m = self.trunc.margin;
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.k.total() + m <= self.trunc.k_max && l.beta.total() + m <= self.trunc.beta_max)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn interior_block(&self) -> Mat<C> {
        let idx = self.interior();
        Mat::from_fn(idx.len(), idx.len(), |i, j| self.data[(idx[i], idx[j])])
    }

    /// Largest `|M_ij - conj(M_ji)|` over the interior block.
    pub fn hermitian_defect(&self) -> f64 {
        let b = self.interior_block();
        let mut worst = 0.0f64;
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                worst = worst.max((b[(i, j)] - b[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn product(&self, other: &Self) -> Self {
        Self {
            data: &self.data * &other.data,
            ..self.clone()
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self {
            data: &(&self.data * &other.data) - &(&other.data * &self.data),
            ..self.clone()
        }
    }
}

fn basis(n: usize, trunc: FockTruncation) -> Vec<FockLabel> {
    let mut out = Vec::new();
    for k in MultiIndex::up_to(n, trunc.k_max) {
        for beta in MultiIndex::up_to(n, trunc.beta_max) {
            out.push(FockLabel { k: k.clone(), beta });
        }
    }
    out
}

struct Builder {
    labels: Vec<FockLabel>,
    index: HashMap<FockLabel, usize>,
    a: Vec<f64>,
}

impl Builder {
    fn ladder(&self, kind: GeneratorKind, j: usize) -> Mat<C> {
        let dim = self.labels.len();
        let mut m = Mat::<C>::zeros(dim, dim);
        let a = self.a[j];
        for (col, l) in self.labels.iter().enumerate() {
            let (target, w) = match kind {
                GeneratorKind::B => (
                    l.k.shifted(j, true).map(|k| FockLabel {
                        k,
                        beta: l.beta.clone(),
                    }),
                    l.k.0[j] + 1,
                ),
                GeneratorKind::BPlus => (
                    l.k.shifted(j, false).map(|k| FockLabel {
                        k,
                        beta: l.beta.clone(),
                    }),
                    l.k.0[j],
                ),
                GeneratorKind::BBar => (
                    l.beta.shifted(j, true).map(|beta| FockLabel { k: l.k.clone(), beta }),
                    l.beta.0[j] + 1,
                ),
                GeneratorKind::BBarPlus => (
                    l.beta.shifted(j, false).map(|beta| FockLabel { k: l.k.clone(), beta }),
                    l.beta.0[j],
                ),
                GeneratorKind::MulZ => return self.position(j, false),
                GeneratorKind::MulZBar => return self.position(j, true),
            };
            if let Some(row) = target.and_then(|t| self.index.get(&t).copied()) {
                m[(row, col)] = C::new((2.0 * a * w as f64).sqrt(), 0.0);
            }
        }
        m
    }

    fn position(&self, j: usize, conj: bool) -> Mat<C> {
        let (x, y) = if conj {
            (GeneratorKind::B, GeneratorKind::BBarPlus)
        } else {
            (GeneratorKind::BPlus, GeneratorKind::BBar)
        };
        let s = &self.ladder(x, j) + &self.ladder(y, j);
        let inv = 1.0 / self.a[j];
        Mat::from_fn(s.nrows(), s.ncols(), |r, c| s[(r, c)] * inv)
    }

    fn symbol(&self, f: &SymbolPoly) -> Mat<C> {
        let dim = self.labels.len();
        let n = self.a.len();
        let pos: Vec<[Mat<C>; 2]> = (0..n)
            .map(|j| [self.position(j, false), self.position(j, true)])
            .collect();
        let mut acc = Mat::<C>::zeros(dim, dim);
        for (m, coeff) in f.poly().terms() {
            let mut term = Mat::<C>::identity(dim, dim);
            for (j, pj) in pos.iter().enumerate() {
                for (conj, var) in [(0, Var::z(j)), (1, Var::zbar(j))] {
                    for _ in 0..m.exp(var) {
                        term = &term * &pj[conj];
                    }
                }
            }
            let w = c(crate::calculus::field::to_c64(coeff.get(0, 0)));
            acc = &acc + &Mat::from_fn(dim, dim, |r, col| term[(r, col)] * w);
        }
        acc
    }

    fn projection(&self, k: &MultiIndex) -> Mat<C> {
        let dim = self.labels.len();
        Mat::from_fn(dim, dim, |r, col| {
            if r == col && &self.labels[r].k == k {
                C::new(1.0, 0.0)
            } else {
                C::new(0.0, 0.0)
            }
        })
    }
}

/// Matrix of an operator word (leftmost factor applied last) on the truncated basis.
pub fn fock_matrix(word: &[FockOp], params: &FieldParams, trunc: FockTruncation) -> Result<FockMatrix, LandauError> {
    let n = params.n();
    if params.d() != 1 {
        return Err(LandauError::NotScalar(params.d()));
    }
    for op in word {
        match op {
            FockOp::Ladder(_, j) if *j >= n => {
                return Err(LandauError::InvalidWord(format!(
                    "coordinate {j} out of range for n = {n}"
                )))
            }
            FockOp::Mul(f) if f.n() != n || f.d() != 1 => {
                return Err(LandauError::InvalidWord("symbol must be scalar with matching n".into()))
            }
            FockOp::Project(k) if k.n() != n => {
                return Err(LandauError::InvalidWord(format!(
                    "projection index {k} has wrong length"
                )))
            }
            _ => {}
        }
    }
    let labels = basis(n, trunc);
    let index: HashMap<FockLabel, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let builder = Builder {
        labels,
        index,
        a: params.a().iter().map(to_f64).collect(),
    };
    let dim = builder.labels.len();
    let mut data = Mat::<C>::identity(dim, dim);
    for op in word {
        let m = match op {
            FockOp::Ladder(kind, j) => builder.ladder(*kind, *j),
            FockOp::Mul(f) => builder.symbol(f),
            FockOp::Project(k) => builder.projection(k),
        };
        data = &data * &m;
    }
    Ok(FockMatrix {
        labels: builder.labels,
        index: builder.index,
        trunc,
        data,
    })
}

/// Polynomial in one complex variable, `Σ c_{ij} z^i z̄^j`.
type Poly1 = HashMap<(u32, u32), Complex64>;

fn apply_explicit(kind: GeneratorKind, p: &Poly1, a: f64) -> Poly1 {
    // On p·e^{-a|z|²/4}: b ↦ -2∂_z p + a z̄ p, b⁺ ↦ 2∂_z̄ p, b̄ ↦ -2∂_z̄ p + a z p, b̄⁺ ↦ 2∂_z p.
    let mut out: Poly1 = HashMap::new();
    let mut add = |key: (u32, u32), v: Complex64| *out.entry(key).or_default() += v;
    for (&(i, j), &v) in p {
        match kind {
            GeneratorKind::B => {
                if i > 0 {
                    add((i - 1, j), v * (-2.0 * i as f64));
                }
                add((i, j + 1), v * a);
            }
            GeneratorKind::BPlus => {
                if j > 0 {
                    add((i, j - 1), v * (2.0 * j as f64));
                }
            }
            GeneratorKind::BBar => {
                if j > 0 {
                    add((i, j - 1), v * (-2.0 * j as f64));
                }
                add((i + 1, j), v * a);
            }
            GeneratorKind::BBarPlus => {
                if i > 0 {
                    add((i - 1, j), v * (2.0 * i as f64));
                }
            }
            GeneratorKind::MulZ | GeneratorKind::MulZBar => unreachable!("only ladder operators are validated"),
        }
    }
    out
}

/// Explicit `φ_{k,β}` for `n = 1`, as the polynomial factor in front of `e^{-a|z|²/4}`.
fn explicit_basis(a: f64, k: u32, beta: u32) -> Poly1 {
    let fact = |m: u32| (1..=m).map(f64::from).product::<f64>();
    let norm_beta =
        (a.powi(beta as i32) * a / (2.0 * std::f64::consts::PI * 2f64.powi(beta as i32) * fact(beta))).sqrt();
    let mut p: Poly1 = HashMap::from([((beta, 0), Complex64::new(norm_beta, 0.0))]);
    for _ in 0..k {
        p = apply_explicit(GeneratorKind::B, &p, a);
    }
    let norm_k = (2f64.powi(k as i32) * a.powi(k as i32) * fact(k)).sqrt();
    p.values_mut().for_each(|v| *v /= norm_k);
    p
}

/// `φ_{k,β}(z)` for `n = 1`, evaluated from its explicit formula.
pub fn basis_function(a: f64, k: u32, beta: u32, z: Complex64) -> Complex64 {
    let p = explicit_basis(a, k, beta);
    let poly: Complex64 = p.iter().map(|(&(i, j), &v)| v * z.powu(i) * z.conj().powu(j)).sum();
    poly * (-0.25 * a * z.norm_sqr()).exp()
}

/// `⟨p, q⟩ = ∫ conj(p) q e^{-a|z|²/2} dA` by the tensor trapezoid rule on a large square.
fn inner(p: &Poly1, q: &Poly1, a: f64) -> Complex64 {
    let half = (90.0 / a).sqrt();
    let steps = 301usize;
    let h = 2.0 * half / (steps - 1) as f64;
    let eval = |poly: &Poly1, z: Complex64| -> Complex64 {
        poly.iter().map(|(&(i, j), &v)| v * z.powu(i) * z.conj().powu(j)).sum()
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for ix in 0..steps {
        for iy in 0..steps {
            let z = Complex64::new(-half + ix as f64 * h, -half + iy as f64 * h);
            let w = (-0.5 * a * z.norm_sqr()).exp();
            acc += eval(p, z).conj() * eval(q, z) * w;
        }
    }
    acc * h * h
}

/// Compares the ladder table with quadrature of the explicit basis for `n = 1` and
/// all `k, β ≤ max_index`. Returns the largest absolute discrepancy, orthonormality included.
pub fn validate_ladder_coefficients(a: f64, max_index: u32) -> f64 {
    let params = FieldParams::new(vec![rational_from_f64(a)], 1).expect("positive a");
    let trunc = FockTruncation::new(max_index + 1, max_index + 1);
    let labels: Vec<(u32, u32)> = (0..=max_index)
        .flat_map(|k| (0..=max_index).map(move |b| (k, b)))
        .collect();
    let explicit: HashMap<(u32, u32), Poly1> = (0..=max_index + 1)
        .flat_map(|k| (0..=max_index + 1).map(move |b| (k, b)))
        .map(|(k, b)| ((k, b), explicit_basis(a, k, b)))
        .collect();
    let mut worst = 0.0f64;
    for &(k1, b1) in &labels {
        for &(k2, b2) in &labels {
            let g = inner(&explicit[&(k1, b1)], &explicit[&(k2, b2)], a);
            let delta = if (k1, b1) == (k2, b2) { 1.0 } else { 0.0 };
            worst = worst.max((g - delta).norm());
        }
    }
    for kind in GeneratorKind::LADDER {
        let table = fock_matrix(&[FockOp::Ladder(kind, 0)], &params, trunc).expect("valid word");
        for &(k, b) in &labels {
            let image = apply_explicit(kind, &explicit[&(k, b)], a);
            let col = FockLabel {
                k: MultiIndex::new(vec![k]),
                beta: MultiIndex::new(vec![b]),
            };
            for (&(k2, b2), target) in &explicit {
                let row = FockLabel {
                    k: MultiIndex::new(vec![k2]),
                    beta: MultiIndex::new(vec![b2]),
                };
                let quad = inner(target, &image, a);
                let tab = table.entry(&row, &col).unwrap_or_default();
                worst = worst.max((quad - tab).norm());
            }
        }
    }
    worst
}

fn rational_from_f64(x: f64) -> crate::calculus::Rational {
    num_rational::BigRational::from_float(x).expect("finite value")
}
