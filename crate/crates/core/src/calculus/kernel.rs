//! Gaussian kernels `q(Z, Z')·𝒫(Z, Z')` and the operations that keep them closed.
//!
//! `𝒫` is the lowest-level projection kernel, normalising prefactor included:
//!
//! ```text
//! 𝒫(Z, Z') = ∏ a_j / (2π)^n · exp(-¼ Σ a_j (|z_j|² + |z'_j|² - 2 z_j z̄'_j))
//! ```
//!
//! The prefactor is irrational, so it lives with the implicit Gaussian rather
//! than in `q`. The Bergman kernel therefore has `q = 1`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::field::{binomial, factorial, int, rat, to_f64, CoeffMatrix, GaussRational, Rational};
use super::poly::{ComplexPolynomial, Monomial, Side, Slot, Var};
use super::CalculusError;

/// Complex dimension `n`, the constants `a_j` and the fibre dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    a: Vec<Rational>,
    d: usize,
}

impl FieldParams {
    pub fn new(a: Vec<Rational>, d: usize) -> Result<Self, CalculusError> {
        if a.is_empty() {
            return Err(CalculusError::InvalidParams("n must be at least 1".into()));
        }
        if d == 0 {
            return Err(CalculusError::InvalidParams("d must be at least 1".into()));
        }
        if let Some(bad) = a.iter().find(|x| !x.is_positive()) {
            return Err(CalculusError::InvalidParams(format!("a_j must be positive, got {bad}")));
        }
        Ok(Self { a, d })
    }

    /// Scalar (`d = 1`) parameters from integer constants.
    pub fn scalar(a: &[i64]) -> Result<Self, CalculusError> {
        Self::new(a.iter().map(|&x| int(x)).collect(), 1)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Rational] {
        &self.a
    }

    pub fn a_j(&self, j: usize) -> &Rational {
        &self.a[j]
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn with_fiber(&self, d: usize) -> Self {
        Self { a: self.a.clone(), d }
    }

    /// `∏ a_j / (2π)^n`, the value of `𝒫` on the diagonal.
    pub fn prefactor(&self) -> f64 {
        self.a.iter().map(|x| to_f64(x) / (2.0 * PI)).product()
    }

    /// `Σ_j (2k_j+1) a_j` for a multi-index `k`.
    pub fn level_value(&self, k: &[u32]) -> Rational {
        assert_eq!(k.len(), self.n());
        self.a
            .iter()
            .zip(k)
            .map(|(a, &kj)| a * int(2 * kj as i64 + 1))
            .fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `b = -2∂_z + ½a z̄`, raises the Landau index.
    B,
    /// `b⁺ = 2∂_z̄ + ½a z`, lowers the Landau index.
    BPlus,
    /// `b̄ = -2∂_z̄ + ½a z`, raises the index inside a level.
    BBar,
    /// `b̄⁺ = 2∂_z + ½a z̄`, lowers the index inside a level.
    BBarPlus,
    MulZ,
    MulZBar,
}

impl GeneratorKind {
    pub const LADDER: [GeneratorKind; 4] = [
        GeneratorKind::B,
        GeneratorKind::BPlus,
        GeneratorKind::BBar,
        GeneratorKind::BBarPlus,
    ];

    /// Formal transpose `A^t` with `∫(Au)v = ∫u(A^t v)`.
    pub fn transpose(self) -> Self {
        match self {
            GeneratorKind::B => GeneratorKind::BBarPlus,
            GeneratorKind::BPlus => GeneratorKind::BBar,
            GeneratorKind::BBar => GeneratorKind::BPlus,
            GeneratorKind::BBarPlus => GeneratorKind::B,
            k => k,
        }
    }
}

/// A generator acting on coordinate `coord` (zero-based) of one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorId {
    pub kind: GeneratorKind,
    pub coord: usize,
    pub side: Side,
}

impl GeneratorId {
    pub fn new(kind: GeneratorKind, coord: usize, side: Side) -> Self {
        Self { kind, coord, side }
    }
    pub fn left(kind: GeneratorKind, coord: usize) -> Self {
        Self::new(kind, coord, Side::Left)
    }
    pub fn right(kind: GeneratorKind, coord: usize) -> Self {
        Self::new(kind, coord, Side::Right)
    }
}

/// The kernel `q(Z, Z')·𝒫(Z, Z')`; only `q` is stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GaussKernel {
    params: FieldParams,
    q: ComplexPolynomial,
}

impl std::fmt::Debug for GaussKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?})·P", self.q)
    }
}

impl GaussKernel {
    pub fn from_poly(params: &FieldParams, q: ComplexPolynomial) -> Result<Self, CalculusError> {
        if q.n() != params.n() {
            return Err(CalculusError::ArityMismatch {
                expected: params.n(),
                found: q.n(),
            });
        }
        let q = match (q.d(), params.d()) {
            (a, b) if a == b => q,
            (1, d) => q.lift(d),
            (found, expected) => return Err(CalculusError::DimensionMismatch { expected, found }),
        };
        Ok(Self {
            params: params.clone(),
            q,
        })
    }

    pub fn bergman(params: &FieldParams) -> Self {
        Self {
            params: params.clone(),
            q: ComplexPolynomial::one(params.n(), params.d()),
        }
    }

    pub fn zero(params: &FieldParams) -> Self {
        Self {
            params: params.clone(),
            q: ComplexPolynomial::zero(params.n(), params.d()),
        }
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn q(&self) -> &ComplexPolynomial {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        self.with_q(self.q.scale(c))
    }

    pub fn scale_real(&self, r: &Rational) -> Self {
        self.with_q(self.q.scale_real(r))
    }

    fn with_q(&self, q: ComplexPolynomial) -> Self {
        Self {
            params: self.params.clone(),
            q,
        }
    }

    fn check_coord(&self, coord: usize) -> Result<(), CalculusError> {
        if coord >= self.params.n() {
            return Err(CalculusError::CoordinateOutOfRange {
                coord,
                n: self.params.n(),
            });
        }
        Ok(())
    }

    /// Applies a generator to `q·𝒫` in the variables of `g.side`.
    ///
    /// Every ladder operator has the form `c ∂_v + ½a m` with `v, m` among
    /// `x, x̄`. On `q·e^E` this gives `c(∂_v q + q ∂_v E) + ½a m q`, and `∂_v E`
    /// is linear.
    pub fn apply_generator(&self, g: GeneratorId) -> Result<Self, CalculusError> {
        self.check_coord(g.coord)?;
        let j = g.coord;
        let holo = Var::new(Slot::on(g.side, false), j);
        let anti = Var::new(Slot::on(g.side, true), j);
        let (c, dv, mv) = match g.kind {
            GeneratorKind::MulZ => return Ok(self.with_q(self.q.mul_var(holo))),
            GeneratorKind::MulZBar => return Ok(self.with_q(self.q.mul_var(anti))),
            GeneratorKind::B => (-2, holo, anti),
            GeneratorKind::BPlus => (2, anti, holo),
            GeneratorKind::BBar => (-2, anti, holo),
            GeneratorKind::BBarPlus => (2, holo, anti),
        };
        let a = self.params.a_j(j);
        let mut terms: HashMap<Monomial, CoeffMatrix> = HashMap::new();
        let mut push = |m: Monomial, coeff: CoeffMatrix| match terms.get_mut(&m) {
            Some(e) => e.add_assign_ref(&coeff),
            None => {
                terms.insert(m, coeff);
            }
        };
        let cr = int(c);
        let half_a = a * rat(1, 2);
        let grad = exponent_gradient(dv, a);
        for (m, coeff) in self.q.terms() {
            let e = m.exp(dv);
            if e > 0 {
                let mut dm = m.clone();
                *dm.exp_mut(dv) = e - 1;
                push(dm, coeff.scale_real(&(&cr * int(e as i64))));
            }
            for (var, w) in &grad {
                let mut mm = m.clone();
                *mm.exp_mut(*var) += 1;
                push(mm, coeff.scale_real(&(&cr * w)));
            }
            let mut mm = m.clone();
            *mm.exp_mut(mv) += 1;
            push(mm, coeff.scale_real(&half_a));
        }
        let q = ComplexPolynomial::from_hash_map(self.params.n(), self.params.d(), terms);
        Ok(self.with_q(q))
    }

    /// Applies a word of generators, rightmost first.
    pub fn apply_word(&self, word: &[GeneratorId]) -> Result<Self, CalculusError> {
        word.iter().rev().try_fold(self.clone(), |k, g| k.apply_generator(*g))
    }

    /// Kernel of the operator composition `K ∘ A` for a generator `A` on coordinate `coord`.
    pub fn compose_generator(&self, kind: GeneratorKind, coord: usize) -> Result<Self, CalculusError> {
        self.apply_generator(GeneratorId::right(kind.transpose(), coord))
    }

    /// Pointwise product with a symbol in the variables of one side.
    /// Coefficients of `s` multiply from the left for `Side::Left` and from the right otherwise.
    pub fn mul_symbol(&self, s: &ComplexPolynomial, side: Side) -> Result<Self, CalculusError> {
        if s.n() != self.params.n() {
            return Err(CalculusError::ArityMismatch {
                expected: self.params.n(),
                found: s.n(),
            });
        }
        if !s.uses_only(side) {
            return Err(CalculusError::WrongSide(side));
        }
        let s = match (s.d(), self.params.d()) {
            (a, b) if a == b => s.clone(),
            (1, d) => s.lift(d),
            (found, expected) => return Err(CalculusError::DimensionMismatch { expected, found }),
        };
        let q = match side {
            Side::Left => &s * &self.q,
            Side::Right => &self.q * &s,
        };
        Ok(self.with_q(q))
    }

    /// `(F∗G)(Z, Z') = ∫ F(Z, W) G(W, Z') dW`, in closed form.
    ///
    /// The Gaussian parts combine to `𝒫(Z, Z')` times a normalised complex
    /// Gaussian in `u = w - z`, `ū = w̄ - z̄'` with `E[u^m ū^l] = δ_{ml} m! (2/a)^m`.
    pub fn convolve(&self, other: &Self) -> Result<Self, CalculusError> {
        if self.params != other.params {
            return Err(CalculusError::ParamsMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.params));
        }
        let n = self.params.n();
        let d = self.params.d();
        let two_over_a: Vec<Rational> = self.params.a.iter().map(|a| int(2) / a).collect();

        // F grouped by its (z', z̄') exponents, G by its (z, z̄) exponents.
        let split = |q: &ComplexPolynomial, inner: Side| {
            let mut groups: HashMap<Vec<u32>, Vec<(Monomial, CoeffMatrix)>> = HashMap::new();
            for (m, c) in q.terms() {
                let mut key = Vec::with_capacity(2 * n);
                let mut rest = m.clone();
                for conj in [false, true] {
                    for j in 0..n {
                        let v = Var::new(Slot::on(inner, conj), j);
                        key.push(m.exp(v));
                        *rest.exp_mut(v) = 0;
                    }
                }
                groups.entry(key).or_default().push((rest, c.clone()));
            }
            groups
        };
        let fg = split(&self.q, Side::Right);
        let gg = split(&other.q, Side::Left);

        let mut moments: HashMap<Vec<u32>, Vec<(Monomial, Rational)>> = HashMap::new();
        let mut acc: HashMap<Monomial, CoeffMatrix> = HashMap::new();
        for (fk, fterms) in &fg {
            for (gk, gterms) in &gg {
                let ml: Vec<u32> = fk.iter().zip(gk).map(|(x, y)| x + y).collect();
                let expansion = moments
                    .entry(ml.clone())
                    .or_insert_with(|| gaussian_expansion(&ml, &two_over_a));
                for (fm, fc) in fterms {
                    for (gm, gc) in gterms {
                        let c = fc * gc;
                        if c.is_zero() {
                            continue;
                        }
                        let base: Vec<u32> = fm.exponents().iter().zip(gm.exponents()).map(|(x, y)| x + y).collect();
                        for (em, w) in expansion.iter() {
                            let exps: Vec<u32> = base.iter().zip(em.exponents()).map(|(x, y)| x + y).collect();
                            let coeff = c.scale_real(w);
                            let m = Monomial::from_exponents(exps);
                            match acc.get_mut(&m) {
                                Some(e) => e.add_assign_ref(&coeff),
                                None => {
                                    acc.insert(m, coeff);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(self.with_q(ComplexPolynomial::from_hash_map(n, d, acc)))
    }

    /// Kernel of the adjoint operator.
    pub fn adjoint(&self) -> Self {
        self.with_q(self.q.adjoint())
    }

    /// Numerical value of `q·𝒫` at complex points; `d x d`, row-major.
    pub fn eval(&self, z: &[Complex64], zp: &[Complex64]) -> Vec<Complex64> {
        let g = self.gaussian(z, zp);
        self.q.eval(z, zp).into_iter().map(|v| v * g).collect()
    }

    /// Same as [`eval`](Self::eval) with real coordinates `Z = (x_1, y_1, ..., x_n, y_n)`.
    pub fn eval_real(&self, z: &[f64], zp: &[f64]) -> Vec<Complex64> {
        self.eval(&to_complex(z), &to_complex(zp))
    }

    /// `𝒫(Z, Z')`.
    pub fn gaussian(&self, z: &[Complex64], zp: &[Complex64]) -> Complex64 {
        let mut e = Complex64::new(0.0, 0.0);
        for (j, a) in self.params.a.iter().enumerate() {
            let a = to_f64(a);
            e += -0.25 * a * (z[j].norm_sqr() + zp[j].norm_sqr() - 2.0 * z[j] * zp[j].conj());
        }
        self.params.prefactor() * e.exp()
    }
}

fn to_complex(x: &[f64]) -> Vec<Complex64> {
    assert_eq!(x.len() % 2, 0, "real coordinates come in pairs");
    x.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

/// `∂_v E` for `E = -¼ a (z z̄ + z' z̄' - 2 z z̄')` in one coordinate, as (variable, weight) pairs.
fn exponent_gradient(v: Var, a: &Rational) -> Vec<(Var, Rational)> {
    let j = v.coord;
    let q = -(a * rat(1, 4));
    let h = a * rat(1, 2);
    match v.slot {
        Slot::Z => vec![(Var::zbar(j), q), (Var::zpbar(j), h)],
        Slot::ZBar => vec![(Var::z(j), q)],
        Slot::ZPrime => vec![(Var::zpbar(j), q)],
        Slot::ZPrimeBar => vec![(Var::zp(j), q), (Var::z(j), h)],
    }
}

/// Expectation of `∏ w_j^{m_j} w̄_j^{l_j}` with `w = z + u`, `w̄ = z̄' + ū`,
/// as a polynomial in `z` and `z̄'`. `ml` holds `m` followed by `l`.
fn gaussian_expansion(ml: &[u32], two_over_a: &[Rational]) -> Vec<(Monomial, Rational)> {
    let n = two_over_a.len();
    let mut out: Vec<(Vec<u32>, Rational)> = vec![(vec![0; 4 * n], Rational::one())];
    for j in 0..n {
        let (m, l) = (ml[j], ml[n + j]);
        let mut next = Vec::with_capacity(out.len() * (m.min(l) as usize + 1));
        for s in 0..=m.min(l) {
            let w = Rational::from_integer(binomial(m, s) * binomial(l, s) * factorial(s)) * pow_rat(&two_over_a[j], s);
            for (exps, c) in &out {
                let mut e = exps.clone();
                e[j] += m - s;
                e[3 * n + j] += l - s;
                next.push((e, c * &w));
            }
        }
        out = next;
    }
    out.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)).collect()
}

fn pow_rat(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

/// `∏ a_j^{k_j}` as an exact rational.
pub fn a_power(params: &FieldParams, k: &[u32]) -> Rational {
    params
        .a
        .iter()
        .zip(k)
        .fold(Rational::one(), |acc, (a, &kj)| acc * pow_rat(a, kj))
}

/// `2^{|k|} a^k k!`, the normalisation of the ladder form of `𝒫_{Λ_k}`.
pub fn ladder_norm(params: &FieldParams, k: &[u32]) -> Rational {
    let mut r = a_power(params, k);
    for &kj in k {
        r *= Rational::from_integer(factorial(kj) * (BigInt::one() << kj as usize));
    }
    r
}

impl Add for &GaussKernel {
    type Output = GaussKernel;
    fn add(self, rhs: &GaussKernel) -> GaussKernel {
        assert_eq!(self.params, rhs.params, "kernel parameters differ");
        self.with_q(&self.q + &rhs.q)
    }
}

impl Sub for &GaussKernel {
    type Output = GaussKernel;
    fn sub(self, rhs: &GaussKernel) -> GaussKernel {
        assert_eq!(self.params, rhs.params, "kernel parameters differ");
        self.with_q(&self.q - &rhs.q)
    }
}

impl Neg for &GaussKernel {
    type Output = GaussKernel;
    fn neg(self) -> GaussKernel {
        self.with_q(-&self.q)
    }
}

/// Convenience: `c·𝒫` for a Gaussian-rational scalar.
pub fn scalar_kernel(params: &FieldParams, c: GaussRational) -> GaussKernel {
    GaussKernel::bergman(params).scale(&c)
}
