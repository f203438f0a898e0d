//! Polynomials in `z, z̄, z', z̄'` with matrix-valued Gaussian-rational coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::One;

use super::field::{int, CoeffMatrix, GaussRational, Rational};

/// Which of the two arguments of a kernel `K(Z, Z')` a variable belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `Z`, i.e. the variables `z, z̄`.
    Left,
    /// `Z'`, i.e. the variables `z', z̄'`.
    Right,
}

/// The four families of formal variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Z,
    ZBar,
    ZPrime,
    ZPrimeBar,
}

impl Slot {
    pub const ALL: [Slot; 4] = [Slot::Z, Slot::ZBar, Slot::ZPrime, Slot::ZPrimeBar];

    fn offset(self) -> usize {
        match self {
            Slot::Z => 0,
            Slot::ZBar => 1,
            Slot::ZPrime => 2,
            Slot::ZPrimeBar => 3,
        }
    }

    pub fn side(self) -> Side {
        match self {
            Slot::Z | Slot::ZBar => Side::Left,
            Slot::ZPrime | Slot::ZPrimeBar => Side::Right,
        }
    }

    /// The holomorphic (`conj = false`) or antiholomorphic slot on a side.
    pub fn on(side: Side, conj: bool) -> Slot {
        match (side, conj) {
            (Side::Left, false) => Slot::Z,
            (Side::Left, true) => Slot::ZBar,
            (Side::Right, false) => Slot::ZPrime,
            (Side::Right, true) => Slot::ZPrimeBar,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Slot::Z => "z",
            Slot::ZBar => "zb",
            Slot::ZPrime => "z'",
            Slot::ZPrimeBar => "zb'",
        }
    }
}

/// A formal variable; `coord` is zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub slot: Slot,
    pub coord: usize,
}

impl Var {
    pub fn new(slot: Slot, coord: usize) -> Self {
        Self { slot, coord }
    }
    pub fn z(coord: usize) -> Self {
        Self::new(Slot::Z, coord)
    }
    pub fn zbar(coord: usize) -> Self {
        Self::new(Slot::ZBar, coord)
    }
    pub fn zp(coord: usize) -> Self {
        Self::new(Slot::ZPrime, coord)
    }
    pub fn zpbar(coord: usize) -> Self {
        Self::new(Slot::ZPrimeBar, coord)
    }
}

/// Exponent vector over the `4n` variables, laid out slot-major:
/// `[z_1..z_n, z̄_1..z̄_n, z'_1..z'_n, z̄'_1..z̄'_n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; 4 * n].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        assert_eq!(exps.len() % 4, 0, "exponent vector length must be 4n");
        Monomial(exps.into_boxed_slice())
    }

    pub fn n(&self) -> usize {
        self.0.len() / 4
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.slot.offset() * self.n() + v.coord]
    }

    pub fn exp_mut(&mut self, v: Var) -> &mut u32 {
        let n = self.n();
        &mut self.0[v.slot.offset() * n + v.coord]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn side_degree(&self, side: Side) -> u32 {
        let n = self.n();
        let range = match side {
            Side::Left => 0..2 * n,
            Side::Right => 2 * n..4 * n,
        };
        self.0[range].iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn eval(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (e, x) in self.0.iter().zip(point) {
            if *e > 0 {
                acc *= x.powu(*e);
            }
        }
        acc
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let mut first = true;
        for slot in Slot::ALL {
            for j in 0..n {
                let e = self.exp(Var::new(slot, j));
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}{}", slot.label(), j + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Polynomial with `d x d` coefficient matrices, kept in canonical form:
/// sorted monomials, no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexPolynomial {
    n: usize,
    d: usize,
    terms: BTreeMap<Monomial, CoeffMatrix>,
}

impl ComplexPolynomial {
    pub fn zero(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: CoeffMatrix) -> Self {
        let d = c.dim();
        Self::from_terms(n, d, [(Monomial::one(n), c)])
    }

    pub fn scalar(n: usize, d: usize, c: GaussRational) -> Self {
        Self::constant(n, CoeffMatrix::scalar(d, c))
    }

    pub fn one(n: usize, d: usize) -> Self {
        Self::scalar(n, d, GaussRational::one())
    }

    pub fn var(n: usize, d: usize, v: Var) -> Self {
        assert!(v.coord < n, "coordinate {} out of range for n = {n}", v.coord);
        let mut m = Monomial::one(n);
        *m.exp_mut(v) = 1;
        Self::from_terms(n, d, [(m, CoeffMatrix::identity(d))])
    }

    /// Sums the given terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(n: usize, d: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, CoeffMatrix)>,
    {
        let mut map: BTreeMap<Monomial, CoeffMatrix> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.n(), n, "monomial arity mismatch");
            assert_eq!(c.dim(), d, "coefficient dimension mismatch");
            match map.get_mut(&m) {
                Some(existing) => existing.add_assign_ref(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Self { n, d, terms: map }
    }

    pub(crate) fn from_hash_map(n: usize, d: usize, map: HashMap<Monomial, CoeffMatrix>) -> Self {
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { n, d, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CoeffMatrix)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&CoeffMatrix> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> CoeffMatrix {
        self.coeff(&Monomial::one(self.n))
            .cloned()
            .unwrap_or_else(|| CoeffMatrix::zero(self.d))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn uses_only(&self, side: Side) -> bool {
        let other = match side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        self.terms.keys().all(|m| m.side_degree(other) == 0)
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        self.filter_terms(|m| m.degree() == degree)
    }

    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Self {
            n: self.n,
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffMatrix) -> CoeffMatrix) -> Self {
        let d = self.terms.values().next().map(|c| f(c).dim()).unwrap_or(self.d);
        Self::from_terms(self.n, d, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        self.map_coeffs(|m| m.scale(c))
    }

    pub fn scale_real(&self, r: &Rational) -> Self {
        self.map_coeffs(|m| m.scale_real(r))
    }

    /// `c · self`, the matrix acting from the left.
    pub fn left_mul_matrix(&self, c: &CoeffMatrix) -> Self {
        self.map_coeffs(|m| c * m)
    }

    /// `self · c`, the matrix acting from the right.
    pub fn right_mul_matrix(&self, c: &CoeffMatrix) -> Self {
        self.map_coeffs(|m| m * c)
    }

    /// Promotes a scalar (`d = 1`) polynomial to `d x d` scalar blocks.
    pub fn lift(&self, d: usize) -> Self {
        assert_eq!(self.d, 1, "only scalar polynomials can be lifted");
        if d == 1 {
            return self.clone();
        }
        Self::from_terms(
            self.n,
            d,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), CoeffMatrix::scalar(d, c.get(0, 0).clone()))),
        )
    }

    pub fn mul_var(&self, v: Var) -> Self {
        Self {
            n: self.n,
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = m.clone();
                    *m.exp_mut(v) += 1;
                    (m, c.clone())
                })
                .collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> Self {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(v);
            if e == 0 {
                return None;
            }
            let mut m = m.clone();
            *m.exp_mut(v) = e - 1;
            Some((m, c.scale_real(&int(e as i64))))
        });
        Self::from_terms(self.n, self.d, terms)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n, self.d);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Renames the variables of one side to the other (`z ↦ z'`, `z̄ ↦ z̄'` or back).
    pub fn move_to_side(&self, side: Side) -> Self {
        let n = self.n;
        Self::from_terms(
            n,
            self.d,
            self.terms.iter().map(|(m, c)| {
                let mut out = Monomial::one(n);
                for j in 0..n {
                    for conj in [false, true] {
                        let e = m.exp(Var::new(Slot::on(Side::Left, conj), j))
                            + m.exp(Var::new(Slot::on(Side::Right, conj), j));
                        *out.exp_mut(Var::new(Slot::on(side, conj), j)) = e;
                    }
                }
                (out, c.clone())
            }),
        )
    }

    /// `q*(Z, Z') = conj(q(Z', Z))^T`: swaps sides, conjugates variables and coefficients.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        Self::from_terms(
            n,
            self.d,
            self.terms.iter().map(|(m, c)| {
                let mut out = Monomial::one(n);
                for j in 0..n {
                    *out.exp_mut(Var::z(j)) = m.exp(Var::zpbar(j));
                    *out.exp_mut(Var::zbar(j)) = m.exp(Var::zp(j));
                    *out.exp_mut(Var::zp(j)) = m.exp(Var::zbar(j));
                    *out.exp_mut(Var::zpbar(j)) = m.exp(Var::z(j));
                }
                (out, c.conj_transpose())
            }),
        )
    }

    /// Evaluates at complex points `z` (left) and `z'` (right); `z̄` is the true conjugate.
    /// Returns the `d x d` value row-major.
    pub fn eval(&self, z: &[Complex64], zp: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(z.len(), self.n);
        assert_eq!(zp.len(), self.n);
        let point: Vec<Complex64> = z
            .iter()
            .copied()
            .chain(z.iter().map(|x| x.conj()))
            .chain(zp.iter().copied())
            .chain(zp.iter().map(|x| x.conj()))
            .collect();
        let mut out = vec![Complex64::new(0.0, 0.0); self.d * self.d];
        for (m, c) in &self.terms {
            let v = m.eval(&point);
            for (o, e) in out.iter_mut().zip(c.to_c64()) {
                *o += e * v;
            }
        }
        out
    }

    /// Evaluates with every formal variable given independently (slot-major layout).
    pub fn eval_formal(&self, point: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(point.len(), 4 * self.n);
        let mut out = vec![Complex64::new(0.0, 0.0); self.d * self.d];
        for (m, c) in &self.terms {
            let v = m.eval(point);
            for (o, e) in out.iter_mut().zip(c.to_c64()) {
                *o += e * v;
            }
        }
        out
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.n, other.n, "polynomial arity mismatch");
        assert_eq!(self.d, other.d, "coefficient dimension mismatch");
    }
}

impl fmt::Debug for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}*{m:?}")?;
        }
        Ok(())
    }
}

impl Add for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn add(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        self.check_compatible(rhs);
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(existing) => existing.add_assign_ref(c),
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ComplexPolynomial {
            n: self.n,
            d: self.d,
            terms,
        }
    }
}

impl Neg for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn neg(self) -> ComplexPolynomial {
        ComplexPolynomial {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn sub(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn mul(self, rhs: &ComplexPolynomial) -> ComplexPolynomial {
        self.check_compatible(rhs);
        let mut acc: HashMap<Monomial, CoeffMatrix> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let c = c1 * c2;
                if c.is_zero() {
                    continue;
                }
                let m = m1.mul(m2);
                match acc.get_mut(&m) {
                    Some(e) => e.add_assign_ref(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        ComplexPolynomial::from_hash_map(self.n, self.d, acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::field::{gauss_int, rat};

    fn z(j: usize) -> ComplexPolynomial {
        ComplexPolynomial::var(1.max(j + 1), 1, Var::z(j))
    }

    #[test]
    fn canonical_form_drops_cancelled_terms() {
        let p = &z(0) - &z(0);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        let q = &(&z(0) + &ComplexPolynomial::one(1, 1)) * &z(0);
        assert_eq!(q.len(), 2);
        assert_eq!(q.degree(), Some(2));
    }

    #[test]
    fn derivative_of_power() {
        let p = z(0).pow(3).scale_real(&rat(1, 2));
        let dp = p.derivative(Var::z(0));
        assert_eq!(dp, z(0).pow(2).scale_real(&rat(3, 2)));
        assert!(p.derivative(Var::zbar(0)).is_zero());
    }

    #[test]
    fn adjoint_swaps_and_conjugates() {
        let p = ComplexPolynomial::var(1, 1, Var::z(0)).scale(&gauss_int(0, 1));
        let expected = ComplexPolynomial::var(1, 1, Var::zpbar(0)).scale(&gauss_int(0, -1));
        assert_eq!(p.adjoint(), expected);
        assert_eq!(p.adjoint().adjoint(), p);
    }

    #[test]
    fn evaluation_uses_true_conjugates() {
        let n = 1;
        let p = &ComplexPolynomial::var(n, 1, Var::z(0)) * &ComplexPolynomial::var(n, 1, Var::zbar(0));
        let v = p.eval(&[Complex64::new(3.0, 4.0)], &[Complex64::new(0.0, 0.0)]);
        assert!((v[0] - Complex64::new(25.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn side_moves() {
        let p = &ComplexPolynomial::var(2, 1, Var::z(1)) * &ComplexPolynomial::var(2, 1, Var::zbar(0));
        let r = p.move_to_side(Side::Right);
        assert!(r.uses_only(Side::Right));
        assert!(!r.uses_only(Side::Left));
        assert_eq!(r.move_to_side(Side::Left), p);
    }
}
