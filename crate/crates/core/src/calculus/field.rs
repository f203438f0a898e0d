//! Exact scalars: rationals, Gaussian rationals and small square matrices of them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `x + iy` with exact rational parts.
pub type GaussRational = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(num: i64) -> Rational {
    BigRational::from_integer(BigInt::from(num))
}

pub fn real(r: Rational) -> GaussRational {
    Complex::new(r, Rational::zero())
}

pub fn gauss(re: Rational, im: Rational) -> GaussRational {
    Complex::new(re, im)
}

pub fn gauss_int(re: i64, im: i64) -> GaussRational {
    Complex::new(int(re), int(im))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn to_c64(z: &GaussRational) -> Complex64 {
    Complex64::new(to_f64(&z.re), to_f64(&z.im))
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// A `d x d` matrix of Gaussian rationals, row-major.
///
/// Kernel coefficients live in `End(E)`; with `d = 1` this is just a number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoeffMatrix {
    dim: usize,
    entries: Vec<GaussRational>,
}

impl CoeffMatrix {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![GaussRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, GaussRational::one())
    }

    pub fn scalar(dim: usize, c: GaussRational) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = c.clone();
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the length is not a square.
    pub fn from_entries(dim: usize, entries: Vec<GaussRational>) -> Self {
        assert_eq!(entries.len(), dim * dim, "expected {dim}x{dim} entries");
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRational {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[GaussRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// `Some(c)` when the matrix is `c` times the identity.
    pub fn as_scalar(&self) -> Option<GaussRational> {
        let c = self.get(0, 0).clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.get(i, j);
                let ok = if i == j { *e == c } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn scale_real(&self, r: &Rational) -> Self {
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|e| Complex::new(&e.re * r, &e.im * r))
                .collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zero(d);
        for i in 0..d {
            for j in 0..d {
                out.entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        out
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a = &*a + b;
        }
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.entries.iter().map(to_c64).collect()
    }
}

impl fmt::Debug for CoeffMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 1 {
            return write!(f, "{}", fmt_gauss(&self.entries[0]));
        }
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", fmt_gauss(self.get(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

pub fn fmt_gauss(z: &GaussRational) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format!("{}", z.re),
        (true, false) => format!("{}i", z.im),
        (false, false) => format!("({}+{}i)", z.re, z.im),
    }
}

impl Add for &CoeffMatrix {
    type Output = CoeffMatrix;
    fn add(self, rhs: &CoeffMatrix) -> CoeffMatrix {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &CoeffMatrix {
    type Output = CoeffMatrix;
    fn sub(self, rhs: &CoeffMatrix) -> CoeffMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        CoeffMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CoeffMatrix {
    type Output = CoeffMatrix;
    fn neg(self) -> CoeffMatrix {
        CoeffMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| -e.clone()).collect(),
        }
    }
}

impl Mul for &CoeffMatrix {
    type Output = CoeffMatrix;
    fn mul(self, rhs: &CoeffMatrix) -> CoeffMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        if d == 1 {
            return CoeffMatrix {
                dim: 1,
                entries: vec![&self.entries[0] * &rhs.entries[0]],
            };
        }
        let mut out = CoeffMatrix::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &rhs.entries[k * d + j];
                    if !b.is_zero() {
                        out.entries[i * d + j] = &out.entries[i * d + j] + a * b;
                    }
                }
            }
        }
        out
    }
}
