#![allow(dead_code)]

use landau_core::calculus::field::{gauss, rat};
use landau_core::calculus::{
    CoeffMatrix, ComplexPolynomial, FieldParams, GaussKernel, GaussRational, Monomial, Rational,
};
use landau_core::landau::SymbolPoly;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn gauss_rational() -> impl Strategy<Value = GaussRational> {
    (small_rational(), small_rational()).prop_map(|(re, im)| gauss(re, im))
}

pub fn params(n: usize) -> impl Strategy<Value = FieldParams> {
    prop::collection::vec(positive_rational(), n).prop_map(|a| FieldParams::new(a, 1).unwrap())
}

/// Random scalar polynomial in all `4n` variables with total degree `≤ max_degree`.
pub fn polynomial(n: usize, max_terms: usize, max_degree: u32) -> impl Strategy<Value = ComplexPolynomial> {
    let term = (prop::collection::vec(0u32..=max_degree, 4 * n), gauss_rational());
    prop::collection::vec(term, 1..=max_terms).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(mut e, c)| {
            while e.iter().sum::<u32>() > max_degree {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
            }
            (Monomial::from_exponents(e), CoeffMatrix::scalar(1, c))
        });
        ComplexPolynomial::from_terms(n, 1, terms)
    })
}

/// Random symbol in `z, z̄` with total degree `≤ max_degree`.
pub fn symbol(n: usize, max_terms: usize, max_degree: u32) -> impl Strategy<Value = SymbolPoly> {
    polynomial(n, max_terms, max_degree).prop_map(move |p| {
        let kept = p.filter_terms(|m| m.side_degree(landau_core::calculus::Side::Right) == 0);
        SymbolPoly::new(kept).unwrap()
    })
}

pub fn linear_symbol(n: usize) -> impl Strategy<Value = SymbolPoly> {
    prop::collection::vec(gauss_rational(), 2 * n + 1).prop_map(move |c| {
        let mut acc = SymbolPoly::scalar(n, 1, c[0].clone());
        for j in 0..n {
            acc = &acc + &SymbolPoly::coordinate(n, 1, j, false).scale(&c[1 + 2 * j]);
            acc = &acc + &SymbolPoly::coordinate(n, 1, j, true).scale(&c[2 + 2 * j]);
        }
        acc
    })
}

pub fn kernel(params: &FieldParams, q: ComplexPolynomial) -> GaussKernel {
    GaussKernel::from_poly(params, q).unwrap()
}

pub fn random_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

pub fn random_gauss(rng: &mut ChaCha8Rng) -> GaussRational {
    gauss(
        rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
        rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
    )
}

pub fn random_params(rng: &mut ChaCha8Rng, n: usize) -> FieldParams {
    FieldParams::new((0..n).map(|_| random_rational(rng, 7, 3)).collect(), 1).unwrap()
}

pub fn random_linear(rng: &mut ChaCha8Rng, n: usize) -> SymbolPoly {
    let mut acc = SymbolPoly::scalar(n, 1, random_gauss(rng));
    for j in 0..n {
        acc = &acc + &SymbolPoly::coordinate(n, 1, j, false).scale(&random_gauss(rng));
        acc = &acc + &SymbolPoly::coordinate(n, 1, j, true).scale(&random_gauss(rng));
    }
    acc
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius)))
        .collect()
}
