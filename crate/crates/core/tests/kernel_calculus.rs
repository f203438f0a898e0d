mod common;

use std::f64::consts::PI;

use common::*;
use landau_core::calculus::field::{gauss_int, int, rat};
use landau_core::calculus::{ComplexPolynomial, FieldParams, GaussKernel, GeneratorId, GeneratorKind, Side, Var};
use landau_core::landau::{
    fock_matrix, projection_kernel, FockLabel, FockOp, FockTruncation, MultiIndex, ProjectionMethod, SymbolPoly,
};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

#[test]
fn bergman_evaluation() {
    let p = GaussKernel::bergman(&FieldParams::scalar(&[2]).unwrap());
    assert!(close(
        p.eval_real(&[0.0, 0.0], &[0.0, 0.0])[0],
        Complex64::new(1.0 / PI, 0.0),
        1e-15
    ));
    let expected = (-0.5f64).exp() / PI;
    assert!(close(
        p.eval_real(&[1.0, 0.0], &[0.0, 0.0])[0],
        Complex64::new(expected, 0.0),
        1e-15
    ));
    let p2 = GaussKernel::bergman(&FieldParams::scalar(&[1, 1]).unwrap());
    assert!(close(
        p2.eval_real(&[0.0; 4], &[0.0; 4])[0],
        Complex64::new(0.25 / (PI * PI), 0.0),
        1e-15
    ));
    let zero = GaussKernel::zero(&FieldParams::scalar(&[1, 1]).unwrap());
    assert_eq!(
        zero.eval_real(&[0.3, 1.0, -2.0, 0.1], &[1.0; 4])[0],
        Complex64::new(0.0, 0.0)
    );
}

#[test]
fn ladder_actions_on_bergman() {
    let params = FieldParams::new(vec![rat(5, 3)], 1).unwrap();
    let p = GaussKernel::bergman(&params);
    let a = rat(5, 3);
    let var = |v| ComplexPolynomial::var(1, 1, v);
    assert!(p
        .apply_generator(GeneratorId::left(GeneratorKind::BPlus, 0))
        .unwrap()
        .is_zero());
    assert_eq!(
        p.apply_generator(GeneratorId::left(GeneratorKind::B, 0)).unwrap().q(),
        &(&var(Var::zbar(0)) - &var(Var::zpbar(0))).scale_real(&a)
    );
    assert_eq!(
        p.apply_generator(GeneratorId::left(GeneratorKind::BBar, 0))
            .unwrap()
            .q(),
        &var(Var::z(0)).scale_real(&a)
    );
}

#[test]
fn symbol_multiplication() {
    let params = FieldParams::scalar(&[1]).unwrap();
    let p = GaussKernel::bergman(&params);
    let one = ComplexPolynomial::one(1, 1);
    let z = ComplexPolynomial::var(1, 1, Var::z(0));
    assert_eq!(p.mul_symbol(&one, Side::Left).unwrap(), p);
    assert!(GaussKernel::zero(&params).mul_symbol(&z, Side::Left).unwrap().is_zero());
    assert_eq!(p.mul_symbol(&z, Side::Left).unwrap().q(), &z);
}

#[test]
fn convolution_examples() {
    let params = FieldParams::new(vec![rat(7, 2)], 1).unwrap();
    let p = GaussKernel::bergman(&params);
    assert_eq!(p.convolve(&p).unwrap(), p);
    let p1 = projection_kernel(&params, &MultiIndex::new(vec![1]), ProjectionMethod::Laguerre).unwrap();
    assert!(p1.convolve(&p).unwrap().is_zero());
    let zp = p
        .mul_symbol(&ComplexPolynomial::var(1, 1, Var::z(0)), Side::Left)
        .unwrap();
    assert_eq!(p.convolve(&zp).unwrap(), zp);
}

#[test]
fn holomorphic_multiplication_stays_on_lowest_level_in_fock_space() {
    // P∗(z·P) = z·P says M_z P = P M_z P; in the eigenbasis the part of
    // z P leaving the lowest level must vanish.
    let params = FieldParams::scalar(&[2]).unwrap();
    let trunc = FockTruncation::new(6, 6);
    let z = SymbolPoly::coordinate(1, 1, 0, false);
    let zp = fock_matrix(
        &[FockOp::Mul(z.clone()), FockOp::Project(MultiIndex::zero(1))],
        &params,
        trunc,
    )
    .unwrap();
    let pzp = fock_matrix(
        &[
            FockOp::Project(MultiIndex::zero(1)),
            FockOp::Mul(z),
            FockOp::Project(MultiIndex::zero(1)),
        ],
        &params,
        trunc,
    )
    .unwrap();
    let interior = zp.interior();
    for &i in &interior {
        for &j in &interior {
            assert!((zp.data()[(i, j)] - pzp.data()[(i, j)]).norm() < 1e-12);
        }
    }
    let ground = FockLabel {
        k: MultiIndex::zero(1),
        beta: MultiIndex::new(vec![1]),
    };
    let next = FockLabel {
        k: MultiIndex::zero(1),
        beta: MultiIndex::new(vec![2]),
    };
    // z φ_1 = (b̄/a) φ_1 = √(2·2·2)/2 φ_2.
    assert!((zp.entry(&next, &ground).unwrap().re - 8f64.sqrt() / 2.0).abs() < 1e-12);
}

#[test]
fn adjoint_examples() {
    let params = FieldParams::scalar(&[3]).unwrap();
    let p = GaussKernel::bergman(&params);
    assert_eq!(p.adjoint(), p);
    let zp = p
        .mul_symbol(&ComplexPolynomial::var(1, 1, Var::z(0)), Side::Left)
        .unwrap();
    assert_eq!(zp.adjoint().q(), &ComplexPolynomial::var(1, 1, Var::zpbar(0)));
    for k in 0..4 {
        let pk = projection_kernel(&params, &MultiIndex::new(vec![k]), ProjectionMethod::Ladder).unwrap();
        assert_eq!(pk.adjoint(), pk);
    }
}

#[test]
fn projection_diagonal_value() {
    let params = FieldParams::new(vec![rat(3, 2)], 1).unwrap();
    let p1 = projection_kernel(&params, &MultiIndex::new(vec![1]), ProjectionMethod::Ladder).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let z = random_point(&mut rng, 1, 2.0);
        let v = p1.eval(&z, &z)[0];
        assert!(close(v, Complex64::new(1.5 / (2.0 * PI), 0.0), 1e-12));
    }
}

/// `∫ F(Z, W) G(W, Z') dA(W)` by the trapezoid rule on a square large enough
/// for the Gaussian tail to drop below 1e-13.
fn quadrature_convolution(f: &GaussKernel, g: &GaussKernel, z: Complex64, zp: Complex64, a: f64) -> Complex64 {
    let half = z.norm().max(zp.norm()) + (4.0 * 40.0 / a).sqrt();
    let h = 0.08 / a.sqrt();
    let steps = (2.0 * half / h).ceil() as usize + 1;
    let h = 2.0 * half / (steps - 1) as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for ix in 0..steps {
        for iy in 0..steps {
            let w = Complex64::new(-half + ix as f64 * h, -half + iy as f64 * h);
            acc += f.eval(&[z], &[w])[0] * g.eval(&[w], &[zp])[0];
        }
    }
    acc * h * h
}

#[test]
fn convolution_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let poly = polynomial(1, 3, 2);
    for (a_num, a_den) in [(1, 1), (5, 2), (2, 3)] {
        let params = FieldParams::new(vec![rat(a_num, a_den)], 1).unwrap();
        let a = a_num as f64 / a_den as f64;
        let f = kernel(&params, poly.new_tree(&mut runner).unwrap().current());
        let g = kernel(&params, poly.new_tree(&mut runner).unwrap().current());
        let fg = f.convolve(&g).unwrap();
        let z = random_point(&mut rng, 1, 1.0)[0];
        let zp = random_point(&mut rng, 1, 1.0)[0];
        let exact = fg.eval(&[z], &[zp])[0];
        let quad = quadrature_convolution(&f, &g, z, zp, a);
        let scale = exact.norm().max(1e-3 * f.params().prefactor().powi(2));
        assert!(
            (exact - quad).norm() / scale < 1e-6,
            "a = {a}: exact {exact}, quadrature {quad}"
        );
    }
}

fn apply(k: &GaussKernel, kind: GeneratorKind, j: usize) -> GaussKernel {
    k.apply_generator(GeneratorId::left(kind, j)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ladder_commutators(params in params(2), q in polynomial(2, 4, 3), i in 0usize..2, j in 0usize..2) {
        use GeneratorKind::*;
        let k = kernel(&params, q);
        let bbp = &apply(&apply(&k, BPlus, j), B, i) - &apply(&apply(&k, B, i), BPlus, j);
        let expected = if i == j { k.scale_real(&(-(params.a_j(i) * int(2)))) } else { GaussKernel::zero(&params) };
        prop_assert_eq!(bbp, expected);
        let bb = &apply(&apply(&k, B, j), B, i) - &apply(&apply(&k, B, i), B, j);
        prop_assert!(bb.is_zero());
        let bpbp = &apply(&apply(&k, BBarPlus, j), BBarPlus, i) - &apply(&apply(&k, BBarPlus, i), BBarPlus, j);
        prop_assert!(bpbp.is_zero());
    }

    #[test]
    fn symbol_commutators(params in params(2), q in polynomial(2, 3, 2), g in symbol(2, 3, 2), j in 0usize..2) {
        use GeneratorKind::*;
        let k = kernel(&params, q);
        let gk = |k: &GaussKernel| k.mul_symbol(g.poly(), Side::Left).unwrap();
        let with_b = &gk(&apply(&k, B, j)) - &apply(&gk(&k), B, j);
        let dz = k.mul_symbol(g.derivative(j, false).poly(), Side::Left).unwrap().scale_real(&int(2));
        prop_assert_eq!(with_b, dz);
        let with_bp = &gk(&apply(&k, BPlus, j)) - &apply(&gk(&k), BPlus, j);
        let dzb = k.mul_symbol(g.derivative(j, true).poly(), Side::Left).unwrap().scale_real(&int(-2));
        prop_assert_eq!(with_bp, dzb);
    }

    #[test]
    fn adjoint_is_an_involutive_antihomomorphism(params in params(1), f in polynomial(1, 4, 3), g in polynomial(1, 4, 3)) {
        let f = kernel(&params, f);
        let g = kernel(&params, g);
        prop_assert_eq!(f.adjoint().adjoint(), f.clone());
        prop_assert_eq!(f.convolve(&g).unwrap().adjoint(), g.adjoint().convolve(&f.adjoint()).unwrap());
    }

    #[test]
    fn convolution_is_associative(params in params(2), f in polynomial(2, 3, 2), g in polynomial(2, 3, 2), h in polynomial(2, 3, 2)) {
        let (f, g, h) = (kernel(&params, f), kernel(&params, g), kernel(&params, h));
        prop_assert_eq!(
            f.convolve(&g).unwrap().convolve(&h).unwrap(),
            f.convolve(&g.convolve(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn composition_with_generators_matches_transpose(params in params(1), q in polynomial(1, 3, 2)) {
        // (K∘A)∗𝒫 and K∗(A𝒫) are both the kernel of K A P.
        let k = kernel(&params, q);
        let p = GaussKernel::bergman(&params);
        for kind in GeneratorKind::LADDER {
            let direct = k.compose_generator(kind, 0).unwrap().convolve(&p).unwrap();
            let via_kernel = k.convolve(&p.apply_generator(GeneratorId::left(kind, 0)).unwrap()).unwrap();
            prop_assert_eq!(direct, via_kernel);
        }
    }
}

#[test]
fn matrix_coefficients_compose_in_order() {
    let params = FieldParams::scalar(&[2]).unwrap().with_fiber(2);
    let x = landau_core::calculus::CoeffMatrix::from_entries(
        2,
        vec![gauss_int(0, 0), gauss_int(1, 0), gauss_int(0, 0), gauss_int(0, 0)],
    );
    let y = x.conj_transpose();
    let p = GaussKernel::bergman(&params);
    let xp = p
        .mul_symbol(&ComplexPolynomial::constant(1, x.clone()), Side::Left)
        .unwrap();
    let yp = p
        .mul_symbol(&ComplexPolynomial::constant(1, y.clone()), Side::Left)
        .unwrap();
    assert_eq!(xp.convolve(&yp).unwrap().q().constant_term(), &x * &y);
    assert_eq!(yp.convolve(&xp).unwrap().q().constant_term(), &y * &x);
    assert_ne!(&x * &y, &y * &x);
}
