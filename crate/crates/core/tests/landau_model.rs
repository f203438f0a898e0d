mod common;

use common::*;
use landau_core::calculus::field::{gauss, gauss_int, int, rat, real};
use landau_core::calculus::kernel::ladder_norm;
use landau_core::calculus::{
    CoeffMatrix, ComplexPolynomial, FieldParams, GaussKernel, GeneratorId, GeneratorKind, Monomial, Rational, Side, Var,
};
use landau_core::landau::fock::{basis_function, validate_ladder_coefficients};
use landau_core::landau::{
    compose_coefficients, decompose_polyanalytic, enumerate_levels, fock_matrix, full_projection, laguerre,
    make_admissible_f1, make_admissible_f2, model_commutator, model_toeplitz, poisson_flat, projection_kernel,
    reconstruct_polyanalytic, scalar_multiple_of_projection, FockOp, FockTruncation, LandauError, LandauLevel,
    MultiIndex, PolyanalyticCoefficients, ProjectionMethod, SymbolPoly, TaylorData, POISSON_SIGN,
};
use num_complex::Complex64;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn level_of(params: &FieldParams, k: &[u32]) -> LandauLevel {
    LandauLevel::containing(params, &MultiIndex::new(k.to_vec())).unwrap()
}

fn pk(params: &FieldParams, k: &[u32]) -> GaussKernel {
    projection_kernel(params, &MultiIndex::new(k.to_vec()), ProjectionMethod::Laguerre).unwrap()
}

fn pk_or_zero(params: &FieldParams, k: Option<MultiIndex>) -> GaussKernel {
    match k {
        Some(k) => projection_kernel(params, &k, ProjectionMethod::Laguerre).unwrap(),
        None => GaussKernel::zero(params),
    }
}

fn gen(k: &GaussKernel, kind: GeneratorKind, j: usize) -> GaussKernel {
    k.apply_generator(GeneratorId::left(kind, j)).unwrap()
}

#[test]
fn level_tables() {
    let params = FieldParams::scalar(&[1, 1]).unwrap();
    let levels = enumerate_levels(&params, &int(10)).unwrap();
    let mult: Vec<usize> = levels.iter().map(|l| l.multiplicity()).collect();
    assert_eq!(mult, vec![1, 2, 3, 4, 5]);
    let params = FieldParams::scalar(&[1, 2]).unwrap();
    let seven = enumerate_levels(&params, &int(7)).unwrap().pop().unwrap();
    assert_eq!(seven.value, int(7));
    assert_eq!(
        seven.indices,
        vec![MultiIndex::new(vec![0, 1]), MultiIndex::new(vec![2, 0])]
    );
    // every index satisfies Σ(2k_j+1)a_j = Λ
    for level in enumerate_levels(&params, &int(25)).unwrap() {
        for k in &level.indices {
            assert_eq!(params.level_value(&k.0), level.value);
        }
    }
}

#[test]
fn laguerre_values() {
    assert_eq!(laguerre(0, 0, &rat(9, 7)), int(1));
    assert_eq!(laguerre(1, 3, &rat(1, 2)), rat(7, 2));
    assert_eq!(laguerre(2, 0, &int(3)), rat(-1, 2));
}

#[test]
fn ladder_and_laguerre_projections_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=2 {
        let params = random_params(&mut rng, n);
        for k in MultiIndex::up_to(n, 4) {
            let ladder = projection_kernel(&params, &k, ProjectionMethod::Ladder).unwrap();
            let closed = projection_kernel(&params, &k, ProjectionMethod::Laguerre).unwrap();
            assert_eq!(ladder, closed, "k = {k}");
        }
    }
}

#[test]
fn projections_are_orthogonal_idempotents() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let params = random_params(&mut rng, 2);
    let ks = MultiIndex::up_to(2, 2);
    let ps: Vec<GaussKernel> = ks.iter().map(|k| pk(&params, &k.0)).collect();
    for (i, p) in ps.iter().enumerate() {
        for (j, q) in ps.iter().enumerate() {
            let pq = p.convolve(q).unwrap();
            if i == j {
                assert_eq!(&pq, p);
            } else {
                assert!(pq.is_zero(), "{} vs {}", ks[i], ks[j]);
            }
        }
    }
}

#[test]
fn degenerate_level_projection() {
    let params = FieldParams::scalar(&[1, 1]).unwrap();
    let level = level_of(&params, &[1, 0]);
    assert_eq!(level.value, int(4));
    let p = full_projection(&level).unwrap();
    assert_eq!(p, &pk(&params, &[1, 0]) + &pk(&params, &[0, 1]));
    assert_eq!(p.convolve(&p).unwrap(), p);
    for k in &level.indices {
        let sub = pk(&params, &k.0);
        assert_eq!(p.convolve(&sub).unwrap(), sub);
    }
    let simple = level_of(&params, &[0, 0]);
    assert_eq!(full_projection(&simple).unwrap(), pk(&params, &[0, 0]));
}

#[test]
fn intertwining_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 1..=2 {
        let params = random_params(&mut rng, n);
        for k in MultiIndex::up_to(n, 3) {
            let p = pk(&params, &k.0);
            for j in 0..n {
                let lower = pk_or_zero(&params, k.shifted(j, false));
                let upper = pk_or_zero(&params, k.shifted(j, true));
                assert_eq!(
                    gen(&p, GeneratorKind::BPlus, j),
                    lower.compose_generator(GeneratorKind::BPlus, j).unwrap()
                );
                assert_eq!(
                    gen(&p, GeneratorKind::B, j),
                    upper.compose_generator(GeneratorKind::B, j).unwrap()
                );
            }
        }
    }
}

/// `[F, K]` as kernels: `F(Z)K(Z,Z') - K(Z,Z')F(Z')`.
fn symbol_commutator(f: &SymbolPoly, k: &GaussKernel) -> GaussKernel {
    &k.mul_symbol(f.poly(), Side::Left).unwrap() - &k.mul_symbol(&f.on_right(), Side::Right).unwrap()
}

#[test]
fn position_commutators_with_projections() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut cases = 0;
    while cases < 24 {
        let n = rng.gen_range(1..=2);
        let params = random_params(&mut rng, n);
        let k = MultiIndex::up_to(n, 3)[rng.gen_range(0..MultiIndex::up_to(n, 3).len())].clone();
        let j = rng.gen_range(0..n);
        let inv_a = Rational::one() / params.a_j(j);
        let p = pk(&params, &k.0);
        let lower = pk_or_zero(&params, k.shifted(j, false));
        let upper = pk_or_zero(&params, k.shifted(j, true));

        let z = SymbolPoly::coordinate(n, 1, j, false);
        let lhs = symbol_commutator(&z, &p);
        let first = (&lower - &p)
            .compose_generator(GeneratorKind::BPlus, j)
            .unwrap()
            .scale_real(&inv_a);
        let second = gen(&(&p - &upper), GeneratorKind::BPlus, j).scale_real(&inv_a);
        assert_eq!(lhs, first);
        assert_eq!(lhs, second);

        let zb = SymbolPoly::coordinate(n, 1, j, true);
        let lhs = symbol_commutator(&zb, &p);
        let first = gen(&(&p - &lower), GeneratorKind::B, j).scale_real(&inv_a);
        let second = (&upper - &p)
            .compose_generator(GeneratorKind::B, j)
            .unwrap()
            .scale_real(&inv_a);
        assert_eq!(lhs, first);
        assert_eq!(lhs, second);
        cases += 1;
    }
}

#[test]
fn linear_symbol_commutator_with_projection() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..24 {
        let n = rng.gen_range(1..=2);
        let params = random_params(&mut rng, n);
        let ks = MultiIndex::up_to(n, 3);
        let k = ks[rng.gen_range(0..ks.len())].clone();
        let f = random_linear(&mut rng, n);
        let p = pk(&params, &k.0);
        let mut rhs = GaussKernel::zero(&params);
        for j in 0..n {
            let inv_a = Rational::one() / params.a_j(j);
            let fz = f.derivative(j, false).value_at_origin().get(0, 0).clone();
            let fzb = f.derivative(j, true).value_at_origin().get(0, 0).clone();
            let upper = pk_or_zero(&params, k.shifted(j, true));
            let lower = pk_or_zero(&params, k.shifted(j, false));
            let t1 = gen(&(&p - &upper), GeneratorKind::BPlus, j).scale(&fz);
            let t2 = gen(&(&p - &lower), GeneratorKind::B, j).scale(&fzb);
            rhs = &rhs + &(&t1 + &t2).scale_real(&inv_a);
        }
        assert_eq!(symbol_commutator(&f, &p), rhs);
    }
}

#[test]
fn triple_products_vanish_off_diagonal_on_degenerate_level() {
    let params = FieldParams::scalar(&[1, 1]).unwrap();
    let level = level_of(&params, &[1, 0]);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..3 {
        let f = random_linear(&mut rng, 2);
        let g = random_linear(&mut rng, 2);
        for k1 in &level.indices {
            for k in &level.indices {
                for k2 in &level.indices {
                    let p1 = pk(&params, &k1.0);
                    let pm = pk(&params, &k.0);
                    let p2 = pk(&params, &k2.0);
                    let middle = pm.mul_symbol(f.poly(), Side::Left).unwrap();
                    let right = p2.mul_symbol(g.poly(), Side::Left).unwrap();
                    let t = p1.convolve(&middle).unwrap().convolve(&right).unwrap();
                    if !(k1 == k && k == k2) {
                        assert!(t.is_zero(), "{k1} {k} {k2}");
                    }
                }
            }
        }
    }
}

fn assert_poisson_theorem(level: &LandauLevel, f: &SymbolPoly, g: &SymbolPoly) -> GaussRational {
    let comm = model_commutator(level, f, g).unwrap();
    let bracket = poisson_flat(&level.params, f, g).unwrap();
    assert!(bracket.degree().is_none_or(|d| d == 0));
    let expected = full_projection(level)
        .unwrap()
        .mul_symbol(bracket.poly(), Side::Left)
        .unwrap();
    assert_eq!(comm, expected, "level {}", level.value);
    bracket.value_at_origin().get(0, 0).clone()
}

type GaussRational = landau_core::calculus::GaussRational;

#[test]
fn model_poisson_theorem() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 1..=2 {
        let params = random_params(&mut rng, n);
        let f = random_linear(&mut rng, n);
        let g = random_linear(&mut rng, n);
        let mut constants = Vec::new();
        for k in MultiIndex::up_to(n, 2) {
            let level = LandauLevel::containing(&params, &k).unwrap();
            if level.is_simple() {
                constants.push(assert_poisson_theorem(&level, &f, &g));
            }
        }
        assert!(constants.windows(2).all(|w| w[0] == w[1]));
    }
    let params = FieldParams::scalar(&[1, 1]).unwrap();
    let level = level_of(&params, &[1, 0]);
    assert_poisson_theorem(&level, &random_linear(&mut rng, 2), &random_linear(&mut rng, 2));
}

#[test]
fn model_commutator_examples() {
    let params = FieldParams::scalar(&[1, 3]).unwrap();
    let level = level_of(&params, &[1, 0]);
    let z1 = SymbolPoly::coordinate(2, 1, 0, false);
    let zb2 = SymbolPoly::coordinate(2, 1, 1, true);
    assert!(model_commutator(&level, &z1, &z1).unwrap().is_zero());
    assert!(model_commutator(&level, &z1, &zb2).unwrap().is_zero());

    let a = 3.0;
    let params = FieldParams::scalar(&[3]).unwrap();
    let z = SymbolPoly::coordinate(1, 1, 0, false);
    let zb = SymbolPoly::coordinate(1, 1, 0, true);
    for k in 0..4u32 {
        let level = level_of(&params, &[k]);
        let comm = model_commutator(&level, &z, &zb).unwrap();
        let c = scalar_multiple_of_projection(&comm, &level).unwrap().unwrap();
        let expected = real(int(2 * POISSON_SIGN) / int(3));
        assert_eq!(c.as_scalar(), Some(expected));
        // The Fock oracle fixes the sign independently.
        let trunc = FockTruncation::new(k + 2, 12);
        let proj = FockOp::Project(MultiIndex::new(vec![k]));
        let tz = fock_matrix(&[proj.clone(), FockOp::Mul(z.clone()), proj.clone()], &params, trunc).unwrap();
        let tzb = fock_matrix(&[proj.clone(), FockOp::Mul(zb.clone()), proj], &params, trunc).unwrap();
        let fc = tz.commutator(&tzb);
        for &i in &fc.interior() {
            if fc.labels()[i].k.0[0] == k {
                let v = fc.data()[(i, i)];
                let sigma_two_over_a = POISSON_SIGN as f64 * 2.0 / a;
                assert!((v.re - sigma_two_over_a).abs() < 1e-10 * (2.0 / a) && v.im.abs() < 1e-10);
            }
        }
    }
}

#[test]
fn model_toeplitz_examples() {
    let params = FieldParams::scalar(&[2]).unwrap();
    let level = level_of(&params, &[2]);
    let one = SymbolPoly::scalar(1, 1, gauss_int(1, 0));
    assert_eq!(model_toeplitz(&level, &one).unwrap(), full_projection(&level).unwrap());

    let lowest = level_of(&params, &[0]);
    let z = SymbolPoly::coordinate(1, 1, 0, false);
    assert_eq!(model_toeplitz(&lowest, &z).unwrap().q(), z.poly());

    let params2 = params.with_fiber(2);
    let level2 = level_of(&params2, &[1]);
    let h = CoeffMatrix::from_entries(
        2,
        vec![gauss_int(1, 0), gauss_int(2, -1), gauss_int(2, 1), gauss_int(-3, 0)],
    );
    let t = model_toeplitz(&level2, &SymbolPoly::constant(1, h.clone())).unwrap();
    let p = full_projection(&level2).unwrap();
    assert_eq!(t, p.mul_symbol(&ComplexPolynomial::constant(1, h), Side::Left).unwrap());
}

#[test]
fn poisson_bracket_examples() {
    let params = FieldParams::scalar(&[2, 5]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let f = random_linear(&mut rng, 2);
    let g = random_linear(&mut rng, 2);
    assert!(poisson_flat(&params, &f, &f).unwrap().is_zero());
    let fg = poisson_flat(&params, &f, &g).unwrap();
    let gf = poisson_flat(&params, &g, &f).unwrap();
    assert_eq!(&fg + &gf, SymbolPoly::zero(2, 1));
    assert_eq!(fg.degree(), Some(0));
    let matrix = SymbolPoly::constant(2, CoeffMatrix::identity(2));
    assert_eq!(poisson_flat(&params, &matrix, &f), Err(LandauError::NotScalar(2)));
}

fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> CoeffMatrix {
    CoeffMatrix::from_entries(d, (0..d * d).map(|_| random_gauss(rng)).collect())
}

/// `c0 + c1 z + c2 z̄ + c3 z² + c4 z z̄ + c5 z̄²` with random matrix coefficients.
fn random_jet(rng: &mut ChaCha8Rng, d: usize) -> SymbolPoly {
    let exps = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
    let terms = exps.iter().map(|&(i, j)| {
        let mut m = Monomial::one(1);
        *m.exp_mut(Var::z(0)) = i;
        *m.exp_mut(Var::zbar(0)) = j;
        (m, random_matrix(rng, d))
    });
    SymbolPoly::new(ComplexPolynomial::from_terms(1, d, terms)).unwrap()
}

fn synthetic_corrections(
    params: &FieldParams,
    level: &LandauLevel,
    rng: &mut ChaCha8Rng,
) -> (GaussKernel, GaussKernel) {
    let scalar = params.with_fiber(1);
    let seed = |rng: &mut ChaCha8Rng| {
        let terms = (0..3).map(|_| {
            let e: Vec<u32> = (0..4).map(|_| rng.gen_range(0..=1)).collect();
            (Monomial::from_exponents(e), CoeffMatrix::scalar(1, random_gauss(rng)))
        });
        GaussKernel::from_poly(&scalar, ComplexPolynomial::from_terms(1, 1, terms)).unwrap()
    };
    let f1 = make_admissible_f1(&seed(rng), level).unwrap();
    let f2 = make_admissible_f2(&f1, &seed(rng), level).unwrap();
    (f1, f2)
}

#[test]
fn composition_engine_low_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for d in [1, 2] {
        let params = FieldParams::new(vec![rat(3, 2)], d).unwrap();
        let level = level_of(&params, &[1]);
        let (f1, f2) = synthetic_corrections(&params, &level, &mut rng);
        let f = random_jet(&mut rng, d);
        let g = random_jet(&mut rng, d);
        if d == 2 {
            assert_ne!(&f * &g, &g * &f);
        }
        let tf = TaylorData::from_symbol(&f, 2);
        let tg = TaylorData::from_symbol(&g, 2);
        let tfg = tf.product(&tg);
        let zero = GaussKernel::zero(&params);
        let fg = compose_coefficients(&level, &f1, &f2, &tf, &tg, 1).unwrap();
        let prod = compose_coefficients(&level, &f1, &f2, &tfg, &tfg, 1).unwrap();
        assert_eq!(fg.k_fg[0], prod.k_f[0]);
        assert_eq!(fg.k_fg[1], prod.k_f[1]);
        let plain = compose_coefficients(&level, &zero, &zero, &tf, &tg, 1).unwrap();
        let plain_prod = compose_coefficients(&level, &zero, &zero, &tfg, &tfg, 1).unwrap();
        assert_eq!(plain.k_fg[1], plain_prod.k_f[1]);
    }
}

#[test]
fn second_order_antisymmetrisation() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let params = FieldParams::new(vec![rat(5, 2)], 1).unwrap();
    for k in [0u32, 1, 2] {
        let level = level_of(&params, &[k]);
        let (f1, f2) = synthetic_corrections(&params, &level, &mut rng);
        let zero = GaussKernel::zero(&params);
        let f = random_jet(&mut rng, 1);
        let g = random_jet(&mut rng, 1);
        let tf = TaylorData::from_symbol(&f, 2);
        let tg = TaylorData::from_symbol(&g, 2);
        let p = full_projection(&level).unwrap();
        let lin = |t: &TaylorData| p.mul_symbol(t.part(1).poly(), Side::Left).unwrap();
        let (df, dg) = (lin(&tf), lin(&tg));
        let pfpgp = p.convolve(&df).unwrap().convolve(&dg).unwrap();
        let pgpfp = p.convolve(&dg).unwrap().convolve(&df).unwrap();
        let expected = &pfpgp - &pgpfp;
        for (a1, a2) in [(&f1, &f2), (&zero, &zero)] {
            let fg = compose_coefficients(&level, a1, a2, &tf, &tg, 2).unwrap();
            let gf = compose_coefficients(&level, a1, a2, &tg, &tf, 2).unwrap();
            assert_eq!(&fg.k_fg[2] - &gf.k_fg[2], expected);
        }
    }
}

#[test]
fn constraint_violation_is_reported() {
    let params = FieldParams::scalar(&[1]).unwrap();
    let level = level_of(&params, &[0]);
    let bad = GaussKernel::bergman(&params);
    let zero = GaussKernel::zero(&params);
    let f = TaylorData::from_symbol(&SymbolPoly::scalar(1, 1, gauss_int(1, 0)), 2);
    assert!(matches!(
        compose_coefficients(&level, &bad, &zero, &f, &f, 2),
        Err(LandauError::ConstraintViolation("F1"))
    ));
}

fn random_q(rng: &mut ChaCha8Rng, n: usize, d: usize) -> ComplexPolynomial {
    let terms = (0..3).map(|_| {
        let mut m = Monomial::one(n);
        for j in 0..n {
            *m.exp_mut(Var::z(j)) = rng.gen_range(0..=1);
            *m.exp_mut(Var::zpbar(j)) = rng.gen_range(0..=1);
        }
        (m, random_matrix(rng, d))
    });
    ComplexPolynomial::from_terms(n, d, terms)
}

#[test]
fn polyanalytic_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let params = FieldParams::new(vec![rat(4, 3)], 1).unwrap();
    for k in 0..=3u32 {
        let level = level_of(&params, &[k]);
        let pair = (MultiIndex::new(vec![k]), MultiIndex::new(vec![k]));
        for _ in 0..4 {
            let mut coeffs = PolyanalyticCoefficients::new();
            coeffs.insert(pair.clone(), random_q(&mut rng, 1, 1));
            let kernel = reconstruct_polyanalytic(&params, &coeffs).unwrap();
            let back = decompose_polyanalytic(&kernel, &level).unwrap();
            assert_eq!(back, coeffs);
            assert_eq!(reconstruct_polyanalytic(&params, &back).unwrap(), kernel);
        }
    }
    let p = full_projection(&level_of(&params, &[2])).unwrap();
    let q = decompose_polyanalytic(&p, &level_of(&params, &[2])).unwrap();
    let norm = Rational::one() / ladder_norm(&params, &[2]);
    let key = (MultiIndex::new(vec![2]), MultiIndex::new(vec![2]));
    assert_eq!(q[&key], ComplexPolynomial::scalar(1, 1, real(norm)));
}

#[test]
fn polyanalytic_round_trip_on_degenerate_level() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let params = FieldParams::scalar(&[1, 1]).unwrap();
    let level = level_of(&params, &[1, 0]);
    let mut coeffs = PolyanalyticCoefficients::new();
    for k in &level.indices {
        for kp in &level.indices {
            coeffs.insert((k.clone(), kp.clone()), random_q(&mut rng, 2, 1));
        }
    }
    let kernel = reconstruct_polyanalytic(&params, &coeffs).unwrap();
    assert_eq!(decompose_polyanalytic(&kernel, &level).unwrap(), coeffs);
    let c = gauss(rat(2, 3), int(1));
    let scaled = full_projection(&level).unwrap().scale(&c);
    let diag = decompose_polyanalytic(&scaled, &level).unwrap();
    assert_eq!(diag.len(), 2);
    for ((k, kp), q) in &diag {
        assert_eq!(k, kp);
        let expected = c.clone() * (Rational::one() / ladder_norm(&params, &k.0));
        assert_eq!(q.constant_term().as_scalar(), Some(expected));
    }
}

#[test]
fn fock_oracle_bootstrap_and_hermiticity() {
    assert!(validate_ladder_coefficients(1.5, 2) < 1e-9);
    let params = FieldParams::scalar(&[2]).unwrap();
    let x2 = SymbolPoly::new(
        &(SymbolPoly::coordinate(1, 1, 0, false).poly() + SymbolPoly::coordinate(1, 1, 0, true).poly())
            * &(SymbolPoly::coordinate(1, 1, 0, false).poly() + SymbolPoly::coordinate(1, 1, 0, true).poly()),
    )
    .unwrap();
    let m = fock_matrix(&[FockOp::Mul(x2)], &params, FockTruncation::new(8, 8)).unwrap();
    assert!(m.hermitian_defect() < 1e-10);
}

#[test]
fn exact_kernels_match_fock_expansion() {
    // Σ_{ij} M_ij φ_i(Z) conj φ_j(Z') over the interior block reproduces the kernel near the origin.
    let a = 2.0;
    let params = FieldParams::scalar(&[2]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let symbols = [
        SymbolPoly::coordinate(1, 1, 0, false),
        &SymbolPoly::coordinate(1, 1, 0, true) * &SymbolPoly::coordinate(1, 1, 0, false),
        &SymbolPoly::coordinate(1, 1, 0, true) * &SymbolPoly::coordinate(1, 1, 0, true),
    ];
    for k in 0..=1u32 {
        let level = level_of(&params, &[k]);
        let proj = FockOp::Project(MultiIndex::new(vec![k]));
        for f in &symbols {
            let exact = model_toeplitz(&level, f).unwrap();
            let m = fock_matrix(
                &[proj.clone(), FockOp::Mul(f.clone()), proj.clone()],
                &params,
                FockTruncation::new(k + 3, 40),
            )
            .unwrap();
            let interior = m.interior();
            for _ in 0..3 {
                let z = random_point(&mut rng, 1, 0.6)[0];
                let zp = random_point(&mut rng, 1, 0.6)[0];
                let mut sum = Complex64::new(0.0, 0.0);
                for &i in &interior {
                    for &j in &interior {
                        let v = m.data()[(i, j)];
                        if v.norm() == 0.0 {
                            continue;
                        }
                        let (li, lj) = (&m.labels()[i], &m.labels()[j]);
                        let phi_i = basis_function(a, li.k.0[0], li.beta.0[0], z);
                        let phi_j = basis_function(a, lj.k.0[0], lj.beta.0[0], zp);
                        sum += Complex64::new(v.re, v.im) * phi_i * phi_j.conj();
                    }
                }
                let direct = exact.eval(&[z], &[zp])[0];
                assert!((sum - direct).norm() < 1e-8, "k = {k}, f = {f:?}: {sum} vs {direct}");
            }
        }
    }
}

#[test]
fn wick_symbol_is_bounded_by_operator_norm() {
    let params = FieldParams::scalar(&[1]).unwrap();
    let level = level_of(&params, &[1]);
    // F = 1 + |z|²/4 is bounded by 2 on the disc |z| ≤ 2.
    let zz = &SymbolPoly::coordinate(1, 1, 0, false) * &SymbolPoly::coordinate(1, 1, 0, true);
    let f = &SymbolPoly::scalar(1, 1, gauss_int(1, 0)) + &zz.scale(&real(rat(1, 4)));
    let k = model_toeplitz(&level, &f).unwrap();
    let p = full_projection(&level).unwrap();
    let proj = FockOp::Project(MultiIndex::new(vec![1]));
    let m = fock_matrix(
        &[proj.clone(), FockOp::Mul(f), proj],
        &params,
        FockTruncation::new(3, 30),
    )
    .unwrap();
    let block = m.interior_block();
    let svd = block.singular_values().unwrap();
    let norm = svd.iter().cloned().fold(0.0f64, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let z = random_point(&mut rng, 1, 1.4);
        let ratio = k.eval(&z, &z)[0] / p.eval(&z, &z)[0];
        assert!(ratio.norm() <= 1.05 * norm, "ratio {ratio} exceeds norm {norm}");
    }
}
