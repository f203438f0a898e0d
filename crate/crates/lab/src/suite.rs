//! The exact identity suite behind `verify-model`.
//!
//! Every check returns `Ok(detail)` or `Err(reason)`; equality is exact on Gaussian
//! rationals except for the Fock sign check, which is floating point.

use landau_core::calculus::field::{gauss, int, rat};
use landau_core::calculus::{
    CoeffMatrix, ComplexPolynomial, FieldParams, GaussKernel, GaussRational, GeneratorId, GeneratorKind, Monomial,
    Rational, Side, Var,
};
use landau_core::landau::{
    compose_coefficients, decompose_polyanalytic, fock_matrix, full_projection, make_admissible_f1, make_admissible_f2,
    model_commutator, poisson_flat, projection_kernel, reconstruct_polyanalytic, FockOp, FockTruncation, LandauLevel,
    MultiIndex, PolyanalyticCoefficients, ProjectionMethod, SymbolPoly, TaylorData, POISSON_SIGN,
};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<String, String>;

/// One line of the ledger printed by `verify-model`.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub tag: &'static str,
    pub outcome: Outcome,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn line(&self) -> String {
        match &self.outcome {
            Ok(detail) => format!("PASS  {:<34} [{}] {}", self.name, self.tag, detail),
            Err(reason) => format!("FAIL  {:<34} [{}] {}", self.name, self.tag, reason),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub params: FieldParams,
    /// Largest `|k|` for projection and commutator checks.
    pub max_total: u32,
    /// Randomised instances per identity.
    pub instances: usize,
    pub seed: u64,
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
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

/// Random `a ∈ (ℚ_{>0})ⁿ` with small numerators and denominators.
pub fn random_params(rng: &mut ChaCha8Rng, n: usize) -> FieldParams {
    FieldParams::new((0..n).map(|_| random_rational(rng, 7, 3)).collect(), 1).expect("positive parameters")
}

pub fn random_linear(rng: &mut ChaCha8Rng, n: usize) -> SymbolPoly {
    let mut acc = SymbolPoly::scalar(n, 1, random_gauss(rng));
    for j in 0..n {
        acc = &acc + &SymbolPoly::coordinate(n, 1, j, false).scale(&random_gauss(rng));
        acc = &acc + &SymbolPoly::coordinate(n, 1, j, true).scale(&random_gauss(rng));
    }
    acc
}

fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> CoeffMatrix {
    CoeffMatrix::from_entries(d, (0..d * d).map(|_| random_gauss(rng)).collect())
}

/// Random polynomial in all `4n` variables with `terms` terms of degree `≤ max_degree`.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, terms: usize, max_degree: u32) -> ComplexPolynomial {
    let terms = (0..terms).map(|_| {
        let mut e = vec![0u32; 4 * n];
        for _ in 0..rng.gen_range(0..=max_degree) {
            e[rng.gen_range(0..4 * n)] += 1;
        }
        (Monomial::from_exponents(e), CoeffMatrix::scalar(1, random_gauss(rng)))
    });
    ComplexPolynomial::from_terms(n, 1, terms)
}

fn random_symbol(rng: &mut ChaCha8Rng, n: usize, terms: usize, max_degree: u32) -> SymbolPoly {
    let p = random_poly(rng, n, terms, max_degree).filter_terms(|m| m.side_degree(Side::Right) == 0);
    SymbolPoly::new(p).expect("left-only polynomial")
}

fn pk(params: &FieldParams, k: &MultiIndex) -> Result<GaussKernel, String> {
    projection_kernel(params, k, ProjectionMethod::Laguerre).map_err(err)
}

fn pk_or_zero(params: &FieldParams, k: Option<MultiIndex>) -> Result<GaussKernel, String> {
    match k {
        Some(k) => pk(params, &k),
        None => Ok(GaussKernel::zero(params)),
    }
}

fn gen(k: &GaussKernel, kind: GeneratorKind, j: usize) -> Result<GaussKernel, String> {
    k.apply_generator(GeneratorId::left(kind, j)).map_err(err)
}

fn level_of(params: &FieldParams, k: &MultiIndex) -> Result<LandauLevel, String> {
    LandauLevel::containing(params, k).map_err(err)
}

pub fn check_bergman_idempotent(params: &FieldParams) -> Outcome {
    let p = GaussKernel::bergman(params);
    ensure(p.convolve(&p).map_err(err)? == p, || "P∗P ≠ P".into())?;
    Ok("P∗P = P".into())
}

/// `P_k∗P_k = P_k` and `P_k∗P_k' = 0` for all `|k|, |k'| ≤ max_total`.
pub fn check_projections(params: &FieldParams, max_total: u32) -> Outcome {
    let ks = MultiIndex::up_to(params.n(), max_total);
    let ps = ks.iter().map(|k| pk(params, k)).collect::<Result<Vec<_>, _>>()?;
    let mut pairs = 0;
    for (i, p) in ps.iter().enumerate() {
        for (j, q) in ps.iter().enumerate() {
            let pq = p.convolve(q).map_err(err)?;
            if i == j {
                ensure(&pq == p, || format!("P_{} not idempotent", ks[i]))?;
            } else {
                ensure(pq.is_zero(), || format!("P_{}∗P_{} ≠ 0", ks[i], ks[j]))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{} projections, {pairs} products", ks.len()))
}

pub fn check_ladder_laguerre(params: &FieldParams, max_total: u32) -> Outcome {
    let ks = MultiIndex::up_to(params.n(), max_total);
    for k in &ks {
        let ladder = projection_kernel(params, k, ProjectionMethod::Ladder).map_err(err)?;
        let closed = projection_kernel(params, k, ProjectionMethod::Laguerre).map_err(err)?;
        ensure(ladder == closed, || format!("methods differ at k = {k}"))?;
    }
    Ok(format!("{} indices", ks.len()))
}

/// `[b_i, b⁺_j] = −2a_iδ_ij`, `[b_i, b_j] = 0`, `[b̄⁺_i, b̄⁺_j] = 0` on random kernels.
pub fn check_ladder_commutators(params: &FieldParams, rng: &mut ChaCha8Rng, instances: usize) -> Outcome {
    use GeneratorKind::*;
    let n = params.n();
    for _ in 0..instances {
        let k = GaussKernel::from_poly(params, random_poly(rng, n, 4, 3)).map_err(err)?;
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let bbp = &gen(&gen(&k, BPlus, j)?, B, i)? - &gen(&gen(&k, B, i)?, BPlus, j)?;
        let expected = if i == j {
            k.scale_real(&(-(params.a_j(i) * int(2))))
        } else {
            GaussKernel::zero(params)
        };
        ensure(bbp == expected, || format!("[b_{i}, b⁺_{j}] wrong"))?;
        let bb = &gen(&gen(&k, B, j)?, B, i)? - &gen(&gen(&k, B, i)?, B, j)?;
        ensure(bb.is_zero(), || format!("[b_{i}, b_{j}] ≠ 0"))?;
        let bpbp = &gen(&gen(&k, BBarPlus, j)?, BBarPlus, i)? - &gen(&gen(&k, BBarPlus, i)?, BBarPlus, j)?;
        ensure(bpbp.is_zero(), || format!("[b̄⁺_{i}, b̄⁺_{j}] ≠ 0"))?;
    }
    Ok(format!("{instances} instances"))
}

/// `[g, b_j] = 2∂g/∂z_j` and `[g, b⁺_j] = −2∂g/∂z̄_j` on random kernels.
pub fn check_symbol_commutators(params: &FieldParams, rng: &mut ChaCha8Rng, instances: usize) -> Outcome {
    use GeneratorKind::*;
    let n = params.n();
    for _ in 0..instances {
        let k = GaussKernel::from_poly(params, random_poly(rng, n, 3, 2)).map_err(err)?;
        let g = random_symbol(rng, n, 3, 2);
        let j = rng.gen_range(0..n);
        let gk = |k: &GaussKernel| k.mul_symbol(g.poly(), Side::Left).map_err(err);
        let with_b = &gk(&gen(&k, B, j)?)? - &gen(&gk(&k)?, B, j)?;
        let dz = k
            .mul_symbol(g.derivative(j, false).poly(), Side::Left)
            .map_err(err)?
            .scale_real(&int(2));
        ensure(with_b == dz, || format!("[g, b_{j}] wrong"))?;
        let with_bp = &gk(&gen(&k, BPlus, j)?)? - &gen(&gk(&k)?, BPlus, j)?;
        let dzb = k
            .mul_symbol(g.derivative(j, true).poly(), Side::Left)
            .map_err(err)?
            .scale_real(&int(-2));
        ensure(with_bp == dzb, || format!("[g, b⁺_{j}] wrong"))?;
    }
    Ok(format!("{instances} instances"))
}

/// `b⁺_j∘P_k = P_{k−e_j}∘b⁺_j` and `b_j∘P_k = P_{k+e_j}∘b_j`.
pub fn check_intertwining(params: &FieldParams, max_total: u32) -> Outcome {
    let ks = MultiIndex::up_to(params.n(), max_total);
    for k in &ks {
        let p = pk(params, k)?;
        for j in 0..params.n() {
            let lower = pk_or_zero(params, k.shifted(j, false))?;
            let upper = pk_or_zero(params, k.shifted(j, true))?;
            let lhs = gen(&p, GeneratorKind::BPlus, j)?;
            let rhs = lower.compose_generator(GeneratorKind::BPlus, j).map_err(err)?;
            ensure(lhs == rhs, || format!("b⁺_{j} fails at k = {k}"))?;
            let lhs = gen(&p, GeneratorKind::B, j)?;
            let rhs = upper.compose_generator(GeneratorKind::B, j).map_err(err)?;
            ensure(lhs == rhs, || format!("b_{j} fails at k = {k}"))?;
        }
    }
    Ok(format!("{} indices", ks.len()))
}

/// Kernel of `[F, K]`: `F(Z)K(Z,Z') − K(Z,Z')F(Z')`.
fn symbol_commutator(f: &SymbolPoly, k: &GaussKernel) -> Result<GaussKernel, String> {
    Ok(&k.mul_symbol(f.poly(), Side::Left).map_err(err)? - &k.mul_symbol(&f.on_right(), Side::Right).map_err(err)?)
}

struct CommutatorCase {
    params: FieldParams,
    k: MultiIndex,
    j: usize,
    p: GaussKernel,
    lower: GaussKernel,
    upper: GaussKernel,
    inv_a: Rational,
}

fn commutator_case(params: &FieldParams, max_total: u32, rng: &mut ChaCha8Rng) -> Result<CommutatorCase, String> {
    let ks = MultiIndex::up_to(params.n(), max_total);
    let k = ks[rng.gen_range(0..ks.len())].clone();
    let j = rng.gen_range(0..params.n());
    Ok(CommutatorCase {
        params: params.clone(),
        p: pk(params, &k)?,
        lower: pk_or_zero(params, k.shifted(j, false))?,
        upper: pk_or_zero(params, k.shifted(j, true))?,
        inv_a: Rational::one() / params.a_j(j),
        k,
        j,
    })
}

/// `[z_j, P_k] = a_j⁻¹(P_{k−e_j} − P_k)∘b⁺_j` and `[z̄_j, P_k] = a_j⁻¹ b_j∘(P_k − P_{k−e_j})`.
pub fn check_position_commutators(
    params: &FieldParams,
    rng: &mut ChaCha8Rng,
    instances: usize,
    max_total: u32,
) -> Outcome {
    for _ in 0..instances {
        let c = commutator_case(params, max_total, rng)?;
        let z = SymbolPoly::coordinate(c.params.n(), 1, c.j, false);
        let lhs = symbol_commutator(&z, &c.p)?;
        let rhs = (&c.lower - &c.p)
            .compose_generator(GeneratorKind::BPlus, c.j)
            .map_err(err)?
            .scale_real(&c.inv_a);
        ensure(lhs == rhs, || format!("[z_{}, P_{}] wrong", c.j, c.k))?;
        let zb = SymbolPoly::coordinate(c.params.n(), 1, c.j, true);
        let lhs = symbol_commutator(&zb, &c.p)?;
        let rhs = gen(&(&c.p - &c.lower), GeneratorKind::B, c.j)?.scale_real(&c.inv_a);
        ensure(lhs == rhs, || format!("[z̄_{}, P_{}] wrong", c.j, c.k))?;
    }
    Ok(format!("{instances} instances"))
}

/// The same commutators written with the upper neighbour: `a_j⁻¹ b⁺_j∘(P_k − P_{k+e_j})` and
/// `a_j⁻¹(P_{k+e_j} − P_k)∘b_j`.
pub fn check_position_commutators_upper(
    params: &FieldParams,
    rng: &mut ChaCha8Rng,
    instances: usize,
    max_total: u32,
) -> Outcome {
    for _ in 0..instances {
        let c = commutator_case(params, max_total, rng)?;
        let z = SymbolPoly::coordinate(c.params.n(), 1, c.j, false);
        let lhs = symbol_commutator(&z, &c.p)?;
        let rhs = gen(&(&c.p - &c.upper), GeneratorKind::BPlus, c.j)?.scale_real(&c.inv_a);
        ensure(lhs == rhs, || format!("[z_{}, P_{}] wrong", c.j, c.k))?;
        let zb = SymbolPoly::coordinate(c.params.n(), 1, c.j, true);
        let lhs = symbol_commutator(&zb, &c.p)?;
        let rhs = (&c.upper - &c.p)
            .compose_generator(GeneratorKind::B, c.j)
            .map_err(err)?
            .scale_real(&c.inv_a);
        ensure(lhs == rhs, || format!("[z̄_{}, P_{}] wrong", c.j, c.k))?;
    }
    Ok(format!("{instances} instances"))
}

/// `[F, P_k] = Σ_j a_j⁻¹(∂F/∂z_j·b⁺_j∘(P_k − P_{k+e_j}) + ∂F/∂z̄_j·b_j∘(P_k − P_{k−e_j}))` for linear `F`.
pub fn check_linear_commutators(
    params: &FieldParams,
    rng: &mut ChaCha8Rng,
    instances: usize,
    max_total: u32,
) -> Outcome {
    let n = params.n();
    let ks = MultiIndex::up_to(n, max_total);
    for _ in 0..instances {
        let k = ks[rng.gen_range(0..ks.len())].clone();
        let f = random_linear(rng, n);
        let p = pk(params, &k)?;
        let mut rhs = GaussKernel::zero(params);
        for j in 0..n {
            let inv_a = Rational::one() / params.a_j(j);
            let fz = f.derivative(j, false).value_at_origin().get(0, 0).clone();
            let fzb = f.derivative(j, true).value_at_origin().get(0, 0).clone();
            let upper = pk_or_zero(params, k.shifted(j, true))?;
            let lower = pk_or_zero(params, k.shifted(j, false))?;
            let t1 = gen(&(&p - &upper), GeneratorKind::BPlus, j)?.scale(&fz);
            let t2 = gen(&(&p - &lower), GeneratorKind::B, j)?.scale(&fzb);
            rhs = &rhs + &(&t1 + &t2).scale_real(&inv_a);
        }
        ensure(symbol_commutator(&f, &p)? == rhs, || format!("[F, P_{k}] wrong"))?;
    }
    Ok(format!("{instances} instances"))
}

/// `model_commutator = poisson_flat·P_Λ` on a level; returns the bracket constant.
pub fn poisson_constant(level: &LandauLevel, f: &SymbolPoly, g: &SymbolPoly) -> Result<GaussRational, String> {
    let comm = model_commutator(level, f, g).map_err(err)?;
    let bracket = poisson_flat(&level.params, f, g).map_err(err)?;
    ensure(bracket.degree().is_none_or(|d| d == 0), || {
        "bracket of linear symbols is not constant".into()
    })?;
    let expected = full_projection(level)
        .map_err(err)?
        .mul_symbol(bracket.poly(), Side::Left)
        .map_err(err)?;
    ensure(comm == expected, || {
        format!("commutator ≠ bracket·P at Λ = {}", level.value)
    })?;
    Ok(bracket.value_at_origin().get(0, 0).clone())
}

/// For each random pair, the identity on every simple level with `|k| ≤ max_total`, with one
/// level-independent constant.
pub fn check_model_poisson(params: &FieldParams, rng: &mut ChaCha8Rng, pairs: usize, max_total: u32) -> Outcome {
    let n = params.n();
    let mut levels = Vec::new();
    for k in MultiIndex::up_to(n, max_total) {
        let level = level_of(params, &k)?;
        if level.is_simple() {
            levels.push(level);
        }
    }
    for _ in 0..pairs {
        let f = random_linear(rng, n);
        let g = random_linear(rng, n);
        let mut constant: Option<GaussRational> = None;
        for level in &levels {
            let c = poisson_constant(level, &f, &g)?;
            if let Some(prev) = &constant {
                ensure(prev == &c, || format!("constant changes at Λ = {}", level.value))?;
            }
            constant = Some(c);
        }
    }
    Ok(format!("{pairs} pairs on {} simple levels", levels.len()))
}

/// The same identity on the degenerate level `a = (1,1)`, `Λ = 4`.
pub fn check_model_poisson_degenerate(rng: &mut ChaCha8Rng, pairs: usize) -> Outcome {
    let params = FieldParams::scalar(&[1, 1]).map_err(err)?;
    let level = level_of(&params, &MultiIndex::new(vec![1, 0]))?;
    for _ in 0..pairs {
        poisson_constant(&level, &random_linear(rng, 2), &random_linear(rng, 2))?;
    }
    Ok(format!("{pairs} pairs, multiplicity {}", level.multiplicity()))
}

/// `P_{k₁}∗F·P_k∗G·P_{k₂} = 0` unless `k₁ = k = k₂`, on `a = (1,1)`, `Λ = 4`.
pub fn check_triple_products(rng: &mut ChaCha8Rng, pairs: usize) -> Outcome {
    let params = FieldParams::scalar(&[1, 1]).map_err(err)?;
    let level = level_of(&params, &MultiIndex::new(vec![1, 0]))?;
    let ps = level
        .indices
        .iter()
        .map(|k| pk(&params, k))
        .collect::<Result<Vec<_>, _>>()?;
    for _ in 0..pairs {
        let f = random_linear(rng, 2);
        let g = random_linear(rng, 2);
        for (i1, p1) in ps.iter().enumerate() {
            for (i, pm) in ps.iter().enumerate() {
                let middle = pm.mul_symbol(f.poly(), Side::Left).map_err(err)?;
                for (i2, p2) in ps.iter().enumerate() {
                    if i1 == i && i == i2 {
                        continue;
                    }
                    let right = p2.mul_symbol(g.poly(), Side::Left).map_err(err)?;
                    let t = p1.convolve(&middle).map_err(err)?.convolve(&right).map_err(err)?;
                    ensure(t.is_zero(), || format!("triple product ({i1},{i},{i2}) ≠ 0"))?;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

/// `[P z P, P z̄ P]` in the Fock oracle against `σ(2/a)` on the interior block; returns the
/// largest relative deviation.
pub fn fock_sign_deviation(a: &Rational, k: u32, beta_max: u32) -> Result<f64, String> {
    let params = FieldParams::new(vec![a.clone()], 1).map_err(err)?;
    let a_f = landau_core::calculus::field::to_f64(a);
    let proj = FockOp::Project(MultiIndex::new(vec![k]));
    let trunc = FockTruncation::new(k + 2, beta_max);
    let z = SymbolPoly::coordinate(1, 1, 0, false);
    let zb = SymbolPoly::coordinate(1, 1, 0, true);
    let tz = fock_matrix(&[proj.clone(), FockOp::Mul(z), proj.clone()], &params, trunc).map_err(err)?;
    let tzb = fock_matrix(&[proj.clone(), FockOp::Mul(zb), proj], &params, trunc).map_err(err)?;
    let comm = tz.commutator(&tzb);
    let expected = POISSON_SIGN as f64 * 2.0 / a_f;
    let interior = comm.interior();
    let mut worst: f64 = 0.0;
    let mut seen = 0;
    for &i in &interior {
        for &j in &interior {
            let target = if i == j && comm.labels()[i].k.0[0] == k {
                seen += 1;
                expected
            } else {
                0.0
            };
            let v = comm.data()[(i, j)];
            worst = worst.max(((v.re - target).powi(2) + v.im.powi(2)).sqrt() / expected.abs());
        }
    }
    ensure(seen > 0, || "empty interior block".into())?;
    Ok(worst)
}

pub fn check_fock_sign(a: &Rational, max_k: u32) -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..=max_k {
        worst = worst.max(fock_sign_deviation(a, k, 12)?);
    }
    ensure(worst < 1e-6, || format!("relative deviation {worst:e}"))?;
    Ok(format!("σ = {POISSON_SIGN}, relative deviation {worst:.1e}"))
}

fn random_jet(rng: &mut ChaCha8Rng, n: usize, d: usize) -> SymbolPoly {
    let mut terms = Vec::new();
    for e in MultiIndex::up_to(2 * n, 2) {
        let mut m = Monomial::one(n);
        for j in 0..n {
            *m.exp_mut(Var::z(j)) = e.0[j];
            *m.exp_mut(Var::zbar(j)) = e.0[n + j];
        }
        terms.push((m, random_matrix(rng, d)));
    }
    SymbolPoly::new(ComplexPolynomial::from_terms(n, d, terms)).expect("left-only polynomial")
}

/// `F₁ = A(S)` and `F₂ = F₁∗F₁ − 2P∗F₁∗F₁∗P + A(S₂)` from random scalar seeds.
pub fn synthetic_corrections(level: &LandauLevel, rng: &mut ChaCha8Rng) -> Result<(GaussKernel, GaussKernel), String> {
    let scalar = level.params.with_fiber(1);
    let n = scalar.n();
    let mut seed = || {
        let terms = (0..3).map(|_| {
            let e: Vec<u32> = (0..4 * n).map(|_| rng.gen_range(0..=1)).collect();
            (Monomial::from_exponents(e), CoeffMatrix::scalar(1, random_gauss(rng)))
        });
        GaussKernel::from_poly(&scalar, ComplexPolynomial::from_terms(n, 1, terms)).map_err(err)
    };
    let s1 = seed()?;
    let s2 = seed()?;
    let f1 = make_admissible_f1(&s1, level).map_err(err)?;
    let f2 = make_admissible_f2(&f1, &s2, level).map_err(err)?;
    Ok((f1, f2))
}

/// `K₀(f,g) = K₀(fg)`, `K₁(f,g) = K₁(fg)` and the antisymmetrised second coefficient.
pub fn check_composition(params: &FieldParams, rng: &mut ChaCha8Rng, instances: usize) -> Outcome {
    let n = params.n();
    let mut non_commuting = 0;
    for (case, d) in (0..instances).map(|i| (i, if i % 3 == 2 { 2 } else { params.d() })) {
        let params = params.with_fiber(d);
        let ks = MultiIndex::up_to(n, 1);
        let level = level_of(&params, &ks[case % ks.len()])?;
        if !level.is_simple() {
            continue;
        }
        let (f1, f2) = synthetic_corrections(&level, rng)?;
        let zero = GaussKernel::zero(&params);
        let f = random_jet(rng, n, d);
        let g = random_jet(rng, n, d);
        if &f * &g != &g * &f {
            non_commuting += 1;
        }
        let tf = TaylorData::from_symbol(&f, 2);
        let tg = TaylorData::from_symbol(&g, 2);
        let tfg = tf.product(&tg);
        for (a1, a2) in [(&f1, &f2), (&zero, &zero)] {
            let fg = compose_coefficients(&level, a1, a2, &tf, &tg, 1).map_err(err)?;
            let prod = compose_coefficients(&level, a1, a2, &tfg, &tfg, 1).map_err(err)?;
            ensure(fg.k_fg[0] == prod.k_f[0], || "K₀(f,g) ≠ K₀(fg)".into())?;
            ensure(fg.k_fg[1] == prod.k_f[1], || "K₁(f,g) ≠ K₁(fg)".into())?;
        }
        if d == 1 {
            let p = full_projection(&level).map_err(err)?;
            let lin = |t: &TaylorData| p.mul_symbol(t.part(1).poly(), Side::Left).map_err(err);
            let (df, dg) = (lin(&tf)?, lin(&tg)?);
            let fgp = p.convolve(&df).map_err(err)?.convolve(&dg).map_err(err)?;
            let gfp = p.convolve(&dg).map_err(err)?.convolve(&df).map_err(err)?;
            let expected = &fgp - &gfp;
            for (a1, a2) in [(&f1, &f2), (&zero, &zero)] {
                let fg = compose_coefficients(&level, a1, a2, &tf, &tg, 2).map_err(err)?;
                let gf = compose_coefficients(&level, a1, a2, &tg, &tf, 2).map_err(err)?;
                ensure(&fg.k_fg[2] - &gf.k_fg[2] == expected, || {
                    "K₂(f,g) − K₂(g,f) wrong".into()
                })?;
            }
        }
    }
    ensure(non_commuting > 0, || {
        "no non-commuting matrix pair was exercised".into()
    })?;
    Ok(format!("{instances} instances, {non_commuting} non-commuting pairs"))
}

/// Random `Q_{kk'}(z, z̄')` with exponents `≤ 1` in each variable.
pub fn random_q(rng: &mut ChaCha8Rng, n: usize, d: usize) -> ComplexPolynomial {
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

/// Decompose/reconstruct on `per_level` random reproducing kernels for every level with `|k| ≤ max_total`.
pub fn check_polyanalytic(params: &FieldParams, rng: &mut ChaCha8Rng, per_level: usize, max_total: u32) -> Outcome {
    let n = params.n();
    let mut levels: Vec<LandauLevel> = Vec::new();
    for k in MultiIndex::up_to(n, max_total) {
        let level = level_of(params, &k)?;
        if !levels.iter().any(|l| l.value == level.value) {
            levels.push(level);
        }
    }
    for level in &levels {
        for _ in 0..per_level {
            let mut coeffs = PolyanalyticCoefficients::new();
            for k in &level.indices {
                for kp in &level.indices {
                    let q = random_q(rng, n, params.d());
                    if !q.is_zero() {
                        coeffs.insert((k.clone(), kp.clone()), q);
                    }
                }
            }
            let kernel = reconstruct_polyanalytic(params, &coeffs).map_err(err)?;
            let back = decompose_polyanalytic(&kernel, level).map_err(err)?;
            ensure(back == coeffs, || format!("round trip differs at Λ = {}", level.value))?;
        }
    }
    Ok(format!("{per_level} kernels on each of {} levels", levels.len()))
}

fn push(out: &mut Vec<Check>, name: &'static str, tag: &'static str, outcome: Outcome) {
    out.push(Check { name, tag, outcome });
}

/// Runs every exact identity for the given parameters.
pub fn run_exact_suite(opts: &SuiteOptions) -> Vec<Check> {
    let params = &opts.params;
    let scalar = params.with_fiber(1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let m = opts.max_total;
    let inst = opts.instances;
    let mut out = Vec::new();
    push(
        &mut out,
        "bergman idempotent",
        "bergman",
        check_bergman_idempotent(params),
    );
    push(
        &mut out,
        "projections idempotent/orthogonal",
        "level-projection",
        check_projections(&scalar, m),
    );
    push(
        &mut out,
        "ladder = laguerre",
        "level-projection",
        check_ladder_laguerre(&scalar, m),
    );
    push(
        &mut out,
        "ladder commutators",
        "ladder-algebra",
        check_ladder_commutators(&scalar, &mut rng, inst),
    );
    push(
        &mut out,
        "symbol/ladder commutators",
        "ladder-algebra",
        check_symbol_commutators(&scalar, &mut rng, inst),
    );
    push(
        &mut out,
        "intertwining",
        "level-projection",
        check_intertwining(&scalar, m),
    );
    push(
        &mut out,
        "[z, P_k] lower form",
        "position-commutator",
        check_position_commutators(&scalar, &mut rng, inst, m),
    );
    push(
        &mut out,
        "[z, P_k] upper form",
        "position-commutator",
        check_position_commutators_upper(&scalar, &mut rng, inst, m),
    );
    push(
        &mut out,
        "[F, P_k] linear F",
        "position-commutator",
        check_linear_commutators(&scalar, &mut rng, inst, m),
    );
    push(
        &mut out,
        "model commutator = bracket·P",
        "linear-model",
        check_model_poisson(&scalar, &mut rng, 3, m),
    );
    push(
        &mut out,
        "degenerate level commutator",
        "linear-model",
        check_model_poisson_degenerate(&mut rng, 3),
    );
    push(
        &mut out,
        "triple products vanish",
        "linear-model",
        check_triple_products(&mut rng, 2),
    );
    push(
        &mut out,
        "Fock sign of the bracket",
        "fock-oracle",
        check_fock_sign(scalar.a_j(0), m),
    );
    push(
        &mut out,
        "composition coefficients",
        "composition",
        check_composition(params, &mut rng, 6),
    );
    push(
        &mut out,
        "polyanalytic round trip",
        "polyanalytic",
        check_polyanalytic(&scalar, &mut rng, 3, m.min(3)),
    );
    out
}
