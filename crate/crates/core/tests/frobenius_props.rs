mod common;

use std::sync::Arc;

use common::oracles::{uniserial_shifted_hom, uniserial_stable_hom};
use dgql_core::algebra::FiniteAlgebra;
use dgql_core::frobenius::{
    check_self_injective, cokernel, hom_basis, uniserial_module, FDModule, ModuleMap, SelfInjectiveAlgebra,
};
use dgql_core::linalg::Matrix;
use dgql_core::random;
use dgql_core::series::groebner_with;
use dgql_core::trivext::{trivial_extension, twisted_dual, RadSquareZeroAlgebra};
use dgql_core::{Field, GradedQuiver, Path, PathSeries};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `k[x]/(x^n)` through the quotient machinery.
fn truncated_poly(f: Field, n: usize) -> FiniteAlgebra {
    let mut q = GradedQuiver::new();
    q.add_vertex("v").unwrap();
    q.add_arrow("x", "v", "v", 0, 1).unwrap();
    let q = Arc::new(q);
    let t = 2 * n as u32 + 1;
    let xn = PathSeries::monomial(q.clone(), f, t, Path::from_arrows(&q, &vec![0; n]).unwrap(), f.one());
    FiniteAlgebra::from_quotient(&groebner_with(q, f, &[xn], t).unwrap()).unwrap()
}

fn tree_extension(rng: &mut ChaCha8Rng, f: Field) -> SelfInjectiveAlgebra {
    let q = Arc::new(random::tree(rng, 4).unwrap());
    let m = q.num_arrows();
    let (l, u) = random::twists(rng, f, m);
    let r = RadSquareZeroAlgebra::new(q, f);
    let b = trivial_extension(&twisted_dual(&r, l, u).unwrap(), 2).unwrap();
    check_self_injective(b.algebra()).unwrap()
}

fn combine(rng: &mut ChaCha8Rng, f: Field, basis: &[ModuleMap], from: &FDModule, to: &FDModule) -> ModuleMap {
    let mut out = ModuleMap::zero(f, from, to);
    for h in basis {
        let c = random::small_scalar(rng, f);
        out.blocks = out
            .blocks
            .iter()
            .zip(&h.blocks)
            .map(|(a, b)| a.add(&b.scale(&c)))
            .collect();
    }
    out
}

/// A quotient of an indecomposable projective by the image of a random map.
fn random_module(rng: &mut ChaCha8Rng, l: &SelfInjectiveAlgebra) -> FDModule {
    let alg = l.algebra();
    let f = alg.field();
    let r = alg.num_vertices();
    let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
    let (pi, pj) = (l.projective(i), l.projective(j));
    let g = combine(rng, f, &hom_basis(alg, pj, pi), pj, pi);
    cokernel(alg, pi, &g).unwrap().0
}

/// `m` written in a random basis.
fn rebased(rng: &mut ChaCha8Rng, alg: &FiniteAlgebra, m: &FDModule) -> FDModule {
    let f = alg.field();
    let change: Vec<(Matrix, Matrix)> = m
        .dims()
        .iter()
        .map(|&d| loop {
            let data = (0..d * d).map(|_| random::small_scalar(rng, f)).collect();
            let p = Matrix::from_entries(f, d, d, data);
            if let Some(inv) = p.inverse() {
                break (p, inv);
            }
        })
        .collect();
    let gens = alg
        .generators()
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let b = &alg.basis()[g];
            change[b.target].0.mul(m.generator_matrix(k)).mul(&change[b.source].1)
        })
        .collect();
    FDModule::new(alg, m.dims().to_vec(), gens).unwrap()
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(3)), Just(Field::Prime(5))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn uniserial_shifted_homs_match_oracle(n in 2..5usize, a in 1..5usize, b in 1..5usize, s in -3..2i64, f in fields()) {
        let (a, b) = (a.min(n), b.min(n));
        let l = check_self_injective(&truncated_poly(f, n)).unwrap();
        let (ua, ub) = (uniserial_module(l.algebra(), a).unwrap(), uniserial_module(l.algebra(), b).unwrap());
        prop_assert_eq!(l.stable_hom(&ua, &ub).unwrap().dim, uniserial_stable_hom(f, n, a, b));
        prop_assert_eq!(l.shifted_hom(&ua, &ub, s).unwrap(), uniserial_shifted_hom(f, n, a, b, s));
    }

    #[test]
    fn positive_shifts_vanish(seed in any::<u64>(), s in 1..4i64, f in fields()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = tree_extension(&mut rng, f);
        let (m, n) = (random_module(&mut rng, &l), random_module(&mut rng, &l));
        prop_assert_eq!(l.shifted_hom(&m, &n, s).unwrap(), 0);
    }

    #[test]
    fn cosyzygy_is_adjoint_to_syzygy(seed in any::<u64>(), f in fields()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = tree_extension(&mut rng, f);
        let (m, n) = (random_module(&mut rng, &l), random_module(&mut rng, &l));
        let left = l.stable_hom(&l.cosyzygy(&m, 1).unwrap(), &n).unwrap().dim;
        let right = l.stable_hom(&m, &l.syzygy(&n, 1).unwrap()).unwrap().dim;
        prop_assert_eq!(left, right);
    }

    #[test]
    fn stable_hom_ignores_projective_summands(seed in any::<u64>(), f in fields()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = tree_extension(&mut rng, f);
        let alg = l.algebra();
        let (m, n) = (random_module(&mut rng, &l), random_module(&mut rng, &l));
        let p = l.projective(rng.gen_range(0..alg.num_vertices())).clone();
        let base = l.stable_hom(&m, &n).unwrap().dim;
        prop_assert_eq!(l.stable_hom(&FDModule::direct_sum(alg, &[m.clone(), p.clone()]), &n).unwrap().dim, base);
        prop_assert_eq!(l.stable_hom(&m, &FDModule::direct_sum(alg, &[n.clone(), p])).unwrap().dim, base);
    }

    #[test]
    fn stable_hom_ignores_bases(seed in any::<u64>(), f in fields()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = tree_extension(&mut rng, f);
        let (m, n) = (random_module(&mut rng, &l), random_module(&mut rng, &l));
        let m2 = rebased(&mut rng, l.algebra(), &m);
        prop_assert_eq!(l.stable_hom(&m, &n).unwrap().dim, l.stable_hom(&m2, &n).unwrap().dim);
    }

    #[test]
    fn syzygy_undoes_cosyzygy(seed in any::<u64>(), f in fields()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = tree_extension(&mut rng, f);
        let m = random_module(&mut rng, &l);
        let back = l.syzygy(&l.cosyzygy(&m, 1).unwrap(), 1).unwrap();
        let (x, y) = (l.strip_projectives(&back).unwrap(), l.strip_projectives(&m).unwrap());
        prop_assert_eq!(x.dims(), y.dims());
    }

    #[test]
    fn coresolutions_are_complexes(seed in any::<u64>(), len in 1..4usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = tree_extension(&mut rng, Field::Prime(5));
        let m = random_module(&mut rng, &l);
        let x = l.coresolution_complex(&m, len).unwrap();
        prop_assert!(x.is_complex());
        prop_assert_eq!(x.terms.len(), len);
    }
}

#[test]
fn simples_and_projectives_of_trivial_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let l = tree_extension(&mut rng, Field::Rational);
    let alg = l.algebra();
    for i in 0..alg.num_vertices() {
        let p = l.projective(i);
        assert!(l.strip_projectives(p).unwrap().is_zero());
        assert_eq!(l.stable_hom(p, p).unwrap().dim, 0);
        // the simple top of P_i
        let mut dims = vec![0; alg.num_vertices()];
        dims[i] = 1;
        let gens = alg
            .generators()
            .iter()
            .map(|&g| {
                let b = &alg.basis()[g];
                Matrix::zeros(alg.field(), dims[b.target], dims[b.source])
            })
            .collect();
        let s = FDModule::new(alg, dims, gens).unwrap();
        assert_eq!(l.stable_hom(&s, &s).unwrap().dim, 1);
    }
}
