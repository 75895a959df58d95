mod common;

use std::sync::Arc;

use common::oracles::diagonal_iso_exists;
use dgql_core::random;
use dgql_core::trivext::{
    cy_symmetry_check, trivial_extension, twisted_dual, verify_iso, walk_rescale_iso, RadSquareZeroAlgebra,
    TrivialExtensionAlgebra,
};
use dgql_core::{Field, GradedQuiver, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn build(q: &Arc<GradedQuiver>, f: Field, l: Vec<Scalar>, u: Vec<Scalar>, d: i32) -> TrivialExtensionAlgebra {
    let r = RadSquareZeroAlgebra::new(q.clone(), f);
    trivial_extension(&twisted_dual(&r, l, u).unwrap(), d).unwrap()
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(5)), Just(Field::Prime(7))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn walk_rescale_is_an_isomorphism(seed in any::<u64>(), f in fields(), d in 2..4i32) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = Arc::new(random::tree(&mut rng, 6).unwrap());
        let (l, u) = random::twists(&mut rng, f, q.num_arrows());
        let twisted = build(&q, f, l.clone(), u.clone(), d);
        let plain = build(&q, f, vec![f.one(); q.num_arrows()], vec![f.one(); q.num_arrows()], d);
        let phi = walk_rescale_iso(&q, f, &l, &u).unwrap();
        prop_assert!(verify_iso(&phi, &twisted, &plain).passed());
        prop_assert_eq!(twisted.graded_table(), plain.graded_table());
    }

    #[test]
    fn cy_symmetry_holds(seed in any::<u64>(), d in 2..6i32) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Field::Prime(7);
        let q = Arc::new(random::tree(&mut rng, 6).unwrap());
        let (l, u) = random::twists(&mut rng, f, q.num_arrows());
        prop_assert!(cy_symmetry_check(build(&q, f, l, u, d).algebra(), d).passed());
    }

    #[test]
    fn exhaustive_rescaling_agrees(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Field::Prime(5);
        let q = Arc::new(random::tree(&mut rng, 3).unwrap());
        let (l, u) = random::twists(&mut rng, f, q.num_arrows());
        let twisted = build(&q, f, l.clone(), u.clone(), 2);
        let plain = build(&q, f, vec![f.one(); q.num_arrows()], vec![f.one(); q.num_arrows()], 2);
        let units: Vec<Scalar> = (1..5).map(|k| f.from_i64(k)).collect();
        let r = q.num_vertices() + q.num_arrows();
        let duals: Vec<usize> = (r..twisted.algebra().dim()).collect();
        let brute = diagonal_iso_exists(twisted.algebra(), plain.algebra(), &duals, &units);
        let phi = walk_rescale_iso(&q, f, &l, &u).unwrap();
        prop_assert_eq!(brute, verify_iso(&phi, &twisted, &plain).passed());
        prop_assert!(brute);
    }
}

#[test]
fn misgraded_control_fails() {
    let f = Field::Rational;
    let mut q = GradedQuiver::new();
    q.add_vertex("1").unwrap();
    q.add_vertex("2").unwrap();
    q.add_arrow("a", "1", "2", 0, 1).unwrap();
    let q = Arc::new(q);
    let b = build(&q, f, vec![f.one()], vec![f.one()], 2);
    let mut degrees: Vec<i32> = b.algebra().basis().iter().map(|x| x.degree).collect();
    degrees[3] += 1;
    let bad = b.with_degrees(degrees).unwrap();
    assert!(!cy_symmetry_check(bad.algebra(), 2).passed());
}
