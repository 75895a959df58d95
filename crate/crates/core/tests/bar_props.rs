use std::collections::BTreeMap;
use std::sync::Arc;

use dgql_core::barkoszul::{arrow_counts_by_degree, bar_complex, dual_bar, dual_bar_quiver, AugmentedFiniteAlgebra};
use dgql_core::random;
use dgql_core::trivext::{trivial_extension, twisted_dual, RadSquareZeroAlgebra};
use dgql_core::{Field, GradedQuiver};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(7)), Just(Field::Prime(2))]
}

fn b_star(q: GradedQuiver, d: i32) -> AugmentedFiniteAlgebra {
    let f = Field::Rational;
    let m = q.num_arrows();
    let r = RadSquareZeroAlgebra::new(Arc::new(q), f);
    let b = trivial_extension(&twisted_dual(&r, vec![f.one(); m], vec![f.one(); m]).unwrap(), d).unwrap();
    AugmentedFiniteAlgebra::from_finite(b.algebra()).unwrap()
}

/// Number of paths (including trivial ones) in an acyclic quiver.
fn path_count(q: &GradedQuiver) -> usize {
    q.paths_up_to_weight(q.num_vertices() as u32).len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn bar_identities(seed in any::<u64>(), f in fields()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::augmented(&mut rng, f, 3, 5, 3).unwrap();
        let bar = bar_complex(&a, 6).unwrap();
        prop_assert_eq!(bar.check_d_squared(), None);
        prop_assert_eq!(bar.check_coderivation(), None);
        prop_assert!(dual_bar(&a, 6).unwrap().check_d_squared().passed());
    }

    #[test]
    fn dualization_preserves_dimensions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::augmented(&mut rng, Field::Prime(5), 3, 4, 3).unwrap();
        let l = 4;
        let bar = bar_complex(&a, l).unwrap();
        let e = dual_bar(&a, l as u32).unwrap();
        let q = e.quiver();
        let mut paths: BTreeMap<(usize, i64), usize> = BTreeMap::new();
        for p in q.paths_up_to_weight(l as u32) {
            if !p.is_trivial() {
                *paths.entry((p.len(), -(q.path_degree(&p) as i64))).or_insert(0) += 1;
            }
        }
        prop_assert_eq!(paths, bar.dims());
    }

    #[test]
    fn recognition_shadow(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random::tree(&mut rng, 5).unwrap();
        let (n0, n1) = (q.num_vertices(), q.num_arrows());
        let paths = path_count(&q);
        let a = b_star(q, 2);
        let counts = arrow_counts_by_degree(&dual_bar_quiver(&a).unwrap());
        prop_assert_eq!(counts.get(&0).copied().unwrap_or(0), n1);
        prop_assert_eq!(counts.get(&-1).copied().unwrap_or(0), n1);
        prop_assert_eq!(counts.get(&-2).copied().unwrap_or(0), n0);
        let e = dual_bar(&a, 8).unwrap();
        let h = e.cohomology_dims((0, 0), 8).unwrap();
        prop_assert!(h.exact);
        prop_assert_eq!(h.total_in_degree(0), paths);
    }
}
