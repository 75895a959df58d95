mod common;

use std::sync::Arc;

use common::oracles::quotient_by_weight;
use dgql_core::quiver::ArrowId;
use dgql_core::series::groebner_with;
use dgql_core::{Field, GradedQuiver, Path, PathSeries, Scalar};
use proptest::prelude::*;

const N: u32 = 6;

fn two_vertex() -> Arc<GradedQuiver> {
    let mut q = GradedQuiver::new();
    q.add_vertex("1").unwrap();
    q.add_vertex("2").unwrap();
    q.add_arrow("x", "1", "1", 0, 1).unwrap();
    q.add_arrow("a", "1", "2", 0, 1).unwrap();
    q.add_arrow("y", "2", "2", 0, 2).unwrap();
    q.add_arrow("b", "2", "1", 0, 1).unwrap();
    Arc::new(q)
}

fn two_loops() -> Arc<GradedQuiver> {
    let mut q = GradedQuiver::new();
    q.add_vertex("v").unwrap();
    q.add_arrow("x", "v", "v", 0, 1).unwrap();
    q.add_arrow("y", "v", "v", 0, 1).unwrap();
    Arc::new(q)
}

/// Follows `choices` from `start`, picking among the outgoing arrows.
fn walk(q: &GradedQuiver, start: usize, choices: &[usize]) -> Path {
    let mut arrows = Vec::new();
    let mut at = start;
    for c in choices {
        let out: Vec<ArrowId> = q.arrows_from(at).collect();
        let a = out[c % out.len()];
        arrows.push(a);
        at = q.arrow(a).target;
    }
    if arrows.is_empty() {
        return Path::trivial(start);
    }
    Path::from_arrows(q, &arrows).unwrap()
}

type RawSeries = Vec<(usize, Vec<usize>, i64)>;

fn raw_series() -> impl Strategy<Value = RawSeries> {
    prop::collection::vec((0..2usize, prop::collection::vec(0..4usize, 0..4), -3..4i64), 0..5)
}

fn series(q: &Arc<GradedQuiver>, f: Field, raw: &RawSeries) -> PathSeries {
    PathSeries::from_terms(
        q.clone(),
        f,
        N,
        raw.iter().map(|(s, c, k)| (walk(q, *s, c), f.from_i64(*k))),
    )
}

/// Raw generators on the one-vertex quiver: words of length 1..=3.
fn raw_gens() -> impl Strategy<Value = Vec<Vec<(Vec<usize>, i64)>>> {
    prop::collection::vec(
        prop::collection::vec((prop::collection::vec(0..2usize, 1..4), -2..3i64), 1..4),
        1..4,
    )
}

fn gens(f: Field, raw: &[Vec<(Vec<usize>, i64)>]) -> Vec<Vec<(Vec<ArrowId>, Scalar)>> {
    raw.iter()
        .map(|g| {
            let mut terms: std::collections::BTreeMap<Vec<usize>, Scalar> = Default::default();
            for (w, c) in g {
                let e = terms.entry(w.clone()).or_insert_with(|| f.zero());
                *e = &*e + &f.from_i64(*c);
            }
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>()
        })
        .filter(|g| !g.is_empty())
        .collect()
}

fn to_series(q: &Arc<GradedQuiver>, f: Field, n: u32, g: &[(Vec<ArrowId>, Scalar)]) -> PathSeries {
    PathSeries::from_terms(
        q.clone(),
        f,
        n,
        g.iter().map(|(w, c)| (Path::from_arrows(q, w).unwrap(), c.clone())),
    )
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(5))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn product_is_associative_and_distributive(a in raw_series(), b in raw_series(), c in raw_series(), f in fields()) {
        let q = two_vertex();
        let (x, y, z) = (series(&q, f, &a), series(&q, f, &b), series(&q, f, &c));
        let l = x.mul(&y).unwrap().mul(&z).unwrap();
        let r = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        let d1 = x.mul(&y.add(&z).unwrap()).unwrap();
        let d2 = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(d1, d2);
    }

    #[test]
    fn truncation_commutes_with_products(a in raw_series(), b in raw_series(), m in 1..N) {
        let q = two_vertex();
        let f = Field::Rational;
        let (x, y) = (series(&q, f, &a), series(&q, f, &b));
        let early = x.truncate(m).mul(&y.truncate(m)).unwrap().truncate(m);
        let late = x.mul(&y).unwrap().truncate(m);
        prop_assert_eq!(early, late);
    }

    #[test]
    fn quotient_matches_span_oracle(raw in raw_gens(), f in fields()) {
        let q = two_loops();
        let g = gens(f, &raw);
        prop_assume!(!g.is_empty());
        let n = 5;
        let series: Vec<PathSeries> = g.iter().map(|t| to_series(&q, f, n, t)).collect();
        let dims = groebner_with(q.clone(), f, &series, n).unwrap().quotient_dims();
        let oracle = quotient_by_weight(&q, f, &g, n);
        prop_assert_eq!(dims.total, oracle.iter().sum::<usize>());
        // weightwise counts of normal words are canonical only for homogeneous ideals
        if series.iter().all(PathSeries::is_weight_homogeneous) {
            prop_assert_eq!(dims.by_weight, oracle);
        }
    }

    #[test]
    fn quotient_ignores_generator_order(raw in raw_gens(), seed in any::<u64>()) {
        let q = two_loops();
        let f = Field::Prime(3);
        let g = gens(f, &raw);
        prop_assume!(!g.is_empty());
        let n = 5;
        let mut series: Vec<PathSeries> = g.iter().map(|t| to_series(&q, f, n, t)).collect();
        let before = groebner_with(q.clone(), f, &series, n).unwrap().quotient_dims();
        let k = (seed % series.len() as u64) as usize;
        series.rotate_left(k);
        series.reverse();
        let after = groebner_with(q.clone(), f, &series, n).unwrap().quotient_dims();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn quotient_ignores_tie_breaking(raw in raw_gens()) {
        // swapping the names of x and y swaps their order among same-weight words
        let f = Field::Rational;
        let q = two_loops();
        let mut r = GradedQuiver::new();
        r.add_vertex("v").unwrap();
        r.add_arrow("y", "v", "v", 0, 1).unwrap();
        r.add_arrow("x", "v", "v", 0, 1).unwrap();
        let r = Arc::new(r);
        let g = gens(f, &raw);
        prop_assume!(!g.is_empty());
        let n = 5;
        let s1: Vec<PathSeries> = g.iter().map(|t| to_series(&q, f, n, t)).collect();
        let s2: Vec<PathSeries> = g.iter().map(|t| to_series(&r, f, n, t)).collect();
        let d1 = groebner_with(q, f, &s1, n).unwrap().quotient_dims();
        let d2 = groebner_with(r, f, &s2, n).unwrap().quotient_dims();
        prop_assert_eq!(d1.total, d2.total);
        if s1.iter().all(PathSeries::is_weight_homogeneous) {
            prop_assert_eq!(d1.by_weight, d2.by_weight);
        }
    }

    #[test]
    fn homogeneous_quotients_are_stable(words in prop::collection::vec((prop::collection::vec(0..2usize, 2..=2), prop::collection::vec(0..2usize, 2..=2), -2..3i64), 1..3)) {
        // generators x_i x_j + c x_k x_l of weight 2
        let q = two_loops();
        let f = Field::Rational;
        let g: Vec<Vec<(Vec<ArrowId>, Scalar)>> = words
            .iter()
            .map(|(u, v, c)| {
                if u == v { vec![(u.clone(), f.one())] } else { vec![(u.clone(), f.one()), (v.clone(), f.from_i64(*c))] }
            })
            .map(|t| t.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let small = 4;
        let big = 7;
        let at = |n: u32| {
            let s: Vec<PathSeries> = g.iter().map(|t| to_series(&q, f, n, t)).collect();
            groebner_with(q.clone(), f, &s, n).unwrap().quotient_dims().by_weight
        };
        let (a, b) = (at(small), at(big));
        let keep = (small - 2) as usize;
        prop_assert_eq!(&a[..=keep], &b[..=keep]);
    }
}

#[test]
fn jacobian_instances_match_oracle() {
    let f = Field::Rational;
    let mut q = GradedQuiver::new();
    q.add_vertex("v").unwrap();
    q.add_arrow("x", "v", "v", 0, 1).unwrap();
    let xx = vec![(vec![0, 0], f.from_i64(3))];
    let dims = quotient_by_weight(&q, f, &[xx], 10);
    assert_eq!(dims.iter().sum::<usize>(), 2);

    let mut c = GradedQuiver::new();
    for v in ["1", "2", "3"] {
        c.add_vertex(v).unwrap();
    }
    c.add_arrow("a", "1", "2", 0, 1).unwrap();
    c.add_arrow("b", "2", "3", 0, 1).unwrap();
    c.add_arrow("c", "3", "1", 0, 1).unwrap();
    let g = vec![
        vec![(vec![1, 2], f.one())],
        vec![(vec![2, 0], f.one())],
        vec![(vec![0, 1], f.one())],
    ];
    assert_eq!(quotient_by_weight(&c, f, &g, 10).iter().sum::<usize>(), 6);
}
