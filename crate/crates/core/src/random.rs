//! Seeded generators for small test corpora. Every generator is a pure
//! function of the RNG state, so a fixed seed reproduces the same objects.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::BasisElement;
use crate::barkoszul::{AugmentedFiniteAlgebra, Chain};
use crate::error::Result;
use crate::ginzburg::Potential;
use crate::linalg::{Matrix, SparseVec};
use crate::quiver::{ArrowId, GradedQuiver, Path};
use crate::scalar::{Field, Scalar};

/// A nonzero scalar of small height.
pub fn nonzero_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    match field {
        Field::Rational => {
            let num = rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let den = rng.gen_range(1..=3i64);
            field.from_ratio(num, den).expect("nonzero denominator")
        }
        Field::Prime(p) => field.from_i64(rng.gen_range(1..p as i64)),
    }
}

/// A scalar of small height, zero with probability about one third.
pub fn small_scalar<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    if rng.gen_ratio(1, 3) {
        field.zero()
    } else {
        nonzero_scalar(rng, field)
    }
}

/// Closed paths of length `1..=max_len`, each listed once per starting point.
pub fn cycles(q: &GradedQuiver, max_len: usize) -> Vec<Vec<ArrowId>> {
    fn go(q: &GradedQuiver, start: usize, at: usize, path: &mut Vec<ArrowId>, max: usize, out: &mut Vec<Vec<ArrowId>>) {
        if !path.is_empty() && at == start {
            out.push(path.clone());
        }
        if path.len() == max {
            return;
        }
        for a in q.arrows_from(at) {
            path.push(a);
            go(q, start, q.arrow(a).target, path, max, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for v in 0..q.num_vertices() {
        go(q, v, v, &mut Vec::new(), max_len, &mut out);
    }
    out
}

/// A quiver with potential: at most `max_vertices` vertices, `max_arrows`
/// arrows and cycles of length at most `max_cycle`. The quiver always
/// contains a cycle, and the potential has one to three terms.
pub fn potential<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    max_vertices: usize,
    max_arrows: usize,
    max_cycle: usize,
    truncation: u32,
) -> Result<Potential> {
    let nv = rng.gen_range(1..=max_vertices);
    let mut q = GradedQuiver::new();
    for i in 0..nv {
        q.add_vertex(&format!("v{i}"))?;
    }
    let len = rng.gen_range(1..=max_cycle.min(nv).min(max_arrows));
    let mut order: Vec<usize> = (0..nv).collect();
    order.shuffle(rng);
    let mut na = 0;
    for k in 0..len {
        q.add_arrow_between(&format!("a{na}"), order[k], order[(k + 1) % len], 0, 1)?;
        na += 1;
    }
    let extra = rng.gen_range(0..=max_arrows - na);
    for _ in 0..extra {
        let (s, t) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        q.add_arrow_between(&format!("a{na}"), s, t, 0, 1)?;
        na += 1;
    }
    let q = Arc::new(q);
    let all = cycles(&q, max_cycle);
    let nterms = rng.gen_range(1..=3usize);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let c = all.choose(rng).expect("quiver has a cycle");
        terms.push((nonzero_scalar(rng, field), Path::from_arrows(&q, c)?));
    }
    Potential::new(q, field, truncation, terms)
}

/// A tree quiver on `1..=max_vertices` vertices with random orientations.
pub fn tree<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize) -> Result<GradedQuiver> {
    let n = rng.gen_range(1..=max_vertices);
    let mut q = GradedQuiver::new();
    for i in 1..=n {
        q.add_vertex(&format!("{i}"))?;
    }
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        let (s, t) = if rng.gen_bool(0.5) { (parent, i) } else { (i, parent) };
        q.add_arrow_between(&format!("b{i}"), s, t, 0, 1)?;
    }
    Ok(q)
}

/// Nonzero twist parameters `(λ, μ)`, one pair per arrow.
pub fn twists<R: Rng + ?Sized>(rng: &mut R, field: Field, arrows: usize) -> (Vec<Scalar>, Vec<Scalar>) {
    let lambda = (0..arrows).map(|_| nonzero_scalar(rng, field)).collect();
    let mu = (0..arrows).map(|_| nonzero_scalar(rng, field)).collect();
    (lambda, mu)
}

/// An augmented algebra over `k^r`, `r <= max_vertices`: a monomial quotient
/// of a graded path algebra (paths of length `<= k` and degree
/// `<= max_degree`), optionally with the differential `[z, -]` for a
/// degree-one loop `z` with `z² = 0`, presented in a random basis.
pub fn augmented<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    max_vertices: usize,
    max_dim: usize,
    max_degree: i32,
) -> Result<AugmentedFiniteAlgebra> {
    loop {
        if let Some(a) = try_augmented(rng, field, max_vertices, max_dim, max_degree)? {
            return Ok(a);
        }
    }
}

fn try_augmented<R: Rng + ?Sized>(
    rng: &mut R,
    field: Field,
    max_vertices: usize,
    max_dim: usize,
    max_degree: i32,
) -> Result<Option<AugmentedFiniteAlgebra>> {
    let r = rng.gen_range(1..=max_vertices);
    let vertices: Vec<String> = (0..r).map(|i| format!("v{i}")).collect();
    let narrows = rng.gen_range(0..=max_dim.min(3));
    // (source, target, degree)
    let mut arrows: Vec<(usize, usize, i32)> = (0..narrows)
        .map(|_| (rng.gen_range(0..r), rng.gen_range(0..r), rng.gen_range(0..=max_degree)))
        .collect();
    let with_z = rng.gen_bool(0.5) && max_degree >= 1;
    if with_z {
        let v = rng.gen_range(0..r);
        arrows.insert(0, (v, v, 1));
    }
    let max_len = rng.gen_range(1..=3usize);
    let forbidden = |p: &[usize]| with_z && p.windows(2).any(|w| w == [0, 0]);
    let degree = |p: &[usize]| p.iter().map(|&a| arrows[a].2).sum::<i32>();

    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..arrows.len()).map(|a| vec![a]).collect();
    while let Some(p) = frontier.pop() {
        if forbidden(&p) || degree(&p) > max_degree {
            continue;
        }
        if paths.len() == max_dim {
            return Ok(None);
        }
        if p.len() < max_len {
            let end = arrows[*p.last().unwrap()].1;
            for (a, &(s, _, _)) in arrows.iter().enumerate() {
                if s == end {
                    let mut next = p.clone();
                    next.push(a);
                    frontier.push(next);
                }
            }
        }
        paths.push(p);
    }
    paths.sort();
    if paths.is_empty() {
        return Ok(None);
    }
    let index: BTreeMap<Vec<usize>, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let basis: Vec<BasisElement> = paths
        .iter()
        .map(|p| BasisElement {
            name: p.iter().map(|a| format!("x{a}")).collect::<Vec<_>>().join("_"),
            source: arrows[p[0]].0,
            target: arrows[*p.last().unwrap()].1,
            degree: degree(p),
        })
        .collect();
    let concat = |x: usize, y: usize| -> Option<usize> {
        if basis[x].target != basis[y].source {
            return None;
        }
        let mut p = paths[x].clone();
        p.extend_from_slice(&paths[y]);
        index.get(&p).copied()
    };
    let n = basis.len();
    let mut m2: BTreeMap<Chain, SparseVec> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            if let Some(k) = concat(x, y) {
                m2.insert(vec![x, y], [(k, field.one())].into_iter().collect());
            }
        }
    }
    let mut m1: BTreeMap<Chain, SparseVec> = BTreeMap::new();
    if with_z {
        let z = index[&vec![0]];
        for x in 0..n {
            let mut v = SparseVec::new();
            if let Some(k) = concat(z, x) {
                crate::linalg::add_entry(&mut v, k, field.one());
            }
            if let Some(k) = concat(x, z) {
                let sign = if basis[x].degree.rem_euclid(2) == 0 {
                    -field.one()
                } else {
                    field.one()
                };
                crate::linalg::add_entry(&mut v, k, sign);
            }
            if !v.is_empty() {
                m1.insert(vec![x], v);
            }
        }
    }

    // y_j = Σ_i T[i][j] x_i, block-diagonal on (source, target, degree)
    let mut t = Matrix::identity(field, n);
    for i in 0..n {
        t.set(i, i, nonzero_scalar(rng, field));
        for j in i + 1..n {
            let (bi, bj) = (&basis[i], &basis[j]);
            if (bi.source, bi.target, bi.degree) == (bj.source, bj.target, bj.degree) {
                t.set(i, j, small_scalar(rng, field));
            }
        }
    }
    let tinv = t.inverse().expect("triangular with nonzero diagonal");
    let mut ops = Vec::new();
    for (table, arity) in [(&m1, 1usize), (&m2, 2)] {
        for chain in chains_of(&basis, arity) {
            let mut acc = vec![field.zero(); n];
            // expand Π_k y_{chain[k]} in the old basis
            for (coef, old) in expand(&t, &chain, field) {
                if let Some(v) = table.get(&old) {
                    for (&k, c) in v {
                        acc[k] += &(&coef * c);
                    }
                }
            }
            let new = tinv.mul_vec(&acc);
            let v: SparseVec = new.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            if !v.is_empty() {
                ops.push((chain, v));
            }
        }
    }
    AugmentedFiniteAlgebra::new(field, vertices, basis, ops).map(Some)
}

fn chains_of(basis: &[BasisElement], arity: usize) -> Vec<Chain> {
    let n = basis.len();
    let mut out: Vec<Chain> = (0..n).map(|k| vec![k]).collect();
    for _ in 1..arity {
        out = out
            .into_iter()
            .flat_map(|c| {
                let end = basis[*c.last().unwrap()].target;
                (0..n).filter(move |&k| basis[k].source == end).map(move |k| {
                    let mut d = c.clone();
                    d.push(k);
                    d
                })
            })
            .collect();
    }
    out
}

/// Terms `(Π_k T[i_k][chain_k], (i_1, …, i_n))` of the multilinear expansion.
fn expand(t: &Matrix, chain: &[usize], field: Field) -> Vec<(Scalar, Chain)> {
    let mut out = vec![(field.one(), Vec::new())];
    for &j in chain {
        let mut next = Vec::new();
        for (c, old) in &out {
            for i in 0..t.rows() {
                let x = t.get(i, j);
                if !x.is_zero() {
                    let mut o = old.clone();
                    o.push(i);
                    next.push((c * x, o));
                }
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        let pa = potential(&mut a, Field::Rational, 4, 6, 4, 8).unwrap();
        let pb = potential(&mut b, Field::Rational, 4, 6, 4, 8).unwrap();
        assert_eq!(pa.terms(), pb.terms());
        for _ in 0..20 {
            let x = augmented(&mut a, Field::Prime(7), 3, 5, 3).unwrap();
            assert!(x.basis().len() <= 5);
            assert!(x.check_relations().is_ok());
        }
    }
}
