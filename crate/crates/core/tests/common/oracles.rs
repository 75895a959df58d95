//! Brute-force oracles. They share only the scalar type and the algebra
//! structure constants with the library; elimination, path enumeration and
//! module maps are done here from scratch.
#![allow(dead_code)]

use std::collections::BTreeMap;

use dgql_core::algebra::FiniteAlgebra;
use dgql_core::quiver::ArrowId;
use dgql_core::{Field, GradedQuiver, Scalar};

/// Row echelon form kept densely, for incremental rank computations.
pub struct Dense {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Dense {
    pub fn new() -> Self {
        Dense { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().unwrap();
        let v: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
        for (_, row) in &mut self.rows {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Null space of a dense matrix given by rows with `cols` columns.
pub fn null_space(field: Field, rows: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut e = Dense::new();
    for r in rows {
        e.insert(r.clone());
    }
    let pivots: Vec<usize> = e.rows.iter().map(|(p, _)| *p).collect();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (p, row) in &e.rows {
                v[*p] = -&row[free];
            }
            v
        })
        .collect()
}

fn paths(q: &GradedQuiver, n: u32) -> Vec<(usize, Vec<ArrowId>, u32)> {
    let mut out: Vec<(usize, Vec<ArrowId>, u32)> = (0..q.num_vertices()).map(|v| (v, vec![], 0)).collect();
    let mut i = 0;
    while i < out.len() {
        let (s, p, w) = out[i].clone();
        let end = p.last().map_or(s, |&a| q.arrow(a).target);
        for (a, arrow) in q.arrows().iter().enumerate() {
            if arrow.source == end && w + arrow.weight <= n {
                let mut p2 = p.clone();
                p2.push(a);
                out.push((s, p2, w + arrow.weight));
            }
        }
        i += 1;
    }
    out
}

/// Dimensions of the pieces of the weight filtration of `kQ/(I + weight > N)`:
/// entry `w` is `dim (I + F_w) / (I + F_{w+1})`, where `F_w` is spanned by
/// paths of weight `>= w` and `I` by all `u g v`.
/// Generators are lists of `(arrow word, coefficient)`, each term running
/// between the same vertices.
pub fn quotient_by_weight(q: &GradedQuiver, field: Field, gens: &[Vec<(Vec<ArrowId>, Scalar)>], n: u32) -> Vec<usize> {
    let all = paths(q, n);
    let index: BTreeMap<(usize, Vec<ArrowId>), usize> = all
        .iter()
        .enumerate()
        .map(|(i, (s, p, _))| ((*s, p.clone()), i))
        .collect();
    let weight = |p: &[ArrowId]| p.iter().map(|&a| q.arrow(a).weight).sum::<u32>();
    let end = |s: usize, p: &[ArrowId]| p.last().map_or(s, |&a| q.arrow(a).target);
    let mut e = Dense::new();
    for g in gens {
        let (first, _) = &g[0];
        let gs = q.arrow(first[0]).source;
        let gt = end(gs, first);
        let gmin = g.iter().map(|(p, _)| weight(p)).min().unwrap();
        for (us, u, uw) in &all {
            if end(*us, u) != gs {
                continue;
            }
            for (vs, v, vw) in &all {
                if *vs != gt || uw + vw + gmin > n {
                    continue;
                }
                let mut row = vec![field.zero(); all.len()];
                for (p, c) in g {
                    let mut word = u.clone();
                    word.extend_from_slice(p);
                    word.extend_from_slice(v);
                    if let Some(&k) = index.get(&(*us, word)) {
                        row[k] = &row[k] + c;
                    }
                }
                e.insert(row);
            }
        }
    }
    let mut ranks = vec![0; n as usize + 2];
    ranks[n as usize + 1] = e.rank();
    for w in (0..=n).rev() {
        for (k, (_, _, pw)) in all.iter().enumerate() {
            if *pw == w {
                let mut row = vec![field.zero(); all.len()];
                row[k] = field.one();
                e.insert(row);
            }
        }
        ranks[w as usize] = e.rank();
    }
    (0..=n as usize).map(|w| ranks[w] - ranks[w + 1]).collect()
}

/// Whether some rescaling `x_i ↦ c_i x_i` with `c_i` ranging over `units`
/// for `i` in `scalable` (and `c_i = 1` elsewhere) is an algebra map `a → b`.
pub fn diagonal_iso_exists(a: &FiniteAlgebra, b: &FiniteAlgebra, scalable: &[usize], units: &[Scalar]) -> bool {
    let n = a.dim();
    let f = a.field();
    let mut choice = vec![0usize; scalable.len()];
    loop {
        let mut c = vec![f.one(); n];
        for (k, &i) in scalable.iter().enumerate() {
            c[i] = units[choice[k]].clone();
        }
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                let pa = a.mul_basis(x, y);
                let pb = b.mul_basis(x, y);
                (0..n).all(|k| {
                    let lhs = pa.get(&k).map_or(f.zero(), |v| &c[k] * v);
                    let rhs = pb.get(&k).map_or(f.zero(), |v| &(&c[x] * &c[y]) * v);
                    lhs == rhs
                })
            })
        });
        if ok {
            return true;
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return false;
            }
            choice[k] += 1;
            if choice[k] < units.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// `k[x]/(x^a)` as a right `k[x]/(x^n)`-module: the matrix of `x`.
fn shift_matrix(field: Field, a: usize) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![field.zero(); a]; a];
    for i in 0..a.saturating_sub(1) {
        m[i + 1][i] = field.one();
    }
    m
}

/// Basis of `Hom(U_a, U_b)`, maps as `b × a` matrices flattened row-major.
fn uniserial_hom(field: Field, a: usize, b: usize) -> Vec<Vec<Scalar>> {
    let (xa, xb) = (shift_matrix(field, a), shift_matrix(field, b));
    let mut rows = Vec::new();
    // (F X_a − X_b F)[i][j] = 0
    for i in 0..b {
        for j in 0..a {
            let mut row = vec![field.zero(); a * b];
            for l in 0..a {
                row[i * a + l] = &row[i * a + l] + &xa[l][j];
            }
            for l in 0..b {
                row[l * a + j] = &row[l * a + j] - &xb[i][l];
            }
            rows.push(row);
        }
    }
    null_space(field, &rows, a * b)
}

fn compose(field: Field, g: &[Scalar], h: &[Scalar], a: usize, m: usize, b: usize) -> Vec<Scalar> {
    // g: b × m, h: m × a
    let mut out = vec![field.zero(); a * b];
    for i in 0..b {
        for j in 0..a {
            for l in 0..m {
                out[i * a + j] = &out[i * a + j] + &(&g[i * m + l] * &h[l * a + j]);
            }
        }
    }
    out
}

/// `dim \underline{Hom}(U_a, U_b)` over `k[x]/(x^n)`: all maps modulo every
/// composite through the (unique) indecomposable projective.
pub fn uniserial_stable_hom(field: Field, n: usize, a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        return 0;
    }
    let all = uniserial_hom(field, a, b);
    let mut e = Dense::new();
    for h in uniserial_hom(field, a, n) {
        for g in uniserial_hom(field, n, b) {
            e.insert(compose(field, &g, &h, a, n, b));
        }
    }
    let trivial = e.rank();
    all.len() - trivial
}

/// `Hom_D(U_a, Σ^s U_b)`, using `Ω^{−1} U_c = U_{n−c}` for the cosyzygy.
pub fn uniserial_shifted_hom(field: Field, n: usize, a: usize, b: usize, s: i64) -> usize {
    if s > 0 {
        return 0;
    }
    let mut a = a;
    for _ in 0..(-s) {
        a = if a == 0 || a == n { 0 } else { n - a };
    }
    uniserial_stable_hom(field, n, a, b)
}
