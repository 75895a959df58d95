//! Bar constructions of augmented algebras over `K = k^r` and their duals.
//!
//! Signs use shifted degrees `|x|' = deg x − 1` in `Ā[1]`. The structure
//! maps enter through `b_n(x_1…x_n) = ε_n (−1)^{Σ_i (n−i)|x_i|'} m_n(x_1…x_n)`
//! with `ε_1 = −1` and `ε_n = 1` otherwise; the A∞ relations are `b∘b = 0`.
//! For dg algebras this is `b_1 = −d`, `b_2(x, y) = (−1)^{|x|'} xy`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BasisElement, FiniteAlgebra};
use crate::dgalg::DGQuiverAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{add_entry, SparseVec};
use crate::quiver::{GradedQuiver, Path};
use crate::scalar::{Field, Scalar};
use crate::series::PathSeries;

/// A chain `x_1 ⊗ … ⊗ x_n` of composable basis elements of `Ā`.
pub type Chain = Vec<usize>;

#[derive(Clone, Debug)]
pub struct AugmentedFiniteAlgebra {
    field: Field,
    vertices: Vec<String>,
    basis: Vec<BasisElement>,
    /// `ops[n]` holds the nonzero values of `m_n` on basis chains.
    ops: Vec<BTreeMap<Chain, SparseVec>>,
}

fn parity(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

impl AugmentedFiniteAlgebra {
    /// Validates the data and the A∞ relations on all chains they involve.
    pub fn new(
        field: Field,
        vertices: Vec<String>,
        basis: Vec<BasisElement>,
        ops: Vec<(Chain, SparseVec)>,
    ) -> Result<Self> {
        let r = vertices.len();
        for b in &basis {
            if b.source >= r || b.target >= r {
                return Err(Error::InvalidAlgebra(format!("{} has an unknown endpoint", b.name)));
            }
        }
        let mut table: Vec<BTreeMap<Chain, SparseVec>> = vec![BTreeMap::new(); 3];
        for (chain, value) in ops {
            let n = chain.len();
            if n == 0 {
                return Err(Error::InvalidAlgebra("m_0 is not supported".into()));
            }
            if chain.iter().chain(value.keys()).any(|&k| k >= basis.len()) {
                return Err(Error::InvalidAlgebra("basis index out of range".into()));
            }
            let names = || -> String {
                chain
                    .iter()
                    .map(|&k| basis[k].name.as_str())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            if chain.windows(2).any(|w| basis[w[0]].target != basis[w[1]].source) {
                return Err(Error::InvalidAlgebra(format!(
                    "m_{n}({}) on a non-composable chain",
                    names()
                )));
            }
            let deg: i32 = chain.iter().map(|&k| basis[k].degree).sum::<i32>() + 2 - n as i32;
            let (s, t) = (basis[chain[0]].source, basis[chain[n - 1]].target);
            for (&k, c) in &value {
                if c.field() != field {
                    return Err(Error::Incompatible);
                }
                if basis[k].degree != deg || (basis[k].source, basis[k].target) != (s, t) {
                    return Err(Error::InvalidAlgebra(format!(
                        "m_{n}({}) has a term {} of the wrong degree or block",
                        names(),
                        basis[k].name
                    )));
                }
            }
            if table.len() <= n {
                table.resize(n + 1, BTreeMap::new());
            }
            let entry = table[n].entry(chain).or_default();
            for (k, c) in value {
                add_entry(entry, k, c);
            }
        }
        for m in table.iter_mut() {
            m.retain(|_, v| !v.is_empty());
        }
        let alg = AugmentedFiniteAlgebra {
            field,
            vertices,
            basis,
            ops: table,
        };
        alg.check_relations()?;
        Ok(alg)
    }

    /// `Ā` is the radical of a graded basic algebra with idempotents in degree 0.
    pub fn from_finite(a: &FiniteAlgebra) -> Result<Self> {
        let r = a.num_vertices();
        if a.basis()[..r].iter().any(|b| b.degree != 0) {
            return Err(Error::InvalidAlgebra("idempotents must sit in degree 0".into()));
        }
        let basis = a.basis()[r..].to_vec();
        let ops = a
            .radical_products()
            .into_iter()
            .map(|((x, y), v)| (vec![x, y], v))
            .collect();
        Self::new(a.field(), a.vertex_names().to_vec(), basis, ops)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    /// Largest `n` with `m_n ≠ 0` (at least 2).
    pub fn n_max(&self) -> usize {
        (2..self.ops.len())
            .rev()
            .find(|&n| !self.ops[n].is_empty())
            .unwrap_or(2)
    }

    pub fn op(&self, chain: &[usize]) -> Option<&SparseVec> {
        self.ops.get(chain.len()).and_then(|m| m.get(chain))
    }

    /// `m_1 = 0` and `Ā` lives in degrees `>= 1`.
    pub fn is_positive_minimal(&self) -> bool {
        self.ops.get(1).is_none_or(BTreeMap::is_empty) && self.basis.iter().all(|b| b.degree >= 1)
    }

    pub fn shifted_degree(&self, k: usize) -> i64 {
        self.basis[k].degree as i64 - 1
    }

    fn chain_degree(&self, c: &[usize]) -> i64 {
        c.iter().map(|&k| self.shifted_degree(k)).sum()
    }

    /// `b_n` on a chain, as a vector in `Ā[1]`.
    pub fn b(&self, chain: &[usize]) -> SparseVec {
        let Some(v) = self.op(chain) else {
            return SparseVec::new();
        };
        let n = chain.len();
        let mut e: i64 = chain
            .iter()
            .enumerate()
            .map(|(i, &k)| (n - 1 - i) as i64 * self.shifted_degree(k))
            .sum();
        if n == 1 {
            e += 1;
        }
        if parity(e) {
            v.iter().map(|(&k, c)| (k, -c)).collect()
        } else {
            v.clone()
        }
    }

    /// All composable chains of length exactly `n`, in lexicographic order.
    pub fn chains(&self, n: usize) -> Vec<Chain> {
        let mut out: Vec<Chain> = if n == 0 {
            vec![]
        } else {
            (0..self.basis.len()).map(|k| vec![k]).collect()
        };
        for _ in 1..n {
            let mut next = Vec::new();
            for c in &out {
                let t = self.basis[*c.last().unwrap()].target;
                for k in 0..self.basis.len() {
                    if self.basis[k].source == t {
                        let mut d = c.clone();
                        d.push(k);
                        next.push(d);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// The coderivation `d_BA` on one chain (all `b_s`, every position).
    pub fn bar_differential(&self, c: &[usize]) -> BTreeMap<Chain, Scalar> {
        let mut out: BTreeMap<Chain, Scalar> = BTreeMap::new();
        let n = c.len();
        let mut prefix_deg = 0i64;
        for r in 0..n {
            for s in 1..=n - r {
                let v = self.b(&c[r..r + s]);
                for (&k, x) in &v {
                    let mut chain = c[..r].to_vec();
                    chain.push(k);
                    chain.extend_from_slice(&c[r + s..]);
                    let val = if parity(prefix_deg) { -x } else { x.clone() };
                    accumulate(&mut out, chain, val);
                }
            }
            prefix_deg += self.shifted_degree(c[r]);
        }
        out
    }

    /// `b∘b = 0` on every composable chain of length `<= 2·n_max − 1`.
    pub fn check_relations(&self) -> Result<()> {
        let top = 2 * self.n_max() - 1;
        for n in 1..=top {
            for c in self.chains(n) {
                let mut total = SparseVec::new();
                // b applied to each whole term of d_BA(c)
                for (d, x) in self.bar_differential(&c) {
                    for (k, y) in self.b(&d) {
                        add_entry(&mut total, k, &x * &y);
                    }
                }
                if !total.is_empty() {
                    let names: Vec<&str> = c.iter().map(|&k| self.basis[k].name.as_str()).collect();
                    return Err(Error::AInfinityRelation(names.join(" ")));
                }
            }
        }
        Ok(())
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, value: Scalar) {
    if value.is_zero() {
        return;
    }
    use alloc::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(value);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &value;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// `Ā[1]^{⊗n}` for `1 <= n <= L` with its differential.
#[derive(Clone, Debug)]
pub struct BarComplex {
    algebra: AugmentedFiniteAlgebra,
    length: usize,
    chains: Vec<Chain>,
    index: BTreeMap<Chain, usize>,
    differential: Vec<SparseVec>,
}

/// Tensor factor pair `c_1 ⊗ c_2` of bar chains; empty chains stand for the
/// unit at the junction vertex.
pub type TensorKey = (Chain, Chain, usize);

pub fn bar_complex(a: &AugmentedFiniteAlgebra, length: usize) -> Result<BarComplex> {
    if length == 0 {
        return Err(Error::InvalidAlgebra("tensor length bound must be positive".into()));
    }
    a.check_relations()?;
    let mut chains = Vec::new();
    for n in 1..=length {
        chains.extend(a.chains(n));
    }
    let index: BTreeMap<Chain, usize> = chains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let differential = chains
        .iter()
        .map(|c| a.bar_differential(c).into_iter().map(|(d, x)| (index[&d], x)).collect())
        .collect();
    Ok(BarComplex {
        algebra: a.clone(),
        length,
        chains,
        index,
        differential,
    })
}

impl BarComplex {
    pub fn algebra(&self) -> &AugmentedFiniteAlgebra {
        &self.algebra
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn differential(&self, chain: usize) -> &SparseVec {
        &self.differential[chain]
    }

    /// Total shifted degree of a chain.
    pub fn degree(&self, chain: &[usize]) -> i64 {
        self.algebra.chain_degree(chain)
    }

    /// Number of chains per `(length, total shifted degree)`.
    pub fn dims(&self) -> BTreeMap<(usize, i64), usize> {
        let mut out = BTreeMap::new();
        for c in &self.chains {
            *out.entry((c.len(), self.degree(c))).or_insert(0) += 1;
        }
        out
    }

    /// First chain on which `d² ≠ 0`.
    pub fn check_d_squared(&self) -> Option<Chain> {
        for (i, c) in self.chains.iter().enumerate() {
            let mut dd = SparseVec::new();
            for (&j, x) in &self.differential[i] {
                for (&k, y) in &self.differential[j] {
                    add_entry(&mut dd, k, x * y);
                }
            }
            if !dd.is_empty() {
                return Some(c.clone());
            }
        }
        None
    }

    fn start_vertex(&self, c: &[usize]) -> usize {
        self.algebra.basis[c[0]].source
    }

    fn end_vertex(&self, c: &[usize]) -> usize {
        self.algebra.basis[*c.last().unwrap()].target
    }

    /// Splitting the tensors: `Δ(x_1…x_n) = Σ_k (x_1…x_k) ⊗ (x_{k+1}…x_n)`.
    pub fn comultiply(&self, c: &[usize]) -> Vec<TensorKey> {
        let n = c.len();
        (0..=n)
            .map(|k| {
                let junction = if k == 0 {
                    self.start_vertex(c)
                } else {
                    self.end_vertex(&c[..k])
                };
                (c[..k].to_vec(), c[k..].to_vec(), junction)
            })
            .collect()
    }

    fn d_chain(&self, c: &[usize]) -> Vec<(Chain, Scalar)> {
        if c.is_empty() {
            return Vec::new();
        }
        self.differential[self.index[c]]
            .iter()
            .map(|(&j, x)| (self.chains[j].clone(), x.clone()))
            .collect()
    }

    /// First chain violating `Δ d = (d ⊗ 1 + 1 ⊗ d) Δ`, where
    /// `(1 ⊗ d)(c_1 ⊗ c_2) = (−1)^{|c_1|} c_1 ⊗ d c_2`.
    pub fn check_coderivation(&self) -> Option<Chain> {
        for c in &self.chains {
            let mut lhs: BTreeMap<TensorKey, Scalar> = BTreeMap::new();
            for (d, x) in self.d_chain(c) {
                for key in self.comultiply(&d) {
                    accumulate(&mut lhs, key, x.clone());
                }
            }
            let mut rhs: BTreeMap<TensorKey, Scalar> = BTreeMap::new();
            for (c1, c2, j) in self.comultiply(c) {
                for (d1, x) in self.d_chain(&c1) {
                    accumulate(&mut rhs, (d1, c2.clone(), j), x);
                }
                let sign = parity(self.degree(&c1));
                for (d2, x) in self.d_chain(&c2) {
                    let v = if sign { -&x } else { x };
                    accumulate(&mut rhs, (c1.clone(), d2, j), v);
                }
            }
            if lhs != rhs {
                return Some(c.clone());
            }
        }
        None
    }
}

/// Name of the dual arrow of basis element `b`.
pub fn dual_arrow_name(b: &str) -> String {
    format!("f_{b}")
}

fn dual_quiver(a: &AugmentedFiniteAlgebra) -> Result<GradedQuiver> {
    let mut q = GradedQuiver::new();
    for v in &a.vertices {
        q.add_vertex(v)?;
    }
    for b in &a.basis {
        q.add_arrow_between(&dual_arrow_name(&b.name), b.target, b.source, 1 - b.degree, 1)?;
    }
    Ok(q)
}

/// `E(A)`: the dual of the bar construction as a complete dg-quiver algebra,
/// truncated at weight (tensor length) `length`.
///
/// `d(f_b) = Σ_x ⟨b, b_n(x)⟩ (−1)^{Σ_{i<j}|x_i|'|x_j|'} f_{x_n}…f_{x_1}`.
pub fn dual_bar(a: &AugmentedFiniteAlgebra, length: u32) -> Result<DGQuiverAlgebra> {
    a.check_relations()?;
    let q = Arc::new(dual_quiver(a)?);
    let f = a.field;
    let mut d: Vec<PathSeries> = vec![PathSeries::zero(q.clone(), f, length); a.basis.len()];
    for n in 1..a.ops.len() {
        if n as u32 > length {
            break;
        }
        for chain in a.ops[n].keys() {
            let degs: Vec<i64> = chain.iter().map(|&k| a.shifted_degree(k)).collect();
            let mut e2 = 0i64;
            for i in 0..n {
                for j in i + 1..n {
                    e2 += degs[i] * degs[j];
                }
            }
            let rev: Vec<usize> = chain.iter().rev().copied().collect();
            let path = Path::from_arrows(&q, &rev)?;
            for (k, x) in a.b(chain) {
                let c = if parity(e2) { -x } else { x };
                d[k].add_term(path.clone(), c);
            }
        }
    }
    DGQuiverAlgebra::new_deferred(q, f, length, d.into_iter().enumerate().collect())
}

/// Quiver of `E(A)` for positive minimal `A`: arrows `i → j` in degree `p`
/// number `dim e_j A^{1−p} e_i`.
pub fn dual_bar_quiver(a: &AugmentedFiniteAlgebra) -> Result<GradedQuiver> {
    if !a.is_positive_minimal() {
        return Err(Error::NotPositiveMinimal(
            "m_1 must vanish and Ā must live in positive degrees".into(),
        ));
    }
    dual_quiver(a)
}

/// Arrow counts of a graded quiver per degree.
pub fn arrow_counts_by_degree(q: &GradedQuiver) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for a in q.arrows() {
        *out.entry(a.degree).or_insert(0) += 1;
    }
    out
}
