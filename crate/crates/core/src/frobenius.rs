//! Finite-dimensional right modules over self-injective basic algebras:
//! envelopes, covers, (co)syzygies and Homs in the stable category.
//!
//! A module is a vector space `M e_v` per vertex with one matrix per
//! generator `g: s → t` of size `dim M e_t × dim M e_s`; a path `g h` acts
//! as `M(h) M(g)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDModule {
    dims: Vec<usize>,
    /// Indexed like [`FiniteAlgebra::generators`].
    gens: Vec<Matrix>,
}

/// One matrix per vertex, `dim N e_v × dim M e_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: Vec<Matrix>,
}

fn col_matrix(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
    Matrix::from_columns(field, rows, cols)
}

/// `X` with `B X = Y`, for `B` of full column rank.
fn solve_columns(b: &Matrix, y: &Matrix) -> Result<Matrix> {
    let cols: Result<Vec<Vec<Scalar>>> = (0..y.cols())
        .map(|j| {
            b.solve(&y.column(j))
                .ok_or_else(|| Error::Internal("subspace is not invariant".into()))
        })
        .collect();
    Ok(col_matrix(b.field(), b.cols(), &cols?))
}

/// Column-space basis of `m` and indices of standard vectors completing it.
fn image_and_complement(m: &Matrix) -> (Matrix, Vec<usize>) {
    let n = m.rows();
    let (_, piv) = m.rref();
    let img = m.select(&(0..n).collect::<Vec<_>>(), &piv);
    let (_, p2) = img.hstack(&Matrix::identity(m.field(), n)).rref();
    let comp = p2
        .iter()
        .filter(|&&c| c >= img.cols())
        .map(|&c| c - img.cols())
        .collect();
    (img, comp)
}

impl FDModule {
    /// Validates shapes and the module axioms against the algebra.
    pub fn new(alg: &FiniteAlgebra, dims: Vec<usize>, gens: Vec<Matrix>) -> Result<Self> {
        if dims.len() != alg.num_vertices() || gens.len() != alg.generators().len() {
            return Err(Error::InvalidModule("wrong number of vertices or generators".into()));
        }
        for (k, &g) in alg.generators().iter().enumerate() {
            let b = &alg.basis()[g];
            if gens[k].rows() != dims[b.target] || gens[k].cols() != dims[b.source] {
                return Err(Error::InvalidModule(format!(
                    "matrix of {} has the wrong shape",
                    b.name
                )));
            }
            if gens[k].field() != alg.field() {
                return Err(Error::Incompatible);
            }
        }
        let m = FDModule { dims, gens };
        let acts: Vec<Matrix> = (0..alg.dim()).map(|x| m.action(alg, x)).collect();
        for x in 0..alg.dim() {
            for (k, &g) in alg.generators().iter().enumerate() {
                if alg.basis()[x].target != alg.basis()[g].source {
                    continue;
                }
                let b = &alg.basis()[x];
                let mut lhs = Matrix::zeros(alg.field(), m.dims[alg.basis()[g].target], m.dims[b.source]);
                for (&y, c) in alg.mul_basis(x, g) {
                    lhs = lhs.add(&acts[y].scale(c));
                }
                if lhs != m.gens[k].mul(&acts[x]) {
                    return Err(Error::InvalidModule(format!(
                        "relation fails for {}·{}",
                        b.name,
                        alg.basis()[g].name
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn zero(alg: &FiniteAlgebra) -> Self {
        let dims = vec![0; alg.num_vertices()];
        let gens = alg
            .generators()
            .iter()
            .map(|_| Matrix::zeros(alg.field(), 0, 0))
            .collect();
        FDModule { dims, gens }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn generator_matrix(&self, k: usize) -> &Matrix {
        &self.gens[k]
    }

    /// Action of basis element `x: s → t` as a `dim M e_t × dim M e_s` matrix.
    pub fn action(&self, alg: &FiniteAlgebra, x: usize) -> Matrix {
        let f = alg.field();
        let b = &alg.basis()[x];
        let mut out = Matrix::zeros(f, self.dims[b.target], self.dims[b.source]);
        let pos = |g: usize| alg.generators().iter().position(|&h| h == g).unwrap();
        for (c, word) in &alg.words()[x] {
            let mut m = Matrix::identity(f, self.dims[b.source]);
            for &g in word {
                m = self.gens[pos(g)].mul(&m);
            }
            out = out.add(&m.scale(c));
        }
        out
    }

    /// Right projective `e_i Λ`, with basis the basis elements starting at `i`.
    pub fn projective(alg: &FiniteAlgebra, i: usize) -> Self {
        let (basis, pos) = projective_layout(alg, i);
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let f = alg.field();
        let gens = alg
            .generators()
            .iter()
            .map(|&g| {
                let (s, t) = (alg.basis()[g].source, alg.basis()[g].target);
                let mut m = Matrix::zeros(f, dims[t], dims[s]);
                for (col, &x) in basis[s].iter().enumerate() {
                    for (&y, c) in alg.mul_basis(x, g) {
                        m.set(pos[y], col, c.clone());
                    }
                }
                m
            })
            .collect();
        FDModule { dims, gens }
    }

    /// Socle basis per vertex (as columns).
    pub fn socle(&self, alg: &FiniteAlgebra) -> Vec<Matrix> {
        let f = alg.field();
        (0..self.dims.len())
            .map(|v| {
                let mut stacked = Matrix::zeros(f, 0, self.dims[v]);
                for (k, &g) in alg.generators().iter().enumerate() {
                    if alg.basis()[g].source == v {
                        stacked = stacked.vstack(&self.gens[k]);
                    }
                }
                col_matrix(f, self.dims[v], &stacked.kernel())
            })
            .collect()
    }

    pub fn direct_sum(alg: &FiniteAlgebra, parts: &[FDModule]) -> FDModule {
        let f = alg.field();
        let r = alg.num_vertices();
        let dims: Vec<usize> = (0..r).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let gens = alg
            .generators()
            .iter()
            .enumerate()
            .map(|(k, &g)| {
                let (s, t) = (alg.basis()[g].source, alg.basis()[g].target);
                let mut m = Matrix::zeros(f, dims[t], dims[s]);
                let (mut ro, mut co) = (0, 0);
                for p in parts {
                    let b = &p.gens[k];
                    for i in 0..b.rows() {
                        for j in 0..b.cols() {
                            m.set(ro + i, co + j, b.get(i, j).clone());
                        }
                    }
                    ro += p.dims[t];
                    co += p.dims[s];
                }
                m
            })
            .collect();
        FDModule { dims, gens }
    }
}

/// Basis elements of `e_i Λ` grouped by target vertex, and each one's position.
fn projective_layout(alg: &FiniteAlgebra, i: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut basis = vec![Vec::new(); alg.num_vertices()];
    let mut pos = vec![usize::MAX; alg.dim()];
    for (x, b) in alg.basis().iter().enumerate() {
        if b.source == i {
            pos[x] = basis[b.target].len();
            basis[b.target].push(x);
        }
    }
    (basis, pos)
}

impl ModuleMap {
    pub fn zero(field: Field, from: &FDModule, to: &FDModule) -> Self {
        ModuleMap {
            blocks: (0..from.dims.len())
                .map(|v| Matrix::zeros(field, to.dims[v], from.dims[v]))
                .collect(),
        }
    }

    pub fn identity(field: Field, m: &FDModule) -> Self {
        ModuleMap {
            blocks: m.dims.iter().map(|&d| Matrix::identity(field, d)).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        ModuleMap {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    }

    /// Checks `F_t M(g) = N(g) F_s` for every generator.
    pub fn check(&self, alg: &FiniteAlgebra, from: &FDModule, to: &FDModule) -> Result<()> {
        for v in 0..from.dims.len() {
            let b = &self.blocks[v];
            if b.rows() != to.dims[v] || b.cols() != from.dims[v] {
                return Err(Error::InvalidMap(format!("block at vertex {v} has the wrong shape")));
            }
        }
        for (k, &g) in alg.generators().iter().enumerate() {
            let (s, t) = (alg.basis()[g].source, alg.basis()[g].target);
            if self.blocks[t].mul(&from.gens[k]) != to.gens[k].mul(&self.blocks[s]) {
                return Err(Error::InvalidMap(format!(
                    "map does not commute with {}",
                    alg.basis()[g].name
                )));
            }
        }
        Ok(())
    }
}

/// Basis of `Hom_Λ(M, N)`.
pub fn hom_basis(alg: &FiniteAlgebra, m: &FDModule, n: &FDModule) -> Vec<ModuleMap> {
    let f = alg.field();
    let r = alg.num_vertices();
    let mut offset = vec![0; r + 1];
    for v in 0..r {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let vars = offset[r];
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (k, &g) in alg.generators().iter().enumerate() {
        let (s, t) = (alg.basis()[g].source, alg.basis()[g].target);
        let (mg, ng) = (&m.gens[k], &n.gens[k]);
        // (F_t M(g) − N(g) F_s)[i][j] = 0
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![f.zero(); vars];
                for l in 0..m.dims[t] {
                    let c = mg.get(l, j);
                    if !c.is_zero() {
                        row[offset[t] + i * m.dims[t] + l] += c;
                    }
                }
                for l in 0..n.dims[s] {
                    let c = ng.get(i, l);
                    if !c.is_zero() {
                        row[offset[s] + l * m.dims[s] + j] -= c;
                    }
                }
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..vars)
            .map(|i| {
                let mut v = vec![f.zero(); vars];
                v[i] = f.one();
                v
            })
            .collect()
    } else {
        Matrix::from_entries(f, rows.len(), vars, rows.into_iter().flatten().collect()).kernel()
    };
    kernel
        .into_iter()
        .map(|v| ModuleMap {
            blocks: (0..r)
                .map(|u| Matrix::from_entries(f, n.dims[u], m.dims[u], v[offset[u]..offset[u + 1]].to_vec()))
                .collect(),
        })
        .collect()
}

/// Map `P_i → M` sending `e_i` to the vector `m ∈ M e_i`.
fn map_from_projective(alg: &FiniteAlgebra, i: usize, m: &FDModule, vector: &[Scalar]) -> ModuleMap {
    let (basis, _) = projective_layout(alg, i);
    let f = alg.field();
    ModuleMap {
        blocks: (0..alg.num_vertices())
            .map(|v| {
                let cols: Vec<Vec<Scalar>> = basis[v].iter().map(|&x| m.action(alg, x).mul_vec(vector)).collect();
                col_matrix(f, m.dims[v], &cols)
            })
            .collect(),
    }
}

/// Kernel of `f: M → N` with its inclusion.
pub fn kernel(alg: &FiniteAlgebra, m: &FDModule, f: &ModuleMap) -> Result<(FDModule, ModuleMap)> {
    let field = alg.field();
    let b: Vec<Matrix> = (0..m.dims.len())
        .map(|v| col_matrix(field, m.dims[v], &f.blocks[v].kernel()))
        .collect();
    let dims: Vec<usize> = b.iter().map(Matrix::cols).collect();
    let mut gens = Vec::new();
    for (k, &g) in alg.generators().iter().enumerate() {
        let (s, t) = (alg.basis()[g].source, alg.basis()[g].target);
        gens.push(solve_columns(&b[t], &m.gens[k].mul(&b[s]))?);
    }
    Ok((FDModule { dims, gens }, ModuleMap { blocks: b }))
}

/// Cokernel of `f: M → N` with its projection.
pub fn cokernel(alg: &FiniteAlgebra, n: &FDModule, f: &ModuleMap) -> Result<(FDModule, ModuleMap)> {
    let field = alg.field();
    let r = n.dims.len();
    let mut proj = Vec::with_capacity(r);
    let mut sections = Vec::with_capacity(r);
    for v in 0..r {
        let (img, comp) = image_and_complement(&f.blocks[v]);
        let d = n.dims[v];
        let std = Matrix::identity(field, d).select(&(0..d).collect::<Vec<_>>(), &comp);
        let t = img.hstack(&std);
        let inv = t
            .inverse()
            .ok_or_else(|| Error::Internal("basis completion failed".into()))?;
        let rows: Vec<usize> = (img.cols()..d).collect();
        proj.push(inv.select(&rows, &(0..d).collect::<Vec<_>>()));
        sections.push(std);
    }
    let dims: Vec<usize> = proj.iter().map(Matrix::rows).collect();
    let gens = alg
        .generators()
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let (s, t) = (alg.basis()[g].source, alg.basis()[g].target);
            proj[t].mul(&n.gens[k]).mul(&sections[s])
        })
        .collect();
    Ok((FDModule { dims, gens }, ModuleMap { blocks: proj }))
}

/// A self-injective algebra with its Nakayama permutation:
/// `soc(e_i Λ) ≅ S_{π(i)}`.
#[derive(Clone, Debug)]
pub struct SelfInjectiveAlgebra {
    alg: FiniteAlgebra,
    nakayama: Vec<usize>,
    projectives: Vec<FDModule>,
}

/// Certifies self-injectivity: every indecomposable projective, left and
/// right, has a simple socle, and the socle assignment is a bijection.
pub fn check_self_injective(alg: &FiniteAlgebra) -> Result<SelfInjectiveAlgebra> {
    let r = alg.num_vertices();
    let names = alg.vertex_names();
    let mut nakayama = Vec::with_capacity(r);
    let mut projectives = Vec::with_capacity(r);
    for i in 0..r {
        let p = FDModule::projective(alg, i);
        let soc = p.socle(alg);
        let total: usize = soc.iter().map(Matrix::cols).sum();
        if total != 1 {
            return Err(Error::NotSelfInjective(format!(
                "socle of the right projective at {} has dimension {total}",
                names[i]
            )));
        }
        let v = soc.iter().position(|m| m.cols() == 1).unwrap();
        if let Some(j) = nakayama.iter().position(|&w| w == v) {
            return Err(Error::NotSelfInjective(format!(
                "right projectives at {} and {} share the socle S_{}",
                names[j], names[i], names[v]
            )));
        }
        nakayama.push(v);
        projectives.push(p);
    }
    // left projectives Λ e_i: {y : g·y = 0 for all generators g}
    let f = alg.field();
    let mut left_socles = Vec::with_capacity(r);
    for i in 0..r {
        let mut found = Vec::new();
        for u in 0..r {
            let block: Vec<usize> = (0..alg.dim())
                .filter(|&x| alg.basis()[x].target == i && alg.basis()[x].source == u)
                .collect();
            if block.is_empty() {
                continue;
            }
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for &g in alg.generators() {
                if alg.basis()[g].target != u {
                    continue;
                }
                let images: Vec<&SparseVec> = block.iter().map(|&y| alg.mul_basis(g, y)).collect();
                let mut keys: Vec<usize> = images.iter().flat_map(|v| v.keys().copied()).collect();
                keys.sort_unstable();
                keys.dedup();
                for k in keys {
                    rows.push(
                        images
                            .iter()
                            .map(|v| v.get(&k).cloned().unwrap_or_else(|| f.zero()))
                            .collect(),
                    );
                }
            }
            let dim = if rows.is_empty() {
                block.len()
            } else {
                Matrix::from_entries(f, rows.len(), block.len(), rows.into_iter().flatten().collect())
                    .kernel()
                    .len()
            };
            for _ in 0..dim {
                found.push(u);
            }
        }
        if found.len() != 1 {
            return Err(Error::NotSelfInjective(format!(
                "socle of the left projective at {} has dimension {}",
                names[i],
                found.len()
            )));
        }
        if let Some(j) = left_socles.iter().position(|&w| w == found[0]) {
            return Err(Error::NotSelfInjective(format!(
                "left projectives at {} and {} share a socle",
                names[j], names[i]
            )));
        }
        left_socles.push(found[0]);
    }
    Ok(SelfInjectiveAlgebra {
        alg: alg.clone(),
        nakayama,
        projectives,
    })
}

/// Shifted Homs together with the value of the cross-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableHom {
    pub dim: usize,
    /// Representatives of a basis of the stable Hom space.
    pub basis: Vec<ModuleMap>,
}

/// `X → I^0 → I^1 → … → I^{l−1}` with `α = ι^0` and `d^i = ι^{i+1} π^i`.
#[derive(Clone, Debug)]
pub struct CoresolutionComplex {
    pub source: FDModule,
    pub terms: Vec<FDModule>,
    pub alpha: Option<ModuleMap>,
    pub differentials: Vec<ModuleMap>,
    /// Cosyzygies `K^1 … K^l` (not stripped).
    pub cosyzygies: Vec<FDModule>,
}

impl CoresolutionComplex {
    /// Consecutive composites vanish.
    pub fn is_complex(&self) -> bool {
        let mut prev = self.alpha.clone();
        for d in &self.differentials {
            if let Some(p) = &prev {
                if !d.compose(p).is_zero() {
                    return false;
                }
            }
            prev = Some(d.clone());
        }
        true
    }
}

impl SelfInjectiveAlgebra {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }

    pub fn nakayama(&self) -> &[usize] {
        &self.nakayama
    }

    pub fn projective(&self, i: usize) -> &FDModule {
        &self.projectives[i]
    }

    fn field(&self) -> Field {
        self.alg.field()
    }

    /// Minimal injective envelope `ι: M → I`.
    pub fn injective_envelope(&self, m: &FDModule) -> Result<(FDModule, ModuleMap)> {
        let alg = &self.alg;
        let f = self.field();
        let r = alg.num_vertices();
        let mut remaining = m.socle(alg);
        let mut parts = Vec::new();
        let mut maps: Vec<ModuleMap> = Vec::new();
        while let Some(v) = (0..r).find(|&v| remaining[v].cols() > 0) {
            let k = self.nakayama.iter().position(|&w| w == v).unwrap();
            let p = &self.projectives[k];
            let h = hom_basis(alg, m, p)
                .into_iter()
                .find(|h| !h.blocks[v].mul(&remaining[v]).is_zero())
                .ok_or_else(|| Error::Internal("socle vector not detected by any injective".into()))?;
            for u in 0..r {
                let restricted = h.blocks[u].mul(&remaining[u]);
                let coeffs = col_matrix(f, remaining[u].cols(), &restricted.kernel());
                remaining[u] = remaining[u].mul(&coeffs);
            }
            parts.push(p.clone());
            maps.push(h);
        }
        let i = FDModule::direct_sum(alg, &parts);
        let blocks = (0..r)
            .map(|v| {
                maps.iter()
                    .fold(Matrix::zeros(f, 0, m.dims[v]), |acc, h| acc.vstack(&h.blocks[v]))
            })
            .collect();
        Ok((i, ModuleMap { blocks }))
    }

    /// Projective cover `p: P → M`.
    pub fn projective_cover(&self, m: &FDModule) -> (FDModule, ModuleMap) {
        let alg = &self.alg;
        let f = self.field();
        let r = alg.num_vertices();
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        for v in 0..r {
            let mut radical = Matrix::zeros(f, m.dims[v], 0);
            for (k, &g) in alg.generators().iter().enumerate() {
                if alg.basis()[g].target == v {
                    radical = radical.hstack(&m.gens[k]);
                }
            }
            let (_, comp) = image_and_complement(&radical);
            for c in comp {
                let mut vec_ = vec![f.zero(); m.dims[v]];
                vec_[c] = f.one();
                maps.push(map_from_projective(alg, v, m, &vec_));
                parts.push(self.projectives[v].clone());
            }
        }
        let p = FDModule::direct_sum(alg, &parts);
        let blocks = (0..r)
            .map(|v| {
                maps.iter()
                    .fold(Matrix::zeros(f, m.dims[v], 0), |acc: Matrix, h: &ModuleMap| {
                        acc.hstack(&h.blocks[v])
                    })
            })
            .collect();
        (p, ModuleMap { blocks })
    }

    /// Removes projective direct summands.
    pub fn strip_projectives(&self, m: &FDModule) -> Result<FDModule> {
        let alg = &self.alg;
        let mut cur = m.clone();
        'outer: loop {
            for k in 0..alg.num_vertices() {
                if cur.dims[k] == 0 {
                    continue;
                }
                let (pbasis, pos) = projective_layout(alg, k);
                let ek = pos[k];
                debug_assert_eq!(pbasis[k][ek], k);
                for g in hom_basis(alg, &cur, &self.projectives[k]) {
                    // coefficient of e_k in g(m) for the basis vectors m of M e_k
                    if (0..cur.dims[k]).any(|j| !g.blocks[k].get(ek, j).is_zero()) {
                        cur = kernel(alg, &cur, &g)?.0;
                        continue 'outer;
                    }
                }
            }
            return Ok(cur);
        }
    }

    /// `Ω^{−n}(M)` without projective summands.
    pub fn cosyzygy(&self, m: &FDModule, n: usize) -> Result<FDModule> {
        let mut cur = self.strip_projectives(m)?;
        for _ in 0..n {
            let (i, iota) = self.injective_envelope(&cur)?;
            cur = self.strip_projectives(&cokernel(&self.alg, &i, &iota)?.0)?;
        }
        Ok(cur)
    }

    /// `Ω^n(M)` without projective summands.
    pub fn syzygy(&self, m: &FDModule, n: usize) -> Result<FDModule> {
        let mut cur = self.strip_projectives(m)?;
        for _ in 0..n {
            let (p, pi) = self.projective_cover(&cur);
            cur = self.strip_projectives(&kernel(&self.alg, &p, &pi)?.0)?;
        }
        Ok(cur)
    }

    /// `Hom(M, N)` modulo maps factoring through the injective envelope of `M`.
    pub fn stable_hom(&self, m: &FDModule, n: &FDModule) -> Result<StableHom> {
        let alg = &self.alg;
        let f = self.field();
        let all = hom_basis(alg, m, n);
        let (i, iota) = self.injective_envelope(m)?;
        let to_sparse =
            |v: Vec<Scalar>| -> SparseVec { v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect() };
        let mut span = Echelon::new(f);
        for h in hom_basis(alg, &i, n) {
            span.insert(&to_sparse(h.compose(&iota).flatten()));
        }
        let mut basis = Vec::new();
        for h in all {
            if span.insert(&to_sparse(h.flatten())) {
                basis.push(h);
            }
        }
        Ok(StableHom {
            dim: basis.len(),
            basis,
        })
    }

    /// `Hom_D(M, Σ^n N)`: zero for `n > 0`, the stable Hom for `n = 0`, and
    /// `\underline{Hom}(Ω^{n} M, N)` for `n < 0`, cross-checked against
    /// `\underline{Hom}(M, Ω^{−n} N)`.
    pub fn shifted_hom(&self, m: &FDModule, n: &FDModule, shift: i64) -> Result<usize> {
        if shift > 0 {
            return Ok(0);
        }
        if shift == 0 {
            return Ok(self.stable_hom(m, n)?.dim);
        }
        let k = (-shift) as usize;
        let a = self.stable_hom(&self.cosyzygy(m, k)?, n)?.dim;
        let b = self.stable_hom(m, &self.syzygy(n, k)?)?.dim;
        if a != b {
            return Err(Error::Internal(format!(
                "cosyzygy side gives {a}, syzygy side gives {b} at shift {shift}"
            )));
        }
        Ok(a)
    }

    /// The coresolution `X(l)`.
    pub fn coresolution_complex(&self, m: &FDModule, l: usize) -> Result<CoresolutionComplex> {
        let mut terms = Vec::new();
        let mut differentials = Vec::new();
        let mut cosyzygies = Vec::new();
        let mut alpha = None;
        let mut cur = m.clone();
        let mut prev_proj: Option<ModuleMap> = None;
        for step in 0..l {
            let (i, iota) = self.injective_envelope(&cur)?;
            match prev_proj.take() {
                None => alpha = Some(iota.clone()),
                Some(pi) => differentials.push(iota.compose(&pi)),
            }
            let (k, pi) = cokernel(&self.alg, &i, &iota)?;
            terms.push(i);
            if step + 1 < l {
                prev_proj = Some(pi);
            }
            cosyzygies.push(k.clone());
            cur = k;
        }
        Ok(CoresolutionComplex {
            source: m.clone(),
            terms,
            alpha,
            differentials,
            cosyzygies,
        })
    }
}

/// `k[x]/(x^a)` as a right module over `k[x]/(x^n)` presented with generator `x`.
pub fn uniserial_module(alg: &FiniteAlgebra, a: usize) -> Result<FDModule> {
    let f = alg.field();
    let mut m = Matrix::zeros(f, a, a);
    for i in 0..a.saturating_sub(1) {
        m.set(i + 1, i, f.one());
    }
    FDModule::new(alg, vec![a], vec![m])
}

/// Summary used in reports.
pub fn describe_dims(alg: &FiniteAlgebra, m: &FDModule) -> String {
    alg.vertex_names()
        .iter()
        .zip(m.dims())
        .map(|(v, d)| format!("{v}:{d}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisElement;
    use alloc::string::ToString;

    fn poly(n: usize) -> FiniteAlgebra {
        let f = Field::Rational;
        let radical = (1..n)
            .map(|k| BasisElement {
                name: format!("x{k}"),
                source: 0,
                target: 0,
                degree: 0,
            })
            .collect();
        let mut products = Vec::new();
        for a in 1..n {
            for b in 1..n {
                if a + b < n {
                    products.push(((a - 1, b - 1), [(a + b - 1, f.one())].into_iter().collect()));
                }
            }
        }
        FiniteAlgebra::from_radical(f, vec!["v".to_string()], None, radical, products).unwrap()
    }

    fn a2() -> FiniteAlgebra {
        FiniteAlgebra::from_radical(
            Field::Rational,
            vec!["1".to_string(), "2".to_string()],
            None,
            vec![BasisElement {
                name: "a".to_string(),
                source: 0,
                target: 1,
                degree: 0,
            }],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn self_injective_gate() {
        for n in 2..5 {
            assert_eq!(check_self_injective(&poly(n)).unwrap().nakayama(), &[0]);
        }
        assert!(matches!(check_self_injective(&a2()), Err(Error::NotSelfInjective(_))));
    }

    #[test]
    fn envelopes_and_cosyzygies() {
        let l2 = check_self_injective(&poly(2)).unwrap();
        let k = uniserial_module(l2.algebra(), 1).unwrap();
        let (i, iota) = l2.injective_envelope(&k).unwrap();
        assert_eq!(i.dims(), &[2]);
        iota.check(l2.algebra(), &k, &i).unwrap();
        assert_eq!(l2.cosyzygy(&k, 1).unwrap().dims(), &[1]);
        let lam = uniserial_module(l2.algebra(), 2).unwrap();
        assert!(l2.cosyzygy(&lam, 1).unwrap().is_zero());

        let l3 = check_self_injective(&poly(3)).unwrap();
        let m = uniserial_module(l3.algebra(), 2).unwrap();
        assert_eq!(l3.injective_envelope(&m).unwrap().0.dims(), &[3]);
        assert_eq!(l3.cosyzygy(&m, 1).unwrap().dims(), &[1]);
    }

    #[test]
    fn stable_homs() {
        let l2 = check_self_injective(&poly(2)).unwrap();
        let k = uniserial_module(l2.algebra(), 1).unwrap();
        assert_eq!(l2.stable_hom(&k, &k).unwrap().dim, 1);
        assert_eq!(l2.shifted_hom(&k, &k, -1).unwrap(), 1);
        assert_eq!(l2.shifted_hom(&k, &k, 3).unwrap(), 0);
        let l3 = check_self_injective(&poly(3)).unwrap();
        let m = uniserial_module(l3.algebra(), 2).unwrap();
        let k3 = uniserial_module(l3.algebra(), 1).unwrap();
        let lam = uniserial_module(l3.algebra(), 3).unwrap();
        assert_eq!(l3.stable_hom(&m, &k3).unwrap().dim, 1);
        assert_eq!(l3.stable_hom(&lam, &m).unwrap().dim, 0);
        assert_eq!(l3.shifted_hom(&m, &m, -1).unwrap(), 1);
    }

    #[test]
    fn coresolutions() {
        let l2 = check_self_injective(&poly(2)).unwrap();
        let k = uniserial_module(l2.algebra(), 1).unwrap();
        let x = l2.coresolution_complex(&k, 2).unwrap();
        assert_eq!(x.terms.len(), 2);
        assert_eq!(x.differentials.len(), 1);
        assert!(x.is_complex());
        assert!(l2.coresolution_complex(&k, 0).unwrap().terms.is_empty());
        let lam = uniserial_module(l2.algebra(), 2).unwrap();
        let y = l2.coresolution_complex(&lam, 1).unwrap();
        assert_eq!(y.terms[0].dims(), &[2]);
        assert!(y.alpha.unwrap().blocks[0].is_invertible());
    }

    #[test]
    fn projective_summands_are_stripped() {
        let l3 = check_self_injective(&poly(3)).unwrap();
        let alg = l3.algebra();
        let m = uniserial_module(alg, 2).unwrap();
        let sum = FDModule::direct_sum(alg, &[m.clone(), l3.projective(0).clone()]);
        assert_eq!(l3.strip_projectives(&sum).unwrap().dims(), &[2]);
    }
}
