//! Truncated elements of complete path algebras, two-sided ideals, and
//! truncated noncommutative Gröbner rewriting.
//!
//! Every computation happens in `kQ / (paths of weight > N)`. Reports built on
//! top of this module are exact in weights `<= N` only.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::quiver::{GradedQuiver, Path, VertexId};
use crate::scalar::{Field, Scalar};

/// Truncated element of the complete path algebra: finitely many terms, all
/// of weight at most the truncation order, no zero coefficients.
#[derive(Clone, Debug)]
pub struct PathSeries {
    quiver: Arc<GradedQuiver>,
    field: Field,
    truncation: u32,
    terms: BTreeMap<Path, Scalar>,
}

impl PartialEq for PathSeries {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other) && self.terms == other.terms
    }
}

impl PathSeries {
    pub fn zero(quiver: Arc<GradedQuiver>, field: Field, truncation: u32) -> Self {
        PathSeries {
            quiver,
            field,
            truncation,
            terms: BTreeMap::new(),
        }
    }

    /// Single term `c·p` (dropped if its weight exceeds the truncation).
    pub fn monomial(quiver: Arc<GradedQuiver>, field: Field, truncation: u32, path: Path, coeff: Scalar) -> Self {
        let mut s = Self::zero(quiver, field, truncation);
        s.add_term(path, coeff);
        s
    }

    pub fn from_terms(
        quiver: Arc<GradedQuiver>,
        field: Field,
        truncation: u32,
        terms: impl IntoIterator<Item = (Path, Scalar)>,
    ) -> Self {
        let mut s = Self::zero(quiver, field, truncation);
        for (p, c) in terms {
            s.add_term(p, c);
        }
        s
    }

    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeMap<Path, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Adds `c·p`, respecting truncation and cancelling zeros.
    pub fn add_term(&mut self, path: Path, coeff: Scalar) {
        if coeff.is_zero() || self.quiver.path_weight(&path) > self.truncation {
            return;
        }
        match self.terms.get_mut(&path) {
            Some(slot) => {
                *slot += &coeff;
                if slot.is_zero() {
                    self.terms.remove(&path);
                }
            }
            None => {
                self.terms.insert(path, coeff);
            }
        }
    }

    pub fn compatible(&self, other: &PathSeries) -> bool {
        self.field == other.field
            && self.truncation == other.truncation
            && (Arc::ptr_eq(&self.quiver, &other.quiver) || *self.quiver == *other.quiver)
    }

    fn check(&self, other: &PathSeries) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::Incompatible)
        }
    }

    pub fn add(&self, other: &PathSeries) -> Result<PathSeries> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PathSeries) -> Result<PathSeries> {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> PathSeries {
        let mut out = PathSeries::zero(self.quiver.clone(), self.field, self.truncation);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), x * c);
        }
        out
    }

    /// Bilinear product through path concatenation; weights above the
    /// truncation are dropped.
    pub fn mul(&self, other: &PathSeries) -> Result<PathSeries> {
        self.check(other)?;
        let mut out = PathSeries::zero(self.quiver.clone(), self.field, self.truncation);
        let q = &*self.quiver;
        for (p, a) in &self.terms {
            let wp = q.path_weight(p);
            for (r, b) in &other.terms {
                if p.target != r.source || wp + q.path_weight(r) > self.truncation {
                    continue;
                }
                out.add_term(p.concat_unchecked(r), a * b);
            }
        }
        Ok(out)
    }

    /// Same terms re-truncated at `n` (terms above `n` are dropped).
    pub fn truncate(&self, n: u32) -> PathSeries {
        PathSeries::from_terms(
            self.quiver.clone(),
            self.field,
            n,
            self.terms.iter().map(|(p, c)| (p.clone(), c.clone())),
        )
    }

    /// The same terms over another (equal up to weights) quiver, re-truncated.
    pub fn rehome(&self, quiver: Arc<GradedQuiver>, truncation: u32) -> PathSeries {
        PathSeries::from_terms(
            quiver,
            self.field,
            truncation,
            self.terms.iter().map(|(p, c)| (p.clone(), c.clone())),
        )
    }

    /// Components `e_i f e_j`, keyed by `(i, j)`.
    pub fn blocks(&self) -> BTreeMap<(VertexId, VertexId), PathSeries> {
        let mut out: BTreeMap<(VertexId, VertexId), PathSeries> = BTreeMap::new();
        for (p, c) in &self.terms {
            out.entry((p.source, p.target))
                .or_insert_with(|| PathSeries::zero(self.quiver.clone(), self.field, self.truncation))
                .add_term(p.clone(), c.clone());
        }
        out
    }

    /// Terms sorted by the monomial order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Path, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.quiver.cmp_paths(b.0, a.0));
        v
    }

    pub fn leading_path(&self) -> Option<&Path> {
        self.terms.keys().max_by(|a, b| self.quiver.cmp_paths(a, b))
    }

    /// Whether every term has the same weight.
    pub fn is_weight_homogeneous(&self) -> bool {
        let mut ws = self.terms.keys().map(|p| self.quiver.path_weight(p));
        match ws.next() {
            None => true,
            Some(w) => ws.all(|x| x == w),
        }
    }

    /// Readable form, e.g. `3 x x + -1 xstar x`; terms in decreasing monomial order.
    pub fn format(&self) -> alloc::string::String {
        use alloc::string::ToString;
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<alloc::string::String> = self
            .sorted_terms()
            .into_iter()
            .map(|(p, c)| {
                if p.is_trivial() {
                    alloc::format!("{} {}", c, self.quiver.format_path(p))
                } else {
                    alloc::format!("{} {}", c, self.quiver.format_path(p))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Two-sided ideal given by nonzero generators over a common quiver.
#[derive(Clone, Debug)]
pub struct TwoSidedIdeal {
    generators: Vec<PathSeries>,
    truncation: u32,
}

impl TwoSidedIdeal {
    pub fn new(generators: Vec<PathSeries>, truncation: u32) -> Result<Self> {
        if generators.iter().any(PathSeries::is_zero) {
            return Err(Error::ZeroGenerator);
        }
        if let Some(first) = generators.first() {
            for g in &generators[1..] {
                if g.field != first.field || !(Arc::ptr_eq(&g.quiver, &first.quiver) || *g.quiver == *first.quiver) {
                    return Err(Error::Incompatible);
                }
            }
        }
        Ok(TwoSidedIdeal { generators, truncation })
    }

    pub fn generators(&self) -> &[PathSeries] {
        &self.generators
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }
}

/// Monomial together with its sort key in the fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Mono {
    weight: u32,
    ranks: Vec<u32>,
    vertex_rank: u32,
    path: Path,
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then(self.ranks.len().cmp(&other.ranks.len()))
            .then_with(|| self.ranks.cmp(&other.ranks))
            .then(self.vertex_rank.cmp(&other.vertex_rank))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Poly = BTreeMap<Mono, Scalar>;

/// Precomputed name ranks realising the (weight, length, lex) order.
struct Order<'q> {
    quiver: &'q GradedQuiver,
    arrow_rank: Vec<u32>,
    vertex_rank: Vec<u32>,
    truncation: u32,
}

impl<'q> Order<'q> {
    fn new(quiver: &'q GradedQuiver, truncation: u32) -> Self {
        let mut arrows: Vec<usize> = (0..quiver.num_arrows()).collect();
        arrows.sort_by(|&a, &b| quiver.arrow(a).name.cmp(&quiver.arrow(b).name));
        let mut arrow_rank = vec![0; arrows.len()];
        for (r, &a) in arrows.iter().enumerate() {
            arrow_rank[a] = r as u32;
        }
        let mut verts: Vec<usize> = (0..quiver.num_vertices()).collect();
        verts.sort_by(|&a, &b| quiver.vertex_name(a).cmp(quiver.vertex_name(b)));
        let mut vertex_rank = vec![0; verts.len()];
        for (r, &v) in verts.iter().enumerate() {
            vertex_rank[v] = r as u32;
        }
        Order {
            quiver,
            arrow_rank,
            vertex_rank,
            truncation,
        }
    }

    fn mono(&self, path: Path) -> Mono {
        Mono {
            weight: self.quiver.path_weight(&path),
            ranks: path.arrows.iter().map(|&a| self.arrow_rank[a]).collect(),
            vertex_rank: self.vertex_rank[path.source],
            path,
        }
    }

    fn poly(&self, s: &PathSeries) -> Poly {
        let mut out = Poly::new();
        for (p, c) in s.terms() {
            if self.quiver.path_weight(p) <= self.truncation {
                out.insert(self.mono(p.clone()), c.clone());
            }
        }
        out
    }

    fn add(&self, acc: &mut Poly, path: Path, c: Scalar) {
        if c.is_zero() || self.quiver.path_weight(&path) > self.truncation {
            return;
        }
        let m = self.mono(path);
        match acc.get_mut(&m) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    acc.remove(&m);
                }
            }
            None => {
                acc.insert(m, c);
            }
        }
    }

    /// `acc += c · u · g · v` (truncated).
    fn add_multiple(&self, acc: &mut Poly, c: &Scalar, u: &Path, g: &Poly, v: &Path) {
        for (m, x) in g {
            let p = u.concat_unchecked(&m.path).concat_unchecked(v);
            self.add(acc, p, c * x);
        }
    }

    /// Positions `k` such that `lead` occurs in `word` starting at arrow index `k`.
    fn occurrences(&self, word: &Path, lead: &Path) -> Vec<usize> {
        if lead.is_trivial() {
            let v = lead.source;
            let mut out = Vec::new();
            if word.source == v {
                out.push(0);
            }
            for (k, &a) in word.arrows.iter().enumerate() {
                if self.quiver.arrow(a).target == v {
                    out.push(k + 1);
                }
            }
            return out;
        }
        let (n, m) = (word.arrows.len(), lead.arrows.len());
        if m > n {
            return Vec::new();
        }
        (0..=n - m)
            .filter(|&k| word.arrows[k..k + m] == lead.arrows[..])
            .collect()
    }

    /// Full normal form of `f` modulo the monic rules `basis`.
    fn reduce(&self, f: &Poly, basis: &[Poly]) -> Poly {
        let mut work = f.clone();
        let mut rest = Poly::new();
        'outer: while let Some((m, c)) = work.pop_last() {
            for g in basis {
                let (lead, _) = g.last_key_value().expect("nonzero rule");
                if let Some(&k) = self.occurrences(&m.path, &lead.path).first() {
                    let u = m.path.slice(self.quiver, 0, k);
                    let v = m.path.slice(self.quiver, k + lead.path.len(), m.path.len());
                    // g is monic: subtracting c·u·g·v cancels the popped term.
                    let mut tail = g.clone();
                    tail.pop_last();
                    self.add_multiple(&mut work, &-&c, &u, &tail, &v);
                    continue 'outer;
                }
            }
            rest.insert(m, c);
        }
        rest
    }

    fn monic(&self, mut f: Poly) -> Poly {
        let inv = f
            .last_key_value()
            .map(|(_, c)| c.inv().expect("nonzero lead"))
            .expect("nonzero poly");
        for c in f.values_mut() {
            *c *= &inv;
        }
        f
    }

    /// Overlap polynomials `g1·v − u·g2` for every proper overlap of leading words.
    fn overlaps(&self, g1: &Poly, g2: &Poly) -> Vec<Poly> {
        let l1 = &g1.last_key_value().unwrap().0.path;
        let l2 = &g2.last_key_value().unwrap().0.path;
        let (n1, n2) = (l1.len(), l2.len());
        let mut out = Vec::new();
        if n1 == 0 || n2 == 0 {
            return out;
        }
        for k in 1..n1.min(n2) {
            if l1.arrows[n1 - k..] != l2.arrows[..k] {
                continue;
            }
            let u = l1.slice(self.quiver, 0, n1 - k);
            let v = l2.slice(self.quiver, k, n2);
            let one = self.quiver_field_one(g1);
            let mut s = Poly::new();
            self.add_multiple(&mut s, &one, &Path::trivial(u.source), g1, &v);
            self.add_multiple(&mut s, &-&one, &u, g2, &Path::trivial(v.target));
            out.push(s);
        }
        out
    }

    fn quiver_field_one(&self, g: &Poly) -> Scalar {
        g.values().next().expect("nonzero").field().one()
    }

    /// Multiples `u·g·v` whose leading word is truncated away while some tail
    /// term survives; empty for weight-homogeneous `g`.
    fn truncation_obstructions(&self, g: &Poly) -> Vec<Poly> {
        let (lead, _) = g.last_key_value().unwrap();
        let min_w = g.keys().map(|m| m.weight).min().unwrap();
        if min_w == lead.weight || self.truncation < min_w {
            return Vec::new();
        }
        let budget = self.truncation - min_w;
        let lo = self.truncation - lead.weight; // need w(u) + w(v) > lo
        let all = self.quiver.paths_up_to_weight(budget);
        let lefts: Vec<&Path> = all.iter().filter(|p| p.target == lead.path.source).collect();
        let rights: Vec<&Path> = all.iter().filter(|p| p.source == lead.path.target).collect();
        let one = self.quiver_field_one(g);
        let mut out = Vec::new();
        for u in &lefts {
            let wu = self.quiver.path_weight(u);
            for v in &rights {
                let w = wu + self.quiver.path_weight(v);
                if w > lo && w <= budget {
                    let mut s = Poly::new();
                    self.add_multiple(&mut s, &one, u, g, v);
                    if !s.is_empty() {
                        out.push(s);
                    }
                }
            }
        }
        out
    }
}

/// Complete rewriting system for `kQ / (I + paths of weight > N)` together
/// with its normal monomials.
#[derive(Clone, Debug)]
pub struct TruncatedQuotient {
    quiver: Arc<GradedQuiver>,
    field: Field,
    truncation: u32,
    rules: Vec<PathSeries>,
    normal: Vec<Path>,
}

/// Computes a rewriting system complete in weights `<= n` for the ideal.
///
/// Monomial order: weight, then length, then lexicographic on arrow names.
/// Leading words of weight `> n` vanish, so inhomogeneous generators are
/// handled as elements of the truncated completion.
pub fn groebner_truncated(ideal: &TwoSidedIdeal, n: u32) -> Result<TruncatedQuotient> {
    let Some(first) = ideal.generators().first() else {
        return Err(Error::Incompatible);
    };
    let quiver = first.quiver().clone();
    let field = first.field();
    groebner_with(quiver, field, ideal.generators(), n)
}

/// As [`groebner_truncated`], but for a possibly empty generator list.
pub fn groebner_with(
    quiver: Arc<GradedQuiver>,
    field: Field,
    generators: &[PathSeries],
    n: u32,
) -> Result<TruncatedQuotient> {
    let order = Order::new(&quiver, n);
    let mut basis: Vec<Poly> = Vec::new();
    let mut pending: Vec<Poly> = Vec::new();
    for g in generators {
        if g.field() != field {
            return Err(Error::Incompatible);
        }
        // e_i g e_j generate the same ideal as g.
        for block in g.blocks().values() {
            pending.push(order.poly(block));
        }
    }

    loop {
        let mut added = false;
        // smallest leading words first keeps intermediate rules short
        pending.sort_by(|a, b| b.last_key_value().map(|x| x.0).cmp(&a.last_key_value().map(|x| x.0)));
        while let Some(f) = pending.pop() {
            let r = order.reduce(&f, &basis);
            if r.is_empty() {
                continue;
            }
            let h = order.monic(r);
            let lead = h.last_key_value().unwrap().0.path.clone();
            let (keep, evicted): (Vec<Poly>, Vec<Poly>) = basis.into_iter().partition(|g| {
                let gl = &g.last_key_value().unwrap().0.path;
                order.occurrences(gl, &lead).is_empty()
            });
            basis = keep;
            pending.extend(evicted);
            basis.push(h);
            added = true;
        }
        // every ambiguity of the current system must resolve
        let mut obstructions = Vec::new();
        for i in 0..basis.len() {
            obstructions.extend(order.truncation_obstructions(&basis[i]));
            for j in 0..basis.len() {
                obstructions.extend(order.overlaps(&basis[i], &basis[j]));
            }
        }
        for s in obstructions {
            let r = order.reduce(&s, &basis);
            if !r.is_empty() {
                pending.push(r);
            }
        }
        if pending.is_empty() && !added {
            break;
        }
        if pending.is_empty() {
            // one more pass to confirm the enlarged system is closed
            continue;
        }
    }

    // interreduce tails
    basis.sort_by(|a, b| a.last_key_value().unwrap().0.cmp(b.last_key_value().unwrap().0));
    let mut reduced = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let mut tail = basis[i].clone();
        let (lead, c) = tail.pop_last().unwrap();
        let others: Vec<Poly> = basis
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = order.reduce(&tail, &others);
        r.insert(lead, c);
        reduced.push(r);
    }

    let rules: Vec<PathSeries> = reduced
        .iter()
        .map(|g| {
            PathSeries::from_terms(
                quiver.clone(),
                field,
                n,
                g.iter().map(|(m, c)| (m.path.clone(), c.clone())),
            )
        })
        .collect();
    let leads: Vec<Path> = reduced
        .iter()
        .map(|g| g.last_key_value().unwrap().0.path.clone())
        .collect();

    let mut normal = Vec::new();
    for v in 0..quiver.num_vertices() {
        let mut stack = vec![Path::trivial(v)];
        while let Some(p) = stack.pop() {
            let reducible = leads.iter().any(|l| !order.occurrences(&p, l).is_empty());
            if reducible {
                continue;
            }
            let w = quiver.path_weight(&p);
            for a in quiver.arrows_from(p.target) {
                if w + quiver.arrow(a).weight <= n {
                    let mut q = p.clone();
                    q.arrows.push(a);
                    q.target = quiver.arrow(a).target;
                    stack.push(q);
                }
            }
            normal.push(p);
        }
    }
    normal.sort_by(|a, b| quiver.cmp_paths(a, b));

    Ok(TruncatedQuotient {
        quiver,
        field,
        truncation: n,
        rules,
        normal,
    })
}

/// Dimension report of a truncated quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientDims {
    /// Dimension per `(source, target, weight)`; zero blocks are omitted.
    pub blocks: BTreeMap<(VertexId, VertexId, u32), usize>,
    /// Dimension per weight `0..=N`.
    pub by_weight: Vec<usize>,
    pub total: usize,
    /// All dimensions vanish in the top `ceil(N/2)` weights. A heuristic, not a proof.
    pub likely_finite: bool,
}

impl TruncatedQuotient {
    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Monic rewriting rules; the leading word of each rewrites to minus its tail.
    pub fn rules(&self) -> &[PathSeries] {
        &self.rules
    }

    /// Irreducible paths of weight `<= N`, in monomial order.
    pub fn normal_monomials(&self) -> &[Path] {
        &self.normal
    }

    /// Normal form of `f`.
    pub fn reduce(&self, f: &PathSeries) -> PathSeries {
        let order = Order::new(&self.quiver, self.truncation);
        let basis: Vec<Poly> = self.rules.iter().map(|r| order.poly(r)).collect();
        let r = order.reduce(&order.poly(f), &basis);
        PathSeries::from_terms(
            self.quiver.clone(),
            self.field,
            self.truncation,
            r.into_iter().map(|(m, c)| (m.path, c)),
        )
    }

    pub fn quotient_dims(&self) -> QuotientDims {
        let n = self.truncation;
        let mut blocks = BTreeMap::new();
        let mut by_weight = vec![0usize; n as usize + 1];
        for p in &self.normal {
            let w = self.quiver.path_weight(p);
            *blocks.entry((p.source, p.target, w)).or_insert(0) += 1;
            by_weight[w as usize] += 1;
        }
        let top = n.div_ceil(2) as usize;
        let likely_finite = by_weight.iter().rev().take(top).all(|&d| d == 0);
        QuotientDims {
            blocks,
            total: self.normal.len(),
            by_weight,
            likely_finite,
        }
    }
}
