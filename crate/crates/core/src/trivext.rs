//! Radical-square-zero algebras of trees, twisted dual bimodules and their
//! trivial extensions.
//!
//! Dual basis actions follow `(a·f)(x) = f(xa)` and `(f·a)(x) = f(ax)`, so
//! for an arrow `β: s → t` the dual `β*` runs `t → s` and
//! `β·β* = λ(β) e_s*`, `β*·β = μ(β) e_t*`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BasisElement, FiniteAlgebra, IsoReport};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::quiver::{GradedQuiver, Step};
use crate::scalar::{Field, Scalar};

/// `kQ / (paths of length 2)`.
#[derive(Clone, Debug)]
pub struct RadSquareZeroAlgebra {
    quiver: Arc<GradedQuiver>,
    field: Field,
}

impl RadSquareZeroAlgebra {
    pub fn new(quiver: Arc<GradedQuiver>, field: Field) -> Self {
        RadSquareZeroAlgebra { quiver, field }
    }

    pub fn quiver(&self) -> &Arc<GradedQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_tree(&self) -> bool {
        self.quiver.is_tree()
    }

    /// The algebra itself, arrows in degree 1.
    pub fn algebra(&self) -> Result<FiniteAlgebra> {
        let radical = self
            .quiver
            .arrows()
            .iter()
            .map(|a| BasisElement {
                name: a.name.clone(),
                source: a.source,
                target: a.target,
                degree: 1,
            })
            .collect();
        FiniteAlgebra::from_radical(self.field, self.quiver.vertices().to_vec(), None, radical, vec![])
    }
}

/// `^λ D(R)^μ`.
#[derive(Clone, Debug)]
pub struct TwistedDualBimodule {
    base: RadSquareZeroAlgebra,
    lambda: Vec<Scalar>,
    mu: Vec<Scalar>,
    /// False when the quiver is not a tree; the module is still valid.
    pub on_tree: bool,
}

impl TwistedDualBimodule {
    pub fn base(&self) -> &RadSquareZeroAlgebra {
        &self.base
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    pub fn mu(&self) -> &[Scalar] {
        &self.mu
    }

    fn r(&self) -> usize {
        self.base.quiver.num_vertices()
    }

    fn m(&self) -> usize {
        self.base.quiver.num_arrows()
    }

    /// Left action `a·f` of an `R`-basis element on a dual basis element,
    /// indices as in the trivial extension (R first, then `β*`, then `e*`).
    fn left(&self, a: usize, f: usize) -> SparseVec {
        let (r, m) = (self.r(), self.m());
        let q = &self.base.quiver;
        let mut out = SparseVec::new();
        let f_source = self.dual_source(f);
        if a < r {
            if f_source == a {
                out.insert(f, self.base.field.one());
            }
        } else {
            let k = a - r;
            if f == r + m + k {
                out.insert(r + 2 * m + q.arrow(k).source, self.lambda[k].clone());
            }
        }
        out
    }

    fn right(&self, f: usize, a: usize) -> SparseVec {
        let (r, m) = (self.r(), self.m());
        let q = &self.base.quiver;
        let mut out = SparseVec::new();
        let f_target = self.dual_target(f);
        if a < r {
            if f_target == a {
                out.insert(f, self.base.field.one());
            }
        } else {
            let k = a - r;
            if f == r + m + k {
                out.insert(r + 2 * m + q.arrow(k).target, self.mu[k].clone());
            }
        }
        out
    }

    fn dual_source(&self, f: usize) -> usize {
        let (r, m) = (self.r(), self.m());
        if f < r + 2 * m {
            self.base.quiver.arrow(f - r - m).target
        } else {
            f - r - 2 * m
        }
    }

    fn dual_target(&self, f: usize) -> usize {
        let (r, m) = (self.r(), self.m());
        if f < r + 2 * m {
            self.base.quiver.arrow(f - r - m).source
        } else {
            f - r - 2 * m
        }
    }

    /// Checks the three bimodule identities on all basis triples.
    pub fn check_bimodule(&self) -> Result<()> {
        let (r, m) = (self.r(), self.m());
        let rdim = r + m;
        let duals: Vec<usize> = (r + m..r + 2 * m + r).collect();
        let rmul = |a: usize, b: usize| -> SparseVec {
            let q = &self.base.quiver;
            let one = self.base.field.one();
            let mut v = SparseVec::new();
            let ta = if a < r { a } else { q.arrow(a - r).target };
            let sb = if b < r { b } else { q.arrow(b - r).source };
            if ta != sb {
                return v;
            }
            // arrow·arrow vanishes
            if a < r {
                v.insert(b, one);
            } else if b < r {
                v.insert(a, one);
            }
            v
        };
        let lin = |v: &SparseVec, g: &dyn Fn(usize) -> SparseVec| -> SparseVec {
            let mut out = SparseVec::new();
            for (&k, c) in v {
                crate::linalg::axpy(&mut out, c, &g(k));
            }
            out
        };
        for a in 0..rdim {
            for b in 0..rdim {
                let ab = rmul(a, b);
                for &f in &duals {
                    let checks = [
                        (
                            lin(&ab, &|x| self.left(x, f)),
                            lin(&self.left(b, f), &|y| self.left(a, y)),
                            "(ab)m = a(bm)",
                        ),
                        (
                            lin(&ab, &|x| self.right(f, x)),
                            lin(&self.right(f, a), &|y| self.right(y, b)),
                            "m(ab) = (ma)b",
                        ),
                        (
                            lin(&self.left(a, f), &|y| self.right(y, b)),
                            lin(&self.right(f, b), &|y| self.left(a, y)),
                            "(am)b = a(mb)",
                        ),
                    ];
                    for (l, rr, what) in checks {
                        if l != rr {
                            return Err(Error::BimoduleAxiom(format!("{what} on basis triple ({a}, {b}, {f})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn twisted_dual(base: &RadSquareZeroAlgebra, lambda: Vec<Scalar>, mu: Vec<Scalar>) -> Result<TwistedDualBimodule> {
    let q = &base.quiver;
    if lambda.len() != q.num_arrows() || mu.len() != q.num_arrows() {
        return Err(Error::DimensionMismatch("one twist value per arrow".into()));
    }
    for (k, (l, u)) in lambda.iter().zip(&mu).enumerate() {
        if l.is_zero() || u.is_zero() {
            return Err(Error::ZeroTwist(q.arrow(k).name.clone()));
        }
        if l.field() != base.field || u.field() != base.field {
            return Err(Error::Incompatible);
        }
    }
    let m = TwistedDualBimodule {
        base: base.clone(),
        lambda,
        mu,
        on_tree: q.is_tree(),
    };
    m.check_bimodule()?;
    Ok(m)
}

/// `R ⋉ M` with the grading `e: 0`, `β: 1`, `β*: d`, `e*: d + 1`.
#[derive(Clone, Debug)]
pub struct TrivialExtensionAlgebra {
    bimodule: TwistedDualBimodule,
    d: i32,
    algebra: FiniteAlgebra,
}

/// Kinds of basis elements, in basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Idempotent(usize),
    Arrow(usize),
    DualArrow(usize),
    DualIdempotent(usize),
}

pub fn trivial_extension(m: &TwistedDualBimodule, d: i32) -> Result<TrivialExtensionAlgebra> {
    let r = m.r();
    let degrees = (0..r)
        .map(|_| 0)
        .chain((0..m.m()).map(|_| 1))
        .chain((0..m.m()).map(|_| d))
        .chain((0..r).map(|_| d + 1))
        .collect();
    build(m, d, degrees)
}

fn build(m: &TwistedDualBimodule, d: i32, degrees: Vec<i32>) -> Result<TrivialExtensionAlgebra> {
    m.check_bimodule()?;
    let q = &m.base.quiver;
    let (r, na) = (m.r(), m.m());
    let mut radical = Vec::new();
    for (k, a) in q.arrows().iter().enumerate() {
        radical.push(BasisElement {
            name: a.name.clone(),
            source: a.source,
            target: a.target,
            degree: degrees[r + k],
        });
    }
    for (k, a) in q.arrows().iter().enumerate() {
        radical.push(BasisElement {
            name: format!("{}*", a.name),
            source: a.target,
            target: a.source,
            degree: degrees[r + na + k],
        });
    }
    for (i, v) in q.vertices().iter().enumerate() {
        radical.push(BasisElement {
            name: format!("e_{v}*"),
            source: i,
            target: i,
            degree: degrees[r + 2 * na + i],
        });
    }
    // radical-relative products: arrows act on duals; everything else vanishes
    let shift = |v: SparseVec| -> SparseVec { v.into_iter().map(|(k, c)| (k - r, c)).collect() };
    let mut products = Vec::new();
    for k in 0..na {
        let a = r + k;
        for f in r + na..r + 2 * na + r {
            let l = m.left(a, f);
            if !l.is_empty() {
                products.push(((a - r, f - r), shift(l)));
            }
            let rr = m.right(f, a);
            if !rr.is_empty() {
                products.push(((f - r, a - r), shift(rr)));
            }
        }
    }
    let algebra = FiniteAlgebra::from_radical(
        m.base.field,
        q.vertices().to_vec(),
        Some(degrees[..r].to_vec()),
        radical,
        products,
    )?;
    Ok(TrivialExtensionAlgebra {
        bimodule: m.clone(),
        d,
        algebra,
    })
}

impl TrivialExtensionAlgebra {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn bimodule(&self) -> &TwistedDualBimodule {
        &self.bimodule
    }

    pub fn d(&self) -> i32 {
        self.d
    }

    pub fn kind(&self, index: usize) -> BasisKind {
        let (r, m) = (self.bimodule.r(), self.bimodule.m());
        if index < r {
            BasisKind::Idempotent(index)
        } else if index < r + m {
            BasisKind::Arrow(index - r)
        } else if index < r + 2 * m {
            BasisKind::DualArrow(index - r - m)
        } else {
            BasisKind::DualIdempotent(index - r - 2 * m)
        }
    }

    /// The same algebra with basis degrees replaced (no consistency check).
    pub fn with_degrees(&self, degrees: Vec<i32>) -> Result<TrivialExtensionAlgebra> {
        if degrees.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch("one degree per basis element".into()));
        }
        build(&self.bimodule, self.d, degrees)
    }

    /// Dimension of `e_i B^p e_j` for every nonzero block `(i, j, p)`.
    pub fn graded_table(&self) -> BTreeMap<(usize, usize, i32), usize> {
        let mut t = BTreeMap::new();
        for b in self.algebra.basis() {
            *t.entry((b.source, b.target, b.degree)).or_insert(0) += 1;
        }
        t
    }
}

/// Diagonal coefficients of one normalization stage at vertex `i`:
/// `(f on vertices, f on arrows, λ', μ')`.
#[allow(clippy::type_complexity)]
fn stage(
    q: &GradedQuiver,
    i: usize,
    lambda: &[Scalar],
    mu: &[Scalar],
    one: &Scalar,
) -> Result<(Vec<Scalar>, Vec<Scalar>, Vec<Scalar>, Vec<Scalar>)> {
    let mut fv = Vec::with_capacity(q.num_vertices());
    for j in 0..q.num_vertices() {
        let value = match q.unique_walk(j, i)? {
            Some(w) => match w.last_step() {
                Some(Step { arrow, inverse: false }) => lambda[arrow].clone(),
                Some(Step { arrow, inverse: true }) => mu[arrow].clone(),
                None => one.clone(),
            },
            None => one.clone(),
        };
        fv.push(value);
    }
    let mut fa = Vec::with_capacity(q.num_arrows());
    let mut l2 = lambda.to_vec();
    let mut m2 = mu.to_vec();
    for (k, a) in q.arrows().iter().enumerate() {
        if a.source != i && a.target != i {
            fa.push(fv[a.target].clone());
        } else {
            fa.push(one.clone());
        }
        if a.target == i {
            l2[k] = one.clone();
        }
        if a.source == i {
            m2[k] = one.clone();
        }
    }
    Ok((fv, fa, l2, m2))
}

/// Isomorphism `A(Q, λ, μ) → A(Q, 1, 1)` for a tree `Q`, as a matrix whose
/// columns are images of basis elements. Identity on `e_i` and arrows.
///
/// Normalizes one vertex at a time in input order; each stage is a diagonal
/// bimodule isomorphism `^{λ'}D^{μ'} → ^λD^μ` determined by the last step of
/// the unique walk to that vertex.
pub fn walk_rescale_iso(quiver: &GradedQuiver, field: Field, lambda: &[Scalar], mu: &[Scalar]) -> Result<Matrix> {
    if !quiver.is_tree() {
        return Err(Error::NotATree);
    }
    for (k, (l, u)) in lambda.iter().zip(mu).enumerate() {
        if l.is_zero() || u.is_zero() {
            return Err(Error::ZeroTwist(quiver.arrow(k).name.clone()));
        }
    }
    let (r, m) = (quiver.num_vertices(), quiver.num_arrows());
    let one = field.one();
    let mut lam = lambda.to_vec();
    let mut mu_ = mu.to_vec();
    let mut gv = vec![one.clone(); r];
    let mut ga = vec![one.clone(); m];
    for i in 0..r {
        let (fv, fa, l2, m2) = stage(quiver, i, &lam, &mu_, &one)?;
        for j in 0..r {
            gv[j] *= &fv[j];
        }
        for k in 0..m {
            ga[k] *= &fa[k];
        }
        lam = l2;
        mu_ = m2;
    }
    // composite A(1,1) → A(λ,μ) is diag(ga, gv) on duals; invert it
    let n = 2 * (r + m);
    let mut phi = Matrix::identity(field, n);
    for k in 0..m {
        phi.set(r + m + k, r + m + k, ga[k].inv().ok_or(Error::DivisionByZero)?);
    }
    for j in 0..r {
        phi.set(r + 2 * m + j, r + 2 * m + j, gv[j].inv().ok_or(Error::DivisionByZero)?);
    }
    Ok(phi)
}

/// Checks that `phi` is a unital algebra isomorphism `a → b`.
pub fn verify_iso(phi: &Matrix, a: &TrivialExtensionAlgebra, b: &TrivialExtensionAlgebra) -> IsoReport {
    a.algebra.check_isomorphism(&b.algebra, phi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CySymmetryReport {
    /// `dim e_i B^p e_j`, nonzero entries only.
    pub table: BTreeMap<(usize, usize, i32), usize>,
    /// Offending `(i, j, p)` with `dim e_j B^p e_i ≠ dim e_i B^{d+1−p} e_j`.
    pub violations: Vec<(usize, usize, i32)>,
}

impl CySymmetryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `dim e_j B^p e_i = dim e_i B^{d+1−p} e_j` for all `i, j, p`.
pub fn cy_symmetry_check(alg: &FiniteAlgebra, d: i32) -> CySymmetryReport {
    let mut table = BTreeMap::new();
    for b in alg.basis() {
        *table.entry((b.source, b.target, b.degree)).or_insert(0usize) += 1;
    }
    let get = |i: usize, j: usize, p: i32| table.get(&(i, j, p)).copied().unwrap_or(0);
    let mut degrees: Vec<i32> = table.keys().map(|k| k.2).collect();
    degrees.extend(table.keys().map(|k| d + 1 - k.2));
    degrees.sort_unstable();
    degrees.dedup();
    let r = alg.num_vertices();
    let mut violations = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for &p in &degrees {
                if get(j, i, p) != get(i, j, d + 1 - p) {
                    violations.push((i, j, p));
                }
            }
        }
    }
    CySymmetryReport { table, violations }
}

/// Names for the `λ, μ` rows of a report.
pub fn twist_labels(q: &GradedQuiver) -> Vec<String> {
    q.arrows().iter().map(|a| a.name.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::tests::linear;

    fn a2() -> Arc<GradedQuiver> {
        Arc::new(linear(2))
    }

    fn ext(q: Arc<GradedQuiver>, f: Field, l: &[i64], u: &[i64], d: i32) -> TrivialExtensionAlgebra {
        let r = RadSquareZeroAlgebra::new(q, f);
        let m = twisted_dual(
            &r,
            l.iter().map(|&x| f.from_i64(x)).collect(),
            u.iter().map(|&x| f.from_i64(x)).collect(),
        )
        .unwrap();
        trivial_extension(&m, d).unwrap()
    }

    #[test]
    fn a2_dual_actions() {
        let f = Field::Rational;
        let b = ext(a2(), f, &[2], &[1], 2);
        let a = b.algebra();
        let idx = |n: &str| a.basis_index(n).unwrap();
        let (alpha, alpha_s, e1s, e2s) = (idx("a"), idx("a*"), idx("e_1*"), idx("e_2*"));
        assert_eq!(a.mul_basis(alpha, alpha_s).get(&e1s), Some(&f.from_i64(2)));
        assert_eq!(a.mul_basis(alpha_s, alpha).get(&e2s), Some(&f.one()));
        assert!(a.mul_basis(alpha, e2s).is_empty());
        assert!(a.mul_basis(alpha, e1s).is_empty());
    }

    #[test]
    fn dimensions_and_grading() {
        let b = ext(a2(), Field::Rational, &[1], &[1], 2);
        assert_eq!(b.algebra().dim(), 6);
        let mut by_degree = BTreeMap::new();
        for x in b.algebra().basis() {
            *by_degree.entry(x.degree).or_insert(0) += 1;
        }
        assert_eq!(
            by_degree.into_iter().collect::<Vec<_>>(),
            vec![(0, 2), (1, 1), (2, 1), (3, 2)]
        );
        assert!(b.algebra().is_graded());
        let a3 = ext(Arc::new(linear(3)), Field::Rational, &[1, 1], &[1, 1], 2);
        assert_eq!(a3.algebra().dim(), 10);
        let one = ext(Arc::new(linear(1)), Field::Rational, &[], &[], 2);
        assert_eq!(one.algebra().dim(), 2);
    }

    #[test]
    fn a2_iso_over_f7() {
        let f = Field::Prime(7);
        let twisted = ext(a2(), f, &[2], &[3], 2);
        let plain = ext(a2(), f, &[1], &[1], 2);
        let phi = walk_rescale_iso(&a2(), f, &[f.from_i64(2)], &[f.from_i64(3)]).unwrap();
        assert!(verify_iso(&phi, &twisted, &plain).passed());
        let id = Matrix::identity(f, 6);
        assert!(!verify_iso(&id, &twisted, &plain).passed());
        assert!(verify_iso(&id, &plain, &plain).passed());
    }

    #[test]
    fn trivial_twists_give_identity() {
        let f = Field::Rational;
        let q = linear(4);
        let ones = vec![f.one(); 3];
        assert_eq!(walk_rescale_iso(&q, f, &ones, &ones).unwrap(), Matrix::identity(f, 14));
    }

    #[test]
    fn cy_symmetry() {
        for d in [2, 3] {
            let b = ext(Arc::new(linear(3)), Field::Rational, &[2, 5], &[3, 1], d);
            assert!(cy_symmetry_check(b.algebra(), d).passed());
        }
        let b = ext(a2(), Field::Rational, &[1], &[1], 2);
        let mut degrees: Vec<i32> = b.algebra().basis().iter().map(|x| x.degree).collect();
        let n = degrees.len();
        degrees[n - 1] = 2;
        degrees[n - 2] = 2;
        let bad = b.with_degrees(degrees).unwrap();
        assert!(!cy_symmetry_check(bad.algebra(), 2).passed());
    }

    #[test]
    fn rejects_zero_twist() {
        let f = Field::Rational;
        let r = RadSquareZeroAlgebra::new(a2(), f);
        assert!(matches!(
            twisted_dual(&r, vec![f.zero()], vec![f.one()]),
            Err(Error::ZeroTwist(_))
        ));
    }
}
