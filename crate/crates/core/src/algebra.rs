//! Finite-dimensional basic algebras given by structure constants.
//!
//! The basis starts with the vertex idempotents `e_i` and continues with a
//! basis of the radical; every basis element lives in a single block
//! `e_s Λ e_t` (it runs from `s` to `t`, products compose left to right).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{add_entry, axpy, Echelon, Matrix, SparseVec};
use crate::quiver::Path;
use crate::scalar::{Field, Scalar};
use crate::series::TruncatedQuotient;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub degree: i32,
}

/// A linear combination of words in the generators; the empty word at
/// basis element `i < r` stands for the idempotent `e_i`.
pub type WordExpr = Vec<(Scalar, Vec<usize>)>;

#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    field: Field,
    vertices: Vec<String>,
    basis: Vec<BasisElement>,
    table: Vec<SparseVec>,
    generators: Vec<usize>,
    words: Vec<WordExpr>,
}

impl FiniteAlgebra {
    /// Builds the algebra from a radical basis and its products.
    ///
    /// `radical` and `products` index radical elements from 0; missing
    /// products are zero. Fails unless the product is block-compatible,
    /// associative and nilpotent on the radical.
    pub fn from_radical(
        field: Field,
        vertices: Vec<String>,
        vertex_degrees: Option<Vec<i32>>,
        radical: Vec<BasisElement>,
        products: Vec<((usize, usize), SparseVec)>,
    ) -> Result<Self> {
        let r = vertices.len();
        let n = r + radical.len();
        let mut basis: Vec<BasisElement> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| BasisElement {
                name: format!("e_{v}"),
                source: i,
                target: i,
                degree: vertex_degrees.as_ref().map_or(0, |d| d[i]),
            })
            .collect();
        for b in &radical {
            if b.source >= r || b.target >= r {
                return Err(Error::InvalidAlgebra(format!("{} has an unknown endpoint", b.name)));
            }
        }
        basis.extend(radical);
        let mut table = vec![SparseVec::new(); n * n];
        for x in 0..n {
            for y in 0..n {
                let unit_product = match (x < r, y < r) {
                    (true, true) => (x == y).then_some(x),
                    (true, false) => (basis[y].source == x).then_some(y),
                    (false, true) => (basis[x].target == y).then_some(x),
                    (false, false) => None,
                };
                if let Some(k) = unit_product {
                    table[x * n + y].insert(k, field.one());
                }
            }
        }
        for ((a, b), v) in products {
            let (x, y) = (a + r, b + r);
            if x >= n || y >= n {
                return Err(Error::InvalidAlgebra("product index out of range".into()));
            }
            let (bx, by) = (&basis[x], &basis[y]);
            if bx.target != by.source && !v.is_empty() {
                return Err(Error::InvalidAlgebra(format!(
                    "{}·{} is nonzero but not composable",
                    bx.name, by.name
                )));
            }
            let v: SparseVec = v.into_iter().map(|(k, c)| (k + r, c)).collect();
            for (&k, c) in &v {
                if k >= n {
                    return Err(Error::InvalidAlgebra(format!(
                        "{}·{} leaves the radical",
                        bx.name, by.name
                    )));
                }
                let bk = &basis[k];
                if (bk.source, bk.target) != (bx.source, by.target) {
                    return Err(Error::InvalidAlgebra(format!(
                        "{}·{} has a term outside its block",
                        bx.name, by.name
                    )));
                }
                if c.field() != field {
                    return Err(Error::Incompatible);
                }
            }
            let v: SparseVec = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            table[x * n + y] = v;
        }
        let mut alg = FiniteAlgebra {
            field,
            vertices,
            basis,
            table,
            generators: Vec::new(),
            words: Vec::new(),
        };
        alg.check_associative()?;
        alg.find_generators()?;
        Ok(alg)
    }

    /// The algebra `kQ / I` from a truncated quotient whose top half vanishes.
    pub fn from_quotient(qt: &TruncatedQuotient) -> Result<Self> {
        let dims = qt.quotient_dims();
        if !dims.likely_finite {
            return Err(Error::NotFiniteDimensional(qt.truncation()));
        }
        let q = qt.quiver();
        let normal: Vec<&Path> = qt.normal_monomials().iter().filter(|p| !p.is_trivial()).collect();
        let index: BTreeMap<&Path, usize> = normal.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let radical = normal
            .iter()
            .map(|p| BasisElement {
                name: q.format_path(p).replace(' ', "*"),
                source: p.source,
                target: p.target,
                degree: q.path_degree(p),
            })
            .collect();
        let mut products = Vec::new();
        for (i, x) in normal.iter().enumerate() {
            for (j, y) in normal.iter().enumerate() {
                if x.target != y.source {
                    continue;
                }
                let xy = crate::series::PathSeries::monomial(
                    q.clone(),
                    qt.field(),
                    qt.truncation(),
                    x.concat_unchecked(y),
                    qt.field().one(),
                );
                let red = qt.reduce(&xy);
                let mut v = SparseVec::new();
                for (p, c) in red.terms() {
                    let k = *index
                        .get(p)
                        .ok_or_else(|| Error::Internal(format!("{} is not normal", q.format_path(p))))?;
                    v.insert(k, c.clone());
                }
                products.push(((i, j), v));
            }
        }
        Self::from_radical(qt.field(), q.vertices().to_vec(), None, radical, products)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    /// Product of basis elements `x·y`.
    pub fn mul_basis(&self, x: usize, y: usize) -> &SparseVec {
        &self.table[x * self.dim() + y]
    }

    pub fn mul(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&x, a) in u {
            for (&y, b) in v {
                let p = self.mul_basis(x, y);
                if !p.is_empty() {
                    axpy(&mut out, &(a * b), p);
                }
            }
        }
        out
    }

    /// Minimal generating set of the radical (basis indices).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Each basis element as a combination of generator words.
    pub fn words(&self) -> &[WordExpr] {
        &self.words
    }

    pub fn unit(&self) -> SparseVec {
        (0..self.num_vertices()).map(|i| (i, self.field.one())).collect()
    }

    /// Whether products respect the degrees of basis elements.
    pub fn is_graded(&self) -> bool {
        let n = self.dim();
        (0..n).all(|x| {
            (0..n).all(|y| {
                self.mul_basis(x, y)
                    .keys()
                    .all(|&k| self.basis[k].degree == self.basis[x].degree + self.basis[y].degree)
            })
        })
    }

    pub fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul_basis(x, y);
                for z in 0..n {
                    let mut l = SparseVec::new();
                    for (&k, c) in xy {
                        axpy(&mut l, c, self.mul_basis(k, z));
                    }
                    let yz = self.mul_basis(y, z);
                    let mut rr = SparseVec::new();
                    for (&k, c) in yz {
                        axpy(&mut rr, c, self.mul_basis(x, k));
                    }
                    if l != rr {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.basis[x].name, self.basis[y].name, self.basis[z].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn find_generators(&mut self) -> Result<()> {
        let r = self.num_vertices();
        let n = self.dim();
        let mut square = Echelon::new(self.field);
        for x in r..n {
            for y in r..n {
                square.insert(self.mul_basis(x, y));
            }
        }
        let mut span = square.clone();
        let mut gens = Vec::new();
        for x in r..n {
            let e: SparseVec = [(x, self.field.one())].into_iter().collect();
            if span.insert(&e) {
                gens.push(x);
            }
        }
        // words of increasing length until they stop being nonzero
        let mut found: Vec<(SparseVec, Vec<usize>)> = Vec::new();
        let mut frontier: Vec<(SparseVec, Vec<usize>)> = gens
            .iter()
            .map(|&g| ([(g, self.field.one())].into_iter().collect(), vec![g]))
            .collect();
        let mut independent = Echelon::new(self.field);
        let mut length = 1;
        while !frontier.is_empty() {
            if length > n + 1 {
                return Err(Error::InvalidAlgebra("radical is not nilpotent".into()));
            }
            let mut next = Vec::new();
            for (v, w) in frontier {
                if independent.insert(&v) {
                    found.push((v.clone(), w.clone()));
                }
                for &g in &gens {
                    if self.basis[*w.last().unwrap()].target != self.basis[g].source {
                        continue;
                    }
                    let p = self.mul(&v, &[(g, self.field.one())].into_iter().collect());
                    if !p.is_empty() {
                        let mut w2 = w.clone();
                        w2.push(g);
                        next.push((p, w2));
                    }
                }
            }
            frontier = next;
            length += 1;
        }
        if found.len() != n - r {
            return Err(Error::InvalidAlgebra(
                "radical is not generated by its elements outside the square".into(),
            ));
        }
        // express radical basis vectors through the independent words
        let m = n - r;
        let cols: Vec<Vec<Scalar>> = found
            .iter()
            .map(|(v, _)| {
                (r..n)
                    .map(|k| v.get(&k).cloned().unwrap_or_else(|| self.field.zero()))
                    .collect()
            })
            .collect();
        let inv = Matrix::from_columns(self.field, m, &cols)
            .inverse()
            .ok_or_else(|| Error::Internal("word basis is singular".into()))?;
        let mut words: Vec<WordExpr> = (0..r).map(|_| vec![(self.field.one(), Vec::new())]).collect();
        for b in 0..m {
            let mut expr = Vec::new();
            for (j, (_, w)) in found.iter().enumerate() {
                let c = inv.get(j, b);
                if !c.is_zero() {
                    expr.push((c.clone(), w.clone()));
                }
            }
            words.push(expr);
        }
        self.generators = gens;
        self.words = words;
        Ok(())
    }

    /// Structure constants as a list of nonzero radical products
    /// (indices relative to the radical), the input form of [`Self::from_radical`].
    pub fn radical_products(&self) -> Vec<((usize, usize), SparseVec)> {
        let r = self.num_vertices();
        let n = self.dim();
        let mut out = Vec::new();
        for x in r..n {
            for y in r..n {
                let p = self.mul_basis(x, y);
                if !p.is_empty() {
                    out.push(((x - r, y - r), p.iter().map(|(&k, c)| (k - r, c.clone())).collect()));
                }
            }
        }
        out
    }

    /// Checks that the linear map `phi` (columns = images of basis elements
    /// of `self` in `other`) is a unital algebra isomorphism.
    pub fn check_isomorphism(&self, other: &FiniteAlgebra, phi: &Matrix) -> IsoReport {
        let n = self.dim();
        if other.dim() != n || phi.rows() != n || phi.cols() != n {
            return IsoReport::fail("dimensions differ");
        }
        if !phi.is_invertible() {
            return IsoReport::fail("map is not bijective");
        }
        let img = |v: &SparseVec| -> SparseVec {
            let mut out = SparseVec::new();
            for (&k, c) in v {
                for i in 0..n {
                    let x = phi.get(i, k);
                    if !x.is_zero() {
                        add_entry(&mut out, i, c * x);
                    }
                }
            }
            out
        };
        if img(&self.unit()) != other.unit() {
            return IsoReport::fail("map is not unital");
        }
        let col = |k: usize| -> SparseVec {
            (0..n)
                .filter(|&i| !phi.get(i, k).is_zero())
                .map(|i| (i, phi.get(i, k).clone()))
                .collect()
        };
        for x in 0..n {
            for y in 0..n {
                let lhs = img(self.mul_basis(x, y));
                let rhs = other.mul(&col(x), &col(y));
                if lhs != rhs {
                    return IsoReport::fail(&format!(
                        "not multiplicative at ({}, {})",
                        self.basis[x].name, self.basis[y].name
                    ));
                }
            }
        }
        IsoReport { failure: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoReport {
    pub failure: Option<String>,
}

impl IsoReport {
    fn fail(msg: &str) -> Self {
        IsoReport {
            failure: Some(msg.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    /// k[x]/(x^n) with basis e, x, ..., x^{n-1}.
    pub(crate) fn truncated_poly(f: Field, n: usize) -> FiniteAlgebra {
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

    #[test]
    fn truncated_polynomial_words() {
        let a = truncated_poly(Field::Rational, 4);
        assert_eq!(a.dim(), 4);
        assert_eq!(a.generators(), &[1]);
        assert_eq!(a.words()[3], vec![(Field::Rational.one(), vec![1, 1, 1])]);
    }

    #[test]
    fn rejects_non_associative() {
        let f = Field::Rational;
        let b = |name: &str| BasisElement {
            name: name.to_string(),
            source: 0,
            target: 0,
            degree: 0,
        };
        // x·x = y, y·x = 0, x·y = y: fails (x·x)·x = x·(x·x)
        let products = vec![
            ((0, 0), [(1, f.one())].into_iter().collect()),
            ((0, 1), [(1, f.one())].into_iter().collect()),
        ];
        assert!(FiniteAlgebra::from_radical(f, vec!["v".into()], None, vec![b("x"), b("y")], products).is_err());
    }

    #[test]
    fn identity_is_isomorphism() {
        let a = truncated_poly(Field::Prime(5), 3);
        let id = Matrix::identity(Field::Prime(5), 3);
        assert!(a.check_isomorphism(&a, &id).passed());
    }
}
