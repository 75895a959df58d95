//! Potentials, cyclic derivatives, Ginzburg dg algebras and Jacobian algebras.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::dgalg::{DGQuiverAlgebra, WeightSolution};
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, GradedQuiver, Path};
use crate::scalar::{Field, Scalar};
use crate::series::{groebner_with, PathSeries, QuotientDims, TruncatedQuotient};

/// A finite combination of cycles in a quiver concentrated in degree 0.
#[derive(Clone, Debug)]
pub struct Potential {
    quiver: Arc<GradedQuiver>,
    field: Field,
    truncation: u32,
    terms: Vec<(Scalar, Path)>,
}

impl Potential {
    pub fn new(quiver: Arc<GradedQuiver>, field: Field, truncation: u32, terms: Vec<(Scalar, Path)>) -> Result<Self> {
        for (c, p) in &terms {
            if c.field() != field {
                return Err(Error::Incompatible);
            }
            if p.is_trivial() {
                return Err(Error::EmptyTerm);
            }
            if p.source != p.target {
                return Err(Error::NotACycle(quiver.format_path(p)));
            }
            if let Some(&a) = p.arrows.iter().find(|&&a| quiver.arrow(a).degree != 0) {
                return Err(Error::GradedArrow(quiver.arrow(a).name.clone()));
            }
        }
        Ok(Potential {
            quiver,
            field,
            truncation,
            terms,
        })
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

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    /// Length of every term if all terms share one length.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let mut it = self.terms.iter().map(|(_, p)| p.len());
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }

    /// `∂_a W = Σ_{c = u a v} v u`, extended linearly.
    pub fn cyclic_derivative(&self, a: ArrowId) -> Result<PathSeries> {
        if a >= self.quiver.num_arrows() {
            return Err(Error::UnknownArrow(format!("#{a}")));
        }
        let q = &*self.quiver;
        let mut out = PathSeries::zero(self.quiver.clone(), self.field, self.truncation);
        for (c, p) in &self.terms {
            for k in 0..p.len() {
                if p.arrows[k] != a {
                    continue;
                }
                let u = p.slice(q, 0, k);
                let v = p.slice(q, k + 1, p.len());
                out.add_term(v.concat_unchecked(&u), c.clone());
            }
        }
        Ok(out)
    }
}

/// Name of the dual arrow of `a` in the Ginzburg quiver.
pub fn dual_name(a: &str) -> String {
    format!("{a}star")
}

/// Name of the degree −2 loop at vertex `v`.
pub fn loop_name(v: &str) -> String {
    format!("t_{v}")
}

/// The Ginzburg dg algebra of `(Q, W)`.
///
/// Arrow weights are replaced by the minimal homogenizing assignment when one
/// exists, so that cohomology of the result is blockwise exact.
pub fn ginzburg_dg(w: &Potential) -> Result<DGQuiverAlgebra> {
    let q = &*w.quiver;
    if let Some(a) = q.arrows().iter().find(|a| a.degree != 0) {
        return Err(Error::GradedArrow(a.name.clone()));
    }
    let mut g = GradedQuiver::new();
    for v in q.vertices() {
        g.add_vertex(v)?;
    }
    let n = q.num_arrows();
    for a in q.arrows() {
        g.add_arrow_between(&a.name, a.source, a.target, 0, a.weight)?;
    }
    let clash = |e: Error| match e {
        Error::DuplicateArrow(s) => Error::NameClash(s),
        other => other,
    };
    for a in q.arrows() {
        g.add_arrow_between(&dual_name(&a.name), a.target, a.source, -1, 1)
            .map_err(clash)?;
    }
    let r = q.num_vertices();
    for (i, v) in q.vertices().iter().enumerate() {
        g.add_arrow_between(&loop_name(v), i, i, -2, 1).map_err(clash)?;
    }
    let g = Arc::new(g);
    let f = w.field;
    let n_tr = w.truncation;
    let path = |arrows: &[usize]| Path::from_arrows(&g, arrows).expect("composable");

    let mut d = Vec::new();
    for a in 0..n {
        let da = w.cyclic_derivative(a)?;
        d.push((n + a, da.rehome(g.clone(), n_tr)));
    }
    for i in 0..r {
        let mut dt = PathSeries::zero(g.clone(), f, n_tr);
        for (a, arrow) in q.arrows().iter().enumerate() {
            if arrow.source == i {
                dt.add_term(path(&[a, n + a]), f.one());
            }
            if arrow.target == i {
                dt.add_term(path(&[n + a, a]), -f.one());
            }
        }
        d.push((2 * n + i, dt));
    }
    let alg = DGQuiverAlgebra::new_deferred(g, f, n_tr, d)?;
    let alg = match alg.solve_weights() {
        WeightSolution::Found(ws) => alg.with_weights(&ws.weights, n_tr)?,
        WeightSolution::Infeasible(_) => alg,
    };
    if let Some(fail) = alg.check_d_squared().failure {
        return Err(Error::Internal(format!(
            "d² of the Ginzburg algebra fails at {}",
            fail.arrow
        )));
    }
    Ok(alg)
}

#[derive(Clone, Debug)]
pub struct JacobianReport {
    pub quotient: TruncatedQuotient,
    pub dims: QuotientDims,
    /// Arrows whose cyclic derivative vanishes identically.
    pub vanishing: Vec<String>,
}

/// `kQ / (∂_a W)` at truncation `n`.
pub fn jacobian(w: &Potential, n: u32) -> Result<JacobianReport> {
    let q = &w.quiver;
    if let Some(a) = q.arrows().iter().find(|a| a.degree != 0) {
        return Err(Error::GradedArrow(a.name.clone()));
    }
    let mut gens = Vec::new();
    let mut vanishing = Vec::new();
    for a in 0..q.num_arrows() {
        let da = w.cyclic_derivative(a)?.truncate(n);
        if da.is_zero() {
            vanishing.push(q.arrow(a).name.clone());
        } else {
            gens.push(da);
        }
    }
    let quotient = groebner_with(q.clone(), w.field, &gens, n)?;
    let dims = quotient.quotient_dims();
    Ok(JacobianReport {
        quotient,
        dims,
        vanishing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn loop_x3(f: Field, n: u32) -> Potential {
        let mut q = GradedQuiver::new();
        q.add_vertex("v").unwrap();
        q.add_arrow("x", "v", "v", 0, 1).unwrap();
        let q = Arc::new(q);
        let c = Path::from_arrows(&q, &[0, 0, 0]).unwrap();
        Potential::new(q, f, n, vec![(f.one(), c)]).unwrap()
    }

    fn cycle_abc(n: u32) -> Potential {
        let mut q = GradedQuiver::new();
        for v in ["1", "2", "3"] {
            q.add_vertex(v).unwrap();
        }
        q.add_arrow("a", "1", "2", 0, 1).unwrap();
        q.add_arrow("b", "2", "3", 0, 1).unwrap();
        q.add_arrow("c", "3", "1", 0, 1).unwrap();
        let q = Arc::new(q);
        let c = Path::from_arrows(&q, &[0, 1, 2]).unwrap();
        Potential::new(q, Field::Rational, n, vec![(Field::Rational.one(), c)]).unwrap()
    }

    #[test]
    fn derivatives() {
        let w = cycle_abc(8);
        let q = w.quiver().clone();
        let bc = Path::from_arrows(&q, &[1, 2]).unwrap();
        let d = w.cyclic_derivative(0).unwrap();
        assert_eq!(d.terms().len(), 1);
        assert!(d.coefficient(&bc).is_one());
        let x = loop_x3(Field::Rational, 8);
        let d = x.cyclic_derivative(0).unwrap();
        let xx = Path::from_arrows(x.quiver(), &[0, 0]).unwrap();
        assert_eq!(d.coefficient(&xx), Field::Rational.from_i64(3));
        assert!(loop_x3(Field::Prime(3), 8).cyclic_derivative(0).unwrap().is_zero());
    }

    #[test]
    fn ginzburg_loop_x3() {
        let g = ginzburg_dg(&loop_x3(Field::Rational, 8)).unwrap();
        let q = g.quiver();
        let names: Vec<&str> = q.arrows().iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["x", "xstar", "t_v"]);
        let weights: Vec<u32> = q.arrows().iter().map(|a| a.weight).collect();
        assert_eq!(weights, [1, 2, 3]);
        assert!(g.check_d_squared().passed());
    }

    #[test]
    fn ginzburg_a2_shape() {
        let mut q = GradedQuiver::new();
        q.add_vertex("1").unwrap();
        q.add_vertex("2").unwrap();
        q.add_arrow("a", "1", "2", 0, 1).unwrap();
        let w = Potential::new(Arc::new(q), Field::Rational, 6, vec![]).unwrap();
        let g = ginzburg_dg(&w).unwrap();
        let q = g.quiver();
        assert_eq!(q.num_arrows(), 4);
        let astar = q.arrow(1);
        assert_eq!((astar.source, astar.target, astar.degree), (1, 0, -1));
        assert!(g.differential(1).is_zero());
        let t1 = g.differential(2);
        assert_eq!(t1.terms().len(), 1);
        let (p, c) = t1.terms().iter().next().unwrap();
        assert_eq!(q.format_path(p), "a astar");
        assert!(c.is_one());
        let (p, c) = g.differential(3).terms().iter().next().unwrap();
        assert_eq!(q.format_path(p), "astar a");
        assert_eq!(*c, -Field::Rational.one());
    }

    #[test]
    fn jacobian_dims() {
        assert_eq!(jacobian(&loop_x3(Field::Rational, 10), 10).unwrap().dims.total, 2);
        let j = jacobian(&cycle_abc(10), 10).unwrap();
        assert_eq!(j.dims.total, 6);
        assert!(j.dims.likely_finite);
    }

    #[test]
    fn rejects_bad_terms() {
        let mut q = GradedQuiver::new();
        q.add_vertex("1").unwrap();
        q.add_vertex("2").unwrap();
        q.add_arrow("a", "1", "2", 0, 1).unwrap();
        let q = Arc::new(q);
        let f = Field::Rational;
        let a = Path::from_arrows(&q, &[0]).unwrap();
        assert!(matches!(
            Potential::new(q.clone(), f, 4, vec![(f.one(), a)]),
            Err(Error::NotACycle(_))
        ));
        assert_eq!(
            Potential::new(q, f, 4, vec![(f.one(), Path::trivial(0))]).unwrap_err(),
            Error::EmptyTerm
        );
    }
}
