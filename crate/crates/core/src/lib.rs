//! Exact computations with graded quivers with differential, Ginzburg
//! algebras, bar and Koszul duality, trivial extensions and stable categories
//! of self-injective algebras.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod barkoszul;
pub mod dgalg;
pub mod error;
pub mod frobenius;
pub mod ginzburg;
pub mod linalg;
pub mod quiver;
pub mod random;
pub mod scalar;
pub mod series;
pub mod trivext;

pub use error::{Error, Result};
pub use quiver::{Arrow, GradedQuiver, Path};
pub use scalar::{Field, Scalar};
pub use series::{groebner_truncated, PathSeries, QuotientDims, TruncatedQuotient, TwoSidedIdeal};
