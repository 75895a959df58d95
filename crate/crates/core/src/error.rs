use alloc::string::String;

/// Errors raised by constructors and operations of this crate.
///
/// Verification outcomes (a failing d² check, a failed isomorphism check) are
/// reported through dedicated report types rather than through this enum.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    InvalidField(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar literal `{0}`")]
    ScalarSyntax(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrow `{0}` must have positive weight")]
    ZeroWeight(String),
    #[error("paths are not composable: {0}")]
    NotComposable(String),
    #[error("quiver is not a tree")]
    NotATree,
    #[error("operands live over different quivers, fields or truncations")]
    Incompatible,
    #[error("zero generator in ideal")]
    ZeroGenerator,
    #[error("differential of `{arrow}` is inconsistent: {reason}")]
    BadDifferential { arrow: String, reason: String },
    #[error("d² does not vanish on `{arrow}` (weight {weight})")]
    DSquaredNonzero { arrow: String, weight: u32 },
    #[error("potential term is not a cycle: {0}")]
    NotACycle(String),
    #[error("empty potential term")]
    EmptyTerm,
    #[error("arrow `{0}` is graded; potentials live on degree-0 quivers")]
    GradedArrow(String),
    #[error("name clash while building a derived quiver: `{0}`")]
    NameClash(String),
    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),
    #[error("A-infinity relation fails on chain {0}")]
    AInfinityRelation(String),
    #[error("algebra is not positive minimal: {0}")]
    NotPositiveMinimal(String),
    #[error("twist value on `{0}` must be nonzero")]
    ZeroTwist(String),
    #[error("bimodule axiom fails: {0}")]
    BimoduleAxiom(String),
    #[error("algebra is not certified finite-dimensional at truncation {0}")]
    NotFiniteDimensional(u32),
    #[error("algebra is not self-injective: {0}")]
    NotSelfInjective(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid module map: {0}")]
    InvalidMap(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
