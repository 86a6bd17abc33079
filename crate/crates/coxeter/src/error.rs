use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the word, root, and classification algorithms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A token in an input file, word, or family name could not be read.
    #[error("syntax error: {0}")]
    Syntax(String),

    /// A structurally well-formed matrix violates the Coxeter matrix axioms.
    #[error("invalid Coxeter matrix: {0}")]
    Validation(String),

    /// The family name is not in the built-in catalog.
    #[error("unknown family: {0}")]
    UnknownFamily(String),

    /// A generator index does not exist at this rank.
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    /// A sign or definiteness decision fell inside the tolerance band and
    /// cannot be certified either way.
    #[error("numeric ambiguity: {0}")]
    NumericAmbiguity(String),

    /// An enumeration grew past its configured cap.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// The requested subset generates an infinite standard parabolic.
    #[error("not a finite subgroup: {0}")]
    NotFinite(String),

    /// The root is not periodic under the given element.
    #[error("not periodic: {0}")]
    NotPeriodic(String),

    /// The operation requires an irreducible infinite group.
    #[error("not irreducible and infinite: {0}")]
    NotIrreducibleInfinite(String),

    /// The root is absent from the enumerated table.
    #[error("unknown root: {0}")]
    UnknownRoot(String),

    /// An internal invariant failed, usually a rounding-key collision.
    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
}
