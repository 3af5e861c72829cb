use thiserror::Error;

/// Everything that can go wrong while parsing or analysing a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: duplicate identifier `{id}`")]
    DuplicateIdentifier { line: usize, id: String },

    #[error("line {line}: unknown vertex `{id}`")]
    UnknownVertex { line: usize, id: String },

    #[error("line {line}: unknown arrow `{id}`")]
    UnknownArrow { line: usize, id: String },

    #[error("line {line}: relation is not a composable path ({detail})")]
    NonComposableRelation { line: usize, detail: String },

    #[error("line {line}: relation has length {length}, monomial relations need length at least 2")]
    RelationTooShort { line: usize, length: usize },

    #[error("algebra is infinite-dimensional; nonzero cycle {witness}")]
    InfiniteDimensional { witness: String },

    #[error("path {0} is zero in the algebra")]
    ZeroPath(String),

    #[error("path {0} is trivial")]
    TrivialPath(String),

    #[error("not 1-Gorenstein; witness p={witness}, relation {relation}")]
    NotOneGorenstein { witness: String, relation: String },

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("truncation degree {degree} outside 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("perfect paths {first} and {second} branch in the initial-segment order; not a chain")]
    NotAChain { first: String, second: String },

    #[error("invalid involution: {0}")]
    InvalidInvolution(String),

    #[error("algebra is not Gorenstein (projective dimension of D(A): {pd_of_dual}, injective dimension of A: {id_of_regular})")]
    NotGorenstein { pd_of_dual: String, id_of_regular: String },

    #[error("representations belong to different presentations")]
    PresentationMismatch,

    #[error("classification mismatch: {0}")]
    MismatchDetected(String),

    #[error("resolution cutoff of {0} steps reached")]
    CutoffReached(usize),

    #[error("integer overflow in multiplicity bookkeeping")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
