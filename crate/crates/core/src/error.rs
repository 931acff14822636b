use thiserror::Error;

/// Errors raised by the geometry kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different scalar domains")]
    DomainMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("operation needs a finite scalar domain, got {0}")]
    InfiniteDomain(String),
    #[error("invalid field specification `{0}`: {1}")]
    InvalidFieldSpec(String, String),
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("trivial case excluded: {0}")]
    TrivialCase(String),
    #[error("subspace is not a complement of W")]
    NotAComplement,
    #[error("vectors are not linearly independent")]
    Dependent,
    #[error("subspace is not contained in the reference span")]
    NotInSpan,
    #[error("the two points of the line coincide")]
    EqualPoints,
    #[error("line is not regular")]
    NotRegular,
    #[error("elements are not complementary")]
    NotComplementary,
    #[error("matrix block is not invertible: {0}")]
    NotInvertible(String),
    #[error("map is not central with respect to the given bases")]
    NotCentral,
    #[error("operation needs a symmetric chart (dim W = dim U), got k={k}, n-k={m}")]
    NotSymmetric { k: usize, m: usize },
    #[error("hyperplane contains W")]
    HyperplaneContainsW,
    #[error("not a member of the regulus")]
    NotAMember,
    #[error("regulus reconstruction failed: {0}")]
    Reconstruction(String),
    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("family is not *-transversal: {0}")]
    NotStarTransversal(String),
    #[error("not a dual spread: {0}")]
    NotDualSpread(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
