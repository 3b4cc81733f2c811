use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("operation requires a polynomial without negative exponents")]
    LaurentInput,

    #[error("invalid variable index {index} for dimension {dim}")]
    InvalidIndex { index: usize, dim: usize },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("empty point set")]
    EmptyPointSet,

    #[error("ambient dimension {dim} exceeds the configured guard {max}")]
    DimensionGuard { dim: usize, max: usize },

    #[error("bounding box holds {size} lattice points, above the configured guard {max}")]
    BoxTooLarge { size: String, max: u64 },

    #[error("polytope has non-integral vertices")]
    NonIntegral,

    #[error("polytope has a vertex with a negative coordinate")]
    NegativeVertex,

    #[error("the field polytope does not contain the origin")]
    OriginNotContained,

    #[error("vector field is singular at the base point")]
    SingularPoint,

    #[error("denominator {index} vanishes at the base point")]
    VanishingDenominator { index: usize },

    #[error("base point is not a zero of the Fuchsian right-hand side (component {index})")]
    InconsistentBasePoint { index: usize },

    #[error("resonance at order {order}: {detail}")]
    Resonance { order: usize, detail: String },

    #[error("component {index} has zero constant term but appears with a negative exponent")]
    NonInvertible { index: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("derivative cap {cap} exhausted: every derivative up to it vanishes along the germ")]
    CapExhausted { cap: usize },

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}
