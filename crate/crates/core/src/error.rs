use thiserror::Error;

/// Errors raised by the polynomial and polynomial-matrix routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is composite")]
    CompositeModulus(u64),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("no element of order at least {0}")]
    NoSuchElement(u64),
    #[error("operands live over different fields")]
    CtxMismatch,
    #[error("degree too large: {0}")]
    DegreeTooLarge(String),
    #[error("element order too small for {0} points")]
    OrderTooSmall(usize),
    #[error("evaluation points are not pairwise distinct")]
    DuplicatePoints,
    #[error("polynomial is not invertible at zero")]
    NotInvertibleAtZero,
    #[error("both polynomials are zero")]
    BothZero,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("operand degree {got} exceeds multiplier envelope {bound}")]
    EnvelopeExceeded { bound: usize, got: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("fraction reconstruction failed: {0}")]
    ReconstructionFailed(String),
    #[error("field has no geometric grid of length {0}")]
    NoGeometricGrid(usize),
    #[error("matrix is singular at x = 0")]
    SingularAtZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("insufficient precision for rational reconstruction")]
    InsufficientPrecision,
    #[error("dimension {got} exceeds cap {cap}")]
    DimensionCap { cap: usize, got: usize },
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("verification failed after {0} attempts")]
    VerificationFailed(usize),
    #[error("genericity assumption violated: {0}")]
    GenericityFailure(String),
    #[error("evaluation point is singular")]
    SingularEvaluation,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("element is not invertible modulo the given polynomial")]
    NotInvertible,
    #[error("instance too large for the brute-force oracle: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
