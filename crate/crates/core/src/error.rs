use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("field of size {p}^{k} is outside the supported range (q <= 1024, k <= 4)")]
    UnsupportedSize { p: u32, k: u32 },
    #[error("no built-in modulus for GF({p}^{k})")]
    NoModulusAvailable { p: u32, k: u32 },
    #[error("built-in modulus for GF({p}^{k}) is reducible")]
    ReducibleModulus { p: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires a {0} space")]
    WrongShape(&'static str),
    #[error("n must be at least {min} for this space, got {n}")]
    InvalidRank { n: usize, min: usize },
    #[error("q(v) is not a unit")]
    NonUnitNorm,
    #[error("matrix is not an isometry")]
    NotAnIsometry,
    #[error("Dickson invariant is only exposed on even-dimensional spaces")]
    OddDimension,
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("{0} is not a prime power")]
    InvalidPrimePower(u64),

    #[error("element is not a member of the acting group")]
    NotAMember,
    #[error("point is not on the quadric")]
    NotOnQuadric,

    #[error("q(x) != q(y)")]
    NormMismatch,
    #[error("transport endpoints must be nonzero")]
    ZeroVector,
    #[error("no auxiliary reflection vector found among the candidates")]
    SearchExhausted,
    #[error("auxiliary reflection vector w' has q(w') = 0")]
    HypothesisBreach,
    #[error("target unreachable by reflection pairs")]
    Unreachable,
    #[error("certificate failed verification: {0}")]
    Unverified(String),
    #[error("q(v) = 0")]
    IsotropicVector,
    #[error("1/q(v) is not a square")]
    NonSquareNorm,
    #[error("brute-force and reflection-closure enumerations disagree ({brute} vs {closure} elements)")]
    RouteMismatch { brute: usize, closure: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
