use thiserror::Error;

/// Errors reported by the exact-arithmetic and group layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular: {0}")]
    Singular(String),
    #[error("zero polynomial not allowed: {0}")]
    ZeroPolynomial(String),
    #[error("empty interval: left bound must be below right bound")]
    EmptyInterval,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("holonomy closure exceeded cap of {cap} elements; group is not crystallographic or the cap is too low")]
    HolonomyClosureExceeded { cap: usize },
    #[error("holonomy element does not preserve the lattice: {0}")]
    LatticeNotPreserved(String),
    #[error("inconsistent coset representatives: words with equal linear part differ by the non-lattice vector {0}")]
    InconsistentReps(String),
    #[error("generator linear part is not invertible")]
    SingularGenerator,
    #[error("not realizable: {0}")]
    NotRealizable(String),
    #[error("endomorphism precondition violated: {0}")]
    NotAnEndomorphism(String),
    #[error("no unique fixed point: linear part has eigenvalue 1")]
    NoUniqueFixedPoint,
    #[error("invalid quotient modulus {0}; need k >= 2")]
    InvalidModulus(i64),
    #[error("quotient is not finite; obstruction search needs a finite quotient")]
    QuotientNotFinite,
    #[error("quotient too large: {size} exceeds cap {cap}")]
    QuotientTooLarge { size: u64, cap: u64 },
    #[error("center image is not invariant under this endomorphism; quotient map undefined")]
    CenterNotInvariant,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
