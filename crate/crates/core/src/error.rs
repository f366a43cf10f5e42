use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Every variant has a stable name (see [`AlgebraError::name`]) so that
/// command-line reports can identify the failure without parsing messages.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("operands live in different base rings ({0} vs {1})")]
    IncompatibleRings(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different algebras: {0}")]
    IncompatibleAlgebras(String),
    #[error("determinant {0} is not fixed by sigma; extension data is inconsistent")]
    NotInBaseRing(String),
    #[error("prime {0} ramifies in the extension")]
    RamifiedPrime(String),
    #[error("residue ring of size {size} exceeds the supported limit {limit}")]
    UnsupportedSize { size: u128, limit: u128 },
    #[error("prime {0} occurs more than once in the ideal factorization")]
    RepeatedPrime(String),
    #[error("wrong case: {0}")]
    WrongCase(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("norm equation target is zero")]
    ZeroTarget,
    #[error("idempotent lifting did not stabilize within {rounds} rounds")]
    LiftDivergence { rounds: usize },
    #[error("verification failed: {reason}")]
    VerificationFailed {
        reason: String,
        counterexample: Option<(u64, u64)>,
    },
    #[error("bound formula {requested} does not match ideal shape {shape}")]
    FormulaMismatch { requested: String, shape: String },
    #[error("message has length {got}, expected {expected}")]
    BadMessageLength { got: usize, expected: usize },
    #[error("{what} has {size} elements, more than the enumeration limit {limit}")]
    TooLargeToEnumerate {
        what: String,
        size: u128,
        limit: u128,
    },
    #[error("search needs {needed} evaluations, budget is {budget}")]
    SearchBudgetExceeded { needed: u128, budget: u128 },
    #[error("the code has no nonzero codeword in the search region")]
    EmptyCode,
    #[error("matrix is numerically singular (|det| = {0:e})")]
    SingularInput(f64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl AlgebraError {
    /// Stable identifier of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            AlgebraError::IncompatibleRings(..) => "IncompatibleRings",
            AlgebraError::DivisionByZero => "DivisionByZero",
            AlgebraError::IncompatibleAlgebras(_) => "IncompatibleAlgebras",
            AlgebraError::NotInBaseRing(_) => "NotInBaseRing",
            AlgebraError::RamifiedPrime(_) => "RamifiedPrime",
            AlgebraError::UnsupportedSize { .. } => "UnsupportedSize",
            AlgebraError::RepeatedPrime(_) => "RepeatedPrime",
            AlgebraError::WrongCase(_) => "WrongCase",
            AlgebraError::UnsupportedCase(_) => "UnsupportedCase",
            AlgebraError::ZeroTarget => "ZeroTarget",
            AlgebraError::LiftDivergence { .. } => "LiftDivergence",
            AlgebraError::VerificationFailed { .. } => "VerificationFailed",
            AlgebraError::FormulaMismatch { .. } => "FormulaMismatch",
            AlgebraError::BadMessageLength { .. } => "BadMessageLength",
            AlgebraError::TooLargeToEnumerate { .. } => "TooLargeToEnumerate",
            AlgebraError::SearchBudgetExceeded { .. } => "SearchBudgetExceeded",
            AlgebraError::EmptyCode => "EmptyCode",
            AlgebraError::SingularInput(_) => "SingularInput",
            AlgebraError::InvalidInput(_) => "InvalidInput",
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        AlgebraError::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
