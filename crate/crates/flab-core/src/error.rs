use thiserror::Error;

/// Unified error type for the kernel.
///
/// `CapExceeded` is special: check suites degrade gracefully on it (the item
/// is reported as skipped rather than failed), and the CLI maps it to its own
/// exit code when it occurs on a required path.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible generators: {0}")]
    IncompatibleGenerators(String),

    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    #[error("enumeration cap exceeded: {context} needs more than {cap} elements")]
    CapExceeded { cap: u64, context: String },

    #[error("not a p-group: order {order} is not a power of {p}")]
    NotPGroup { p: u64, order: u64 },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("element is not a member of the group: {0}")]
    NotAMember(String),

    #[error("{p} does not divide {value} ({context})")]
    PrimeDoesNotDivide { p: u64, value: u64, context: String },

    #[error("p = 2 is not supported here: {0}")]
    EvenPrime(String),

    #[error("kind mismatch: {0}")]
    KindMismatch(String),

    #[error("divisibility violated: {0}")]
    DivisibilityViolated(String),

    #[error("matrix is not unipotent of order dividing p: {0}")]
    NotUnipotentOrderP(String),

    #[error("unsupported prime {p}: {context}")]
    UnsupportedPrime { p: u64, context: String },

    #[error("invalid input at {path}: {message}")]
    InvalidInput { path: String, message: String },

    #[error("internal cross-check failed: {0}")]
    InternalCheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn cap(cap: u64, context: impl Into<String>) -> Self {
        Error::CapExceeded { cap, context: context.into() }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
