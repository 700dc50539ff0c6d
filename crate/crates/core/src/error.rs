use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid sequence parameters: {0}")]
    InvalidParams(&'static str),
    #[error("unsupported derived parameters for multisection: {0}")]
    UnsupportedDerivedParams(String),
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("scalars belong to different quadratic fields")]
    FieldMismatch,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("instance not supported in symbolic mode: {0}")]
    UnsupportedInstance(String),
    #[error("series has positive valuation; shift before dividing")]
    Valuation,
    #[error("logarithm needs constant term 1, found {0}")]
    Normalization(String),
    #[error("irrational part survives at coefficient {index}: {value}")]
    CancellationFailure { index: usize, value: String },
    #[error("row {row} of triangle `{name}` is not available")]
    Range { name: String, row: u64 },
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("could not certify convergence: {0}")]
    Inconclusive(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
}
