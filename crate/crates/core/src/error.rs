use thiserror::Error;

/// Errors raised anywhere in the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("element is not invertible in U(SO(2)): unit coefficient {0} is not ±1")]
    NotInvertible(String),

    #[error("argument outside the domain of definition: {0}")]
    Domain(String),

    #[error("root refinement failed to converge: {0}")]
    Convergence(String),

    #[error("malformed document: {0}")]
    Schema(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("insufficient spectrum: need eigenvalues up to {needed}, available up to {available}")]
    InsufficientSpectrum { needed: f64, available: f64 },

    #[error("{0} is not a member of the candidate set")]
    NotAMember(f64),

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("class {0:?} is missing from the class table")]
    MissingClass(String),

    #[error("class table is not injective: {0}")]
    NonInjectiveTable(String),

    #[error("too many candidates for exhaustive enumeration: {0} (limit {1})")]
    TooManyCandidates(usize, usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status: 1 for bad input, 2 for failures of the computation itself.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Convergence(_)
            | Error::InsufficientSpectrum { .. }
            | Error::NotInvertible(_)
            | Error::TooManyCandidates(..) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotInvertible(_) => "NotInvertible",
            Error::Domain(_) => "DomainError",
            Error::Convergence(_) => "ConvergenceError",
            Error::Schema(_) => "SchemaError",
            Error::Validation(_) => "ValidationError",
            Error::InsufficientSpectrum { .. } => "InsufficientSpectrum",
            Error::NotAMember(_) => "NotAMember",
            Error::UnsupportedDomain(_) => "UnsupportedDomain",
            Error::Precondition(_) => "PreconditionError",
            Error::MissingClass(_) => "MissingClass",
            Error::NonInjectiveTable(_) => "NonInjectiveTable",
            Error::TooManyCandidates(..) => "TooManyCandidates",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
