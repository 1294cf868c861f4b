use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("malformed endomorphism: row {row} needs {needed} > block size {available}")]
    RowFit {
        row: usize,
        needed: usize,
        available: usize,
    },

    #[error("objects belong to different algebras: {0}")]
    OwnershipMismatch(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("canonical extension undefined: ker δ ∩ J is supported on blocks {0:?}")]
    ExtensionUndefined(Vec<usize>),

    #[error("ideal supported on {0:?} is not invariant")]
    InvarianceViolation(Vec<usize>),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// An always-on certificate or a cross-check between independent routes failed.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("input rejected, {relation} residual {residual:e} exceeds tolerance {tol:e}")]
    Rejected {
        relation: &'static str,
        residual: f64,
        tol: f64,
    },
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) | Error::Rejected { .. } | Error::NumericalFailure(_) => 1,
            Error::ResourceGuard(_) => 3,
            _ => 2,
        }
    }
}
