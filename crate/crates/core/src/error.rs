use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown bounds format `{0}`")]
    UnknownFormat(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("search budget exhausted after {nodes} nodes ({reason}); no verdict")]
    BudgetExhausted { nodes: u64, reason: String },

    #[error("table fingerprint mismatch: certificate has {expected}, table has {actual}")]
    FingerprintMismatch { expected: String, actual: String },

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("verification failed at {location}: {message}")]
    VerificationFailed { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
