use thiserror::Error;

/// Errors across the crate, grouped by how a caller should react.
///
/// `Resource` means the request exceeded a configured cap and may succeed
/// with a smaller input or a raised cap; everything else is a contract
/// violation of the specific operation.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally valid input that violates a parameter constraint.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A configured cap (memory, runtime scale) was exceeded.
    #[error("resource error: {0}")]
    Resource(String),

    /// The function does not support the requested operation.
    #[error("unsupported function: {0}")]
    Unsupported(String),

    /// A series that does not converge for this function.
    #[error("divergence error: {0}")]
    Divergence(String),

    /// Index outside the supported range of a family.
    #[error("range error: {0}")]
    Range(String),

    /// Not enough usable data points for a fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Function has no entry in the exponent catalog.
    #[error("catalog miss: {0}")]
    CatalogMiss(String),
}

impl Error {
    /// Process exit code for the CLI: resource-cap errors exit 2,
    /// everything else exits 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
