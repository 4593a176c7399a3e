use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("incompatible merge: {0}")]
    MergeIncompatible(String),

    /// An update that the sketch's stream model does not allow, such as a
    /// negative delta in the cash-register model.
    #[error("stream model violation: {0}")]
    ModelViolation(String),

    #[error("item {item} outside domain [0, {domain})")]
    Domain { item: u64, domain: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("unsupported graph model: {0}")]
    UnsupportedModel(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("malformed sketch blob: {0}")]
    Codec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable category used in CLI diagnostics.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "argument",
            Error::MergeIncompatible(_) => "merge",
            Error::ModelViolation(_) => "model",
            Error::Domain { .. } => "domain",
            Error::Parse { .. } => "parse",
            Error::Validation(_) => "validation",
            Error::UnsupportedModel(_) => "model",
            Error::Singular(_) => "solver",
            Error::Shape(_) => "shape",
            Error::Codec(_) => "codec",
            Error::Io(_) => "io",
        }
    }
}
