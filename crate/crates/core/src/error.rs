use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("offspring law rejected: {0}")]
    InvalidLaw(String),

    #[error("size guard: {what} = {value} exceeds the limit {limit}")]
    SizeGuard { what: &'static str, value: u64, limit: u64 },

    /// A sampler needed more vertices than its budget allows.
    #[error("vertex budget of {budget} exceeded")]
    Budget { budget: u64 },

    /// Sampling radius too small for the transport function's range.
    #[error("truncation radius {radius} is below the adequacy bound 2k = {required}")]
    Adequacy { radius: u32, required: u32 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("trial {index} failed: {source}")]
    Trial {
        index: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Strips `Trial` wrappers.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::Trial { source, .. } => source.root_cause(),
            other => other,
        }
    }
}
