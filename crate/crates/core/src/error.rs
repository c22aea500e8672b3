use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("resource exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceExceeded { what: String, needed: u128, cap: u128 },
    #[error("improper ideal: the ideal is the whole ring")]
    ImproperIdeal,
    #[error("invalid multiplicative set: {0}")]
    InvalidMultiplicativeSet(String),
    #[error("ideal is not prime")]
    NotPrime,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn resource(what: impl Into<String>, needed: u128, cap: u128) -> Self {
        Error::ResourceExceeded {
            what: what.into(),
            needed,
            cap,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
