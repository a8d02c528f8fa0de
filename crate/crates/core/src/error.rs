use alloc::string::String;
use core::fmt;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A space descriptor is malformed (bad exponent, weights, map).
    Config(String),
    /// An argument violates an operation's precondition.
    Argument(String),
    /// The exhaustive oracle would enumerate too many subsets.
    Capacity {
        /// Support size of the offending vector.
        support: usize,
        /// Largest support the exhaustive oracle accepts.
        limit: usize,
    },
    /// No closed form is registered for this space.
    UnsupportedOracle(String),
    /// A checker's hypothesis failed, so the check was not run.
    Hypothesis(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(msg) => write!(f, "invalid space configuration: {msg}"),
            Error::Argument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Capacity { support, limit } => write!(
                f,
                "support of size {support} exceeds the exhaustive limit {limit}; \
                 use the sampling estimator instead"
            ),
            Error::UnsupportedOracle(kind) => write!(f, "no closed form registered for {kind}"),
            Error::Hypothesis(msg) => write!(f, "hypothesis violated, check not run: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Result alias for this crate.
pub type Result<T> = core::result::Result<T, Error>;
