use thiserror::Error;

/// Errors raised by the algebra engines and the verification suites.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polynomials live over different variable tables")]
    TableMismatch,

    #[error("derivation has no image for variable `{0}`")]
    UndefinedImage(String),

    #[error("input polynomial is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("target is not homogeneous of central degree {0}")]
    Inhomogeneous(u32),

    #[error("size guard exceeded: {what} needs about {estimate} items (limit {limit})")]
    GuardExceeded {
        what: String,
        estimate: u128,
        limit: u128,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("expansion not rank-stable at rank {0}")]
    Unstable(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
