use thiserror::Error;

use crate::oracle::OracleError;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A caller-side precondition (feasibility, ordering) does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// The supplied Thom code does not describe a real root of the polynomial.
    #[error("Thom code {code:?} is not realized by any real root")]
    InvalidCode { code: Vec<i8> },

    #[error("solver error: {0}")]
    Solver(String),

    #[error(transparent)]
    Oracle(#[from] OracleError),

    /// A query point could not be attached to any vertex of the union graph.
    #[error("could not locate a graph vertex for {what}: {advice}")]
    LocateFailure { what: String, advice: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
