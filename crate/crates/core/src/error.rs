use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("field error: {0}")]
    Field(String),

    #[error("relation term `{term}` has length {length}; admissible relations need length >= 2")]
    NonAdmissible { term: String, length: usize },

    #[error("quotient is not finite-dimensional within truncation bound {bound}: {detail}")]
    InfiniteDimensional { bound: usize, detail: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("complex is not minimal: {0}")]
    NotMinimal(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("refusing infeasible computation: {what} (estimated size {estimate}, cap {cap})")]
    Infeasible {
        what: String,
        estimate: f64,
        cap: u64,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}
