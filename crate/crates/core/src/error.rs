use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("ordinates not strictly increasing at line {line}")]
    Monotonicity { line: usize },
    #[error("zero table is empty")]
    EmptyTable,
    #[error("T={t} exceeds zero-table coverage (max ordinate {max})")]
    Coverage { t: f64, max: f64 },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
