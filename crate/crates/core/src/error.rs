use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not 1-Lipschitz on segment [{x0}, {x1}]: |Δg| = {dg} > {dx}")]
    NotLipschitz { x0: f64, x1: f64, dg: f64, dx: f64 },

    #[error("function is not canonical: {0}")]
    NotCanonical(String),

    #[error("unbounded candidate: {sign} crossing is infinite at t = {t}")]
    Unbounded { sign: char, t: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numeric overflow after index {last_valid}")]
    Overflow { last_valid: usize },

    #[error("prefix too small: {0}")]
    PrefixTooSmall(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
