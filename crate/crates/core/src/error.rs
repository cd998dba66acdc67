use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("monomial {0} is not part of the column basis")]
    MissingMonomial(String),
    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid degree bounds: {0}")]
    Bounds(String),
    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    /// Process exit code for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::VariableMismatch(..)
            | Error::Precondition(_)
            | Error::Bounds(_)
            | Error::DegreeOverflow { .. }
            | Error::MissingMonomial(_)
            | Error::Dimension(_) => 3,
            Error::Singular(_) | Error::Contract(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
