use thiserror::Error;

/// Errors raised by the algebra routines and the expression parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a WZ-form: {0}")]
    NotAWZForm(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("undeclared identifier `{name}` at line {line}, column {column}")]
    UndeclaredIdentifier { name: String, line: usize, column: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
