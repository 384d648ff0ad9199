use thiserror::Error;

use crate::scalar::FieldTag;

pub type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("field mismatch: {left} vs {right}")]
    TagMismatch { left: FieldTag, right: FieldTag },

    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial is constant")]
    ConstantPolynomial,

    #[error("factorization incomplete: {remaining} factor(s) of undecided irreducibility remain")]
    FactorizationIncomplete { remaining: usize },

    #[error("action is not induced by an operator (check failed on basis vector {column})")]
    InconsistentAction { column: usize },

    #[error("vector must be nonzero")]
    ZeroVector,

    #[error("operation requires {expected} tensor kind")]
    WrongKind { expected: &'static str },

    #[error("{0} is not a supported prime modulus")]
    InvalidModulus(u64),

    #[error("module dimension must be at least 1")]
    EmptyModule,

    #[error("a formal sequence needs at least one pair")]
    EmptySequence,

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot parse scalar {text:?}: {reason}")]
    ScalarParse { text: String, reason: String },

    #[error("rewrite step does not apply: {0}")]
    RuleNotApplicable(&'static str),

    #[error("closure search exceeded its budget after {states} states")]
    BudgetExceeded { states: usize },

    #[error("closure oracle requires a prime field, got {0}")]
    NotFinite(FieldTag),

    #[error("invalid JSON at {path}: {message}")]
    Json { path: String, message: String },
}

impl AlgebraError {
    pub(crate) fn json(path: impl Into<String>, message: impl Into<String>) -> Self {
        AlgebraError::Json {
            path: path.into(),
            message: message.into(),
        }
    }
}
