use std::fmt;

use crate::rational::Rational;

/// Which side of a correlation a quantity lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Party::Alice => f.write_str("alice"),
            Party::Bob => f.write_str("bob"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("entry at row {row}, column {col} is negative")]
    NegativeEntry { row: usize, col: usize },

    #[error("column {col} sums to {sum}, expected 1")]
    ColumnSumNotOne { col: usize, sum: Rational },

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("a finite set needs at least one label")]
    EmptySet,

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("set mismatch: {0}")]
    SetMismatch(String),

    #[error("weights must be nonnegative and sum to 1 (sum is {0})")]
    WeightsNotNormalized(Rational),

    #[error("projection for input {x}, output {y} is not Hermitian")]
    NotHermitian { x: String, y: String },

    #[error("projection for input {x}, output {y} is not idempotent")]
    NotIdempotent { x: String, y: String },

    #[error("projections for input {0} do not sum to the identity")]
    NotComplete(String),

    #[error("marginal condition {condition} fails at output {y}")]
    MarginalMismatch { y: usize, condition: u8 },

    #[error("the domain must have at least two points")]
    DomainTooSmall,

    #[error("hypothesis {condition} fails{}", at.map(|(a, b)| format!(" at ({a}, {b})")).unwrap_or_default())]
    ConditionViolated {
        condition: u8,
        at: Option<(usize, usize)>,
    },

    #[error("pair weights are not symmetric")]
    NotSymmetric,

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("correlation is not synchronous")]
    NotSynchronous,

    #[error("correlation is not a morphism of {0}")]
    NotInCategory(String),

    #[error("correlation is not a section")]
    NotASection,

    #[error("correlation is not a retraction")]
    NotARetraction,

    #[error("this construction needs a symmetric correlation")]
    SymmetryRequired,

    #[error("value {0} is outside [0, 1]")]
    OutOfRange(Rational),

    #[error("intersection vector must be 1 at the empty set, found {0}")]
    NotNormalizedAtEmptySet(Rational),
}

pub type Result<T> = std::result::Result<T, Error>;
