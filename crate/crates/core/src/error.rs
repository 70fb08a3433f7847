use thiserror::Error;

/// Every failure the library can report.
///
/// The CLI turns these into `{code, message, position?}` objects, using
/// [`Error::code`] for the `code` field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monomial set is empty")]
    EmptySet,
    #[error("exponent vector {index} has length {found}, expected {expected}")]
    LengthMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("monomial {index} has degree {found}, expected {expected}")]
    MixedDegrees {
        index: usize,
        expected: u32,
        found: u32,
    },
    #[error("monomials {first} and {second} coincide")]
    DuplicateMonomial { first: usize, second: usize },
    #[error("monomials must have positive degree")]
    ZeroDegree,
    #[error("exponent sum overflows")]
    ExponentOverflow,
    #[error("normalization leaves monomials of degree 0")]
    DegenerateResult,
    #[error("monomial set is not squarefree")]
    NotSquarefree,
    #[error("monomial set is not normalized (it is conic or has a common factor)")]
    NotNormalized,
    #[error("expected as many monomials as variables ({n}), found {q}")]
    NotSquare { n: usize, q: usize },
    #[error("at least two monomials are required")]
    TooFewMonomials,
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("first set is not contained in the second")]
    NotSubset,
    #[error("x{0}*x{1} is not a member of the set")]
    NotAnEdge(usize, usize),
    #[error("contraction makes monomials {first} and {second} equal")]
    CollapseCollision { first: usize, second: usize },
    #[error("monomial set is not doubly stochastic")]
    NotDoublyStochastic,
    #[error("assignment is not a permutation of the variable indices")]
    NotPermutation,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("Veronese-type bounds admit no monomial of the requested degree")]
    EmptyResult,
    #[error("minor size {size} exceeds matrix dimensions {rows}x{cols}")]
    BadMinorSize {
        size: usize,
        rows: usize,
        cols: usize,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("input size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("matrix family does not support symbolic rank by specialization")]
    UnsupportedFamily,
    #[error("criteria disagree: {0}")]
    CriterionDisagreement(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable index {index} at position {position} exceeds n = {n}")]
    IndexOutOfRange {
        position: usize,
        index: usize,
        n: usize,
    },
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptySet => "EmptySet",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::MixedDegrees { .. } => "MixedDegrees",
            Error::DuplicateMonomial { .. } => "DuplicateMonomial",
            Error::ZeroDegree => "ZeroDegree",
            Error::ExponentOverflow => "ExponentOverflow",
            Error::DegenerateResult => "DegenerateResult",
            Error::NotSquarefree => "NotSquarefree",
            Error::NotNormalized => "NotNormalized",
            Error::NotSquare { .. } => "NotSquare",
            Error::TooFewMonomials => "TooFewMonomials",
            Error::WrongDegree { .. } => "WrongDegree",
            Error::NotSubset => "NotSubset",
            Error::NotAnEdge(..) => "NotAnEdge",
            Error::CollapseCollision { .. } => "CollapseCollision",
            Error::NotDoublyStochastic => "NotDB",
            Error::NotPermutation => "NotPermutation",
            Error::Precondition(_) => "PreconditionViolated",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::EmptyResult => "EmptyResult",
            Error::BadMinorSize { .. } => "BadMinorSize",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::TooLarge { .. } => "TooLarge",
            Error::UnsupportedFamily => "UnsupportedFamily",
            Error::CriterionDisagreement(_) => "CriterionDisagreement",
            Error::Syntax { .. } => "SyntaxError",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::Io(_) => "IoError",
        }
    }

    /// Character offset into the parsed text, for parse errors.
    pub fn position(&self) -> Option<usize> {
        match self {
            Error::Syntax { position, .. } | Error::IndexOutOfRange { position, .. } => {
                Some(*position)
            }
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
