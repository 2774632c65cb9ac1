use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the workbench can report.
///
/// `code()` gives the stable machine-readable tag used in CLI diagnostics.
/// Errors that signal a broken convention (two methods disagreeing, a
/// bidegree leak on an integrable structure) are classed as internal.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("denominator subspace is not contained in the numerator")]
    DenNotContained,
    #[error("subspace is already realified")]
    AlreadyReal,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("invalid Lie algebra data: {0}")]
    InvalidAlgebra(String),
    #[error("Jacobi identity fails on ({}, {}, {})", .0 + 1, .1 + 1, .2 + 1)]
    JacobiViolation(usize, usize, usize),
    #[error("{which} does not square to -Id")]
    NotAlmostComplex { which: String },
    #[error("I and J do not anticommute")]
    NotAnticommuting,
    #[error("bad (1,0)-coframe: {0}")]
    BadCoframe(String),
    #[error("{which} is not integrable")]
    NotIntegrable { which: String },
    #[error("bidegree leakage: {0}")]
    Leakage(String),
    #[error("expected a form of bidegree {expected}, got {found}")]
    WrongDegree { expected: String, found: String },
    #[error("metric is not hermitian for {which}")]
    NotHermitian { which: String },
    #[error("metric is not positive definite")]
    NotPositive,
    #[error("{check}: methods disagree ({detail})")]
    MethodDisagreement { check: String, detail: String },
    #[error("no trivializing (2n,0)-form: structure is not SL(n,H)")]
    NoTrivializingForm,
    #[error("not almost-abelian: {0}")]
    NotAlmostAbelian(String),
    #[error("derivation is not of integrable block shape: {0}")]
    NotIntegrableShape(String),
    #[error("bad family parameters: {0}")]
    BadParameters(String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("schema error at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("non-rational literal {literal:?} at {path}")]
    NonRationalLiteral { path: String, literal: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DenNotContained => "DEN_NOT_CONTAINED",
            Error::AlreadyReal => "ALREADY_REAL",
            Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            Error::DegreeOutOfRange { .. } => "DEGREE_OUT_OF_RANGE",
            Error::InvalidAlgebra(_) => "INVALID_ALGEBRA",
            Error::JacobiViolation(..) => "JACOBI_VIOLATION",
            Error::NotAlmostComplex { .. } => "NOT_ALMOST_COMPLEX",
            Error::NotAnticommuting => "NOT_ANTICOMMUTING",
            Error::BadCoframe(_) => "BAD_COFRAME",
            Error::NotIntegrable { .. } => "NOT_INTEGRABLE",
            Error::Leakage(_) => "LEAKAGE",
            Error::WrongDegree { .. } => "WRONG_DEGREE",
            Error::NotHermitian { .. } => "NOT_HERMITIAN",
            Error::NotPositive => "NOT_POSITIVE",
            Error::MethodDisagreement { .. } => "METHOD_DISAGREEMENT",
            Error::NoTrivializingForm => "NO_TRIVIALIZING_FORM",
            Error::NotAlmostAbelian(_) => "NOT_ALMOST_ABELIAN",
            Error::NotIntegrableShape(_) => "NOT_INTEGRABLE_SHAPE",
            Error::BadParameters(_) => "BAD_PARAMETERS",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::Schema { .. } => "SCHEMA_ERROR",
            Error::NonRationalLiteral { .. } => "NON_RATIONAL_LITERAL",
            Error::Unsupported(_) => "UNSUPPORTED",
        }
    }

    /// Convention tripwires: these never come from bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::MethodDisagreement { .. } | Error::Leakage(_))
    }
}
