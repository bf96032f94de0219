use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Each variant maps to a stable string code (see [`Error::code`]) used by the
/// command line tool and the C interface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {k} unsupported (1 <= k <= {max})")]
    DegreeUnsupported { k: u32, max: u32 },
    #[error("field order {p}^{k} exceeds the supported maximum {max}")]
    FieldTooLarge { p: u64, k: u32, max: u64 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("element code {code} out of range for a field of order {q}")]
    ElementOutOfRange { code: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not a square")]
    NotASquare,
    #[error("field of order {q} is non-definite (q = 1 mod 4); positive square roots are not unique")]
    NonDefiniteField { q: u32 },
    #[error("field of order {q} admits unique factorizations; no non-uniqueness witness exists")]
    DefiniteField { q: u32 },
    #[error("matrices belong to different fields")]
    FieldMismatch,
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not lower triangular")]
    NotLowerTriangular,
    #[error("diagonal entry {index} is not a positive element")]
    NonPositiveDiagonal { index: usize },
    #[error("leading/trailing principal minor of order {k} vanishes")]
    ZeroMinor { k: usize },
    #[error("sign patterns differ at position {index}: {left} vs {right}")]
    PatternMismatch { index: usize, left: i8, right: i8 },
    #[error("invalid sign pattern: {0}")]
    InvalidPattern(String),
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("census assertion failed: {0}")]
    CensusAssertion(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "E_NOT_PRIME",
            Error::DegreeUnsupported { .. } => "E_DEGREE",
            Error::FieldTooLarge { .. } => "E_FIELD_TOO_LARGE",
            Error::InvalidModulus(_) => "E_MODULUS",
            Error::ElementOutOfRange { .. } => "E_ELEMENT_RANGE",
            Error::DivisionByZero => "E_DIV_ZERO",
            Error::NotASquare => "E_NOT_SQUARE",
            Error::NonDefiniteField { .. } => "E_NONDEFINITE",
            Error::DefiniteField { .. } => "E_DEFINITE",
            Error::FieldMismatch => "E_FIELD_MISMATCH",
            Error::NonSquare { .. } => "E_NON_SQUARE",
            Error::SizeMismatch(_) => "E_SIZE_MISMATCH",
            Error::IndexOutOfRange { .. } => "E_INDEX",
            Error::NotSymmetric { .. } => "E_NOT_SYMMETRIC",
            Error::Singular => "E_SINGULAR",
            Error::NotLowerTriangular => "E_NOT_LOWER",
            Error::NonPositiveDiagonal { .. } => "E_NONPOSITIVE_DIAG",
            Error::ZeroMinor { .. } => "E_ZERO_MINOR",
            Error::PatternMismatch { .. } => "E_PATTERN_MISMATCH",
            Error::InvalidPattern(_) => "E_PATTERN",
            Error::BudgetExceeded { .. } => "E_BUDGET",
            Error::CensusAssertion(_) => "E_CENSUS",
            Error::Parse { .. } => "E_PARSE",
        }
    }

    /// Errors that stem from the mathematics of the input rather than from how
    /// it was written down.
    pub fn is_domain_error(&self) -> bool {
        !matches!(
            self,
            Error::Parse { .. }
                | Error::InvalidPattern(_)
                | Error::NotPrime(_)
                | Error::DegreeUnsupported { .. }
                | Error::FieldTooLarge { .. }
                | Error::InvalidModulus(_)
                | Error::ElementOutOfRange { .. }
                | Error::NotSymmetric { .. }
                | Error::NonSquare { .. }
                | Error::SizeMismatch(_)
        )
    }
}
