use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole: denominator vanishes at {0}")]
    Pole(String),
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("non-integer multiplicity in McKay graph at ({0}, {1})")]
    NonIntegerMultiplicity(usize, usize),
    #[error("invalid sector: {0}")]
    InvalidSector(String),
    #[error("unknown conjugacy class {0}")]
    UnknownClass(String),
    #[error("unsupported genus {0}")]
    UnsupportedGenus(u32),
    #[error("no tabulated value for {0}")]
    UnknownIntegral(String),
    #[error("zero tangent weight at {0}")]
    ZeroWeight(String),
    #[error("unknown divisor {0}")]
    UnknownDivisor(String),
    #[error("the identity class is handled by the trivial sector")]
    TrivialClass,
    #[error("mismatch at {0}")]
    MismatchAt(String),
    #[error("square root not in the cyclotomic field: {0}")]
    SqrtNotCyclotomic(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
