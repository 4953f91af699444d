use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-critical ratio argument: {0}")]
    NonCritical(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("incompatible fields: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation of zero")]
    ValuationOfZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("index {index} beyond precision {prec}")]
    PrecisionExceeded { index: usize, prec: usize },
    #[error("insufficient precision: need {needed}, have {have}")]
    InsufficientPrecision { needed: usize, have: usize },
    #[error("weight too small for projection: k = {k}, top degree {r}")]
    WeightTooSmall { k: i64, r: usize },
    #[error("not in span")]
    NotInSpan,
    #[error("raise precision: system is underdetermined")]
    RaisePrecision,
    #[error("ambiguous eigensystem: {0}")]
    AmbiguousEigensystem(String),
    #[error("normalizing value vanishes")]
    NormalizerVanishes,
    #[error("field degree unsupported; supply data file ({0})")]
    FieldDegree(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("Hecke inconsistency: {0}")]
    HeckeInconsistent(String),
    #[error("no basis element labelled {0}")]
    MissingLabel(String),
    #[error("zero difference")]
    ZeroDifference,
    #[error("pi exponent {0} does not cancel")]
    PiExponent(i32),
    #[error("data missing: {0}")]
    DataMissing(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}
