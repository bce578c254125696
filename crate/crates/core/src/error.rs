use thiserror::Error;

use crate::modfam::Constraint;
use crate::specdsl::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),

    #[error("symbol `{symbol}` is not in algebra {algebra}")]
    SymbolNotInAlgebra { symbol: String, algebra: String },

    #[error("loop index {index} lies outside the window [-{window}, {window}]")]
    WindowExceeded { index: i64, window: i64 },

    #[error("invalid module spec: {0}")]
    SpecInvalid(String),

    #[error("constraint violated: {0}")]
    Constraint(Constraint),

    #[error("malformed action data: {0}")]
    MalformedData(String),

    #[error("twist is defined for Mg0 and Mhb only, got {0}")]
    UnsupportedTwist(String),

    #[error("window mismatch: {0} vs {1}")]
    WindowMismatch(i64, i64),

    #[error("isomorphism is only decided between two MTildeAlphaBeta modules")]
    IncomparableVariants,

    #[error("module is not irreducible")]
    NotIrreducible,

    #[error("module is not reducible")]
    NotReducible,

    #[error("seed polynomial is zero")]
    SeedZero,

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl From<Constraint> for Error {
    fn from(c: Constraint) -> Self {
        Error::Constraint(c)
    }
}
