use thiserror::Error;

use crate::steenrod::Mode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("valuation of zero is infinite")]
    ZeroValuation,
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("mode mismatch: {0} vs {1}")]
    ModeMismatch(Mode, Mode),
    #[error("operation requires {expected} mode, got {got}")]
    WrongMode { expected: Mode, got: Mode },
    #[error("{mode} mode is not available at p = {prime}")]
    UnsupportedMode { mode: Mode, prime: u64 },
    #[error("monomial is already admissible")]
    AlreadyAdmissible,
    #[error("constant term {0} is not a unit")]
    NonUnitConstant(String),
    #[error("class is not concentrated in dimension 0")]
    NotDimensionZero,
    #[error("{0} does not divide {1}")]
    NotDivisible(i128, i128),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
