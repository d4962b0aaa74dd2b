use thiserror::Error;

use crate::algebra::Gen;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("radicand {0} is not square-free")]
    NotSquareFree(u32),
    #[error("malformed exact literal `{0}`")]
    BadLiteral(String),
    #[error("floating-point literal `{0}` rejected; use p/q")]
    FloatLiteral(String),
    #[error("unknown indeterminate `{0}`")]
    UnknownIndeterminate(String),
    #[error("eliminate_partial needs at least one lambda variable")]
    EmptyLambdaVars,
    #[error("expression is not linear in the unknowns: {0}")]
    NonLinear(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("bracket [{0} _ {1}] lies outside the truncation bound")]
    OutOfBound(Gen, Gen),
    #[error("module action of {0} on {1} is not defined")]
    MissingAction(Gen, Gen),
    #[error("unknown generator {0}")]
    UnknownGenerator(Gen),
    #[error("2-cochain is not skew on ({0}, {1})")]
    NonSkewCochain(Gen, Gen),
    #[error("ill-formed gauge move: {0}")]
    IllFormedMove(String),
    #[error("filtration violated by [{0} _ {1}]")]
    FiltrationViolation(Gen, Gen),
    #[error("inconsistent constraint system: {0}")]
    Inconsistent(String),
    #[error("degree bound too small for {0}")]
    DegreeBoundTooSmall(String),
    #[error("a free composition factor needs a nonzero conformal weight")]
    ZeroWeightFreeFactor,
    #[error("case {case} expects {expected}")]
    CaseMismatch { case: u8, expected: &'static str },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
