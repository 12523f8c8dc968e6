use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("point {0} is singular")]
    SingularPoint(String),
    #[error("operation needs an affine place, got the place at infinity")]
    InfinitePlace,
    #[error("the zero function has no valuation")]
    ZeroFunction,
    #[error("function is not in R: pole at place #{place}")]
    NotInR { place: usize },
    #[error("invalid point selection: {0}")]
    InvalidPoints(String),
    #[error("divisor vector has {got} entries, expected {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("lub of an empty list")]
    EmptyLub,
    #[error("{0:?} is not in the Weierstrass semigroup")]
    NotAMember(Vec<u32>),
    #[error("semigroup bitmap not stabilized below limit {limit}; raise the limit")]
    NotStabilized { limit: u32 },
    #[error("search box {have:?} too small, need at least {need:?}; enlarge the box")]
    BoxTooSmall { have: Vec<u32>, need: Vec<u32> },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("pair-count formula mismatch: formula {formula}, enumeration {enumerated}")]
    PairCountMismatch { formula: i64, enumerated: i64 },
    #[error("function has a pole at evaluation place #{place}")]
    PoleAtEvaluation { place: usize },
    #[error("arithmetic on the -infinity marker of rho(0)")]
    NegInfArithmetic,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
