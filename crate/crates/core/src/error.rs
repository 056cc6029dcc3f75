use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators {0:?} have gcd {1}, complement in N is infinite")]
    NotCofinite(Vec<i64>, i64),
    #[error("generator {0} is not a positive integer")]
    NonPositiveGenerator(i64),
    #[error("the semigroup N has no singularity")]
    NoSingularity,
    #[error("operation on an empty value set")]
    EmptySet,
    #[error("value set is not a ring: {0}")]
    NotARing(String),
    #[error("value sets are not nested: {0}")]
    NotNested(String),
    #[error("quotient of value sets is infinite")]
    InfiniteQuotient,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("hypothesis gap: {0}")]
    HypothesisGap(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("no differential with minimal valuations found after {0} candidates")]
    GenericityFailure(usize),
    #[error("branch index {0} out of range (curve has {1} branches)")]
    BranchIndex(usize, usize),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
