use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("table does not define a group: {0}")]
    NotAGroup(String),
    #[error("{kind} group of order {order} exceeds the configured limit {limit}")]
    OverflowingOrder {
        kind: &'static str,
        order: u128,
        limit: u128,
    },
    #[error("symmetric degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("invalid normal series: {0}")]
    InvalidSeries(String),
    #[error("no built-in normal series for {0}")]
    NoKnownSeries(String),
    #[error("size parameter x = {x} outside (1, {order}]")]
    XOutOfRange { x: f64, order: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{m} exceeds the limit {limit}")]
    FieldTooLarge { p: u64, m: u32, limit: u64 },
    #[error("zero has no discrete logarithm")]
    ZeroElement,
    #[error("extension degree {0} is too small (need at least 2)")]
    DegreeTooSmall(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("target vector rejected: {0}")]
    BadTargets(String),
    #[error("subgroup of order {subgroup} is smaller than |G|^(1-1/k) = {needed:.3}")]
    SubgroupTooSmall { subgroup: usize, needed: f64 },
    #[error("no index satisfies the lifting conditions for targets {0:?}")]
    NoValidIndex(Vec<f64>),
    #[error("tuple carries no passing verification verdict")]
    UnverifiedTuple,
    #[error("group is not {0}")]
    WrongGroupKind(&'static str),
    #[error("no accepted sample after {attempts} attempts")]
    RetryBudgetExhausted { attempts: u32 },
    #[error("no translator found for block {block:?}")]
    TranslatorNotFound { block: Vec<usize> },

    #[error("exact verification needs ~{cost} steps, budget is {budget}")]
    ExactInfeasible { cost: u128, budget: u64 },
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("path enumeration exceeded its budget; at least {partial} paths")]
    BudgetExceeded { partial: u64 },
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(String),
}
