use thiserror::Error;

/// Errors raised by the arithmetic, validation and counting layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field size {0} exceeds the supported cap of 2^20")]
    FieldTooLarge(u64),
    #[error("operands live over different fields (q = {0} vs q = {1})")]
    FieldMismatch(u64, u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial must be monic of degree >= 1, got {0}")]
    NotMonicNonConstant(String),
    #[error("polynomial {0} is reducible")]
    Reducible(String),
    #[error("enumeration budget exceeded: {requested} candidates > cap {cap}")]
    BudgetExceeded { requested: u128, cap: u128 },
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("zeta argument s = -{0} is a pole or outside the supported range (need i >= 1)")]
    ZetaPole(i64),
    #[error("place {0} listed more than once")]
    DuplicatePlace(String),
    #[error("invalid division algebra: {}", .0.join("; "))]
    InvalidAlgebra(Vec<String>),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{0}")]
    PoleOrder(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("type data rejected: {}", .0.join("; "))]
    TypeRejected(Vec<String>),
    #[error("{0}")]
    NoAdmissibleLevels(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
