use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid state space: {0}")]
    InvalidSpace(String),
    #[error("state space has {0} states, above the supported maximum of 2^31")]
    SpaceTooLarge(u128),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("coordinate index {index} out of range for dimension {n}")]
    InvalidIndex { index: usize, n: usize },
    #[error("rank {rank} out of range for a space of {size} states")]
    InvalidRank { rank: usize, size: usize },
    #[error("unsupported state space: {0}")]
    UnsupportedSpace(String),
    #[error("count overflows 128-bit arithmetic: {0}")]
    CountOverflow(String),
    #[error("space has {size} states, above the oracle cap of {cap}")]
    OracleCap { size: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("contract not applicable: {0}")]
    ContractInapplicable(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("embedding infeasible: {0}")]
    Infeasible(String),
    #[error("not an attractor: {0}")]
    InvalidAttractor(String),
    #[error("system is not cooperative and irreducible: {0}")]
    NotIrreducible(String),
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("input out of range: {0}")]
    InputRange(String),
    #[error("construction failed after {attempts} attempts: {reason}")]
    ConstructionFailure { attempts: u64, reason: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate state {state}")]
    DuplicateState { line: usize, state: String },
    #[error("incomplete total map: no line for state {state}")]
    IncompleteMap { state: String },
    #[error("line {line}: coordinate out of range: {msg}")]
    CoordinateRange { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
