use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HgError {
    #[error("not a group ({reason}); witness {witness:?}")]
    NotAGroup {
        reason: String,
        witness: (usize, usize, usize),
    },
    #[error("{what} exceeds cap {limit}")]
    CapExceeded { what: String, limit: u64 },
    #[error("subgroup is not normal: conjugating {element} by {by} leaves it")]
    NotNormal { element: usize, by: usize },
    #[error("group spec out of range: {0}")]
    SpecOutOfRange(String),
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("no census data for order {0}")]
    UnknownOrder(usize),
    #[error("action is not a homomorphism into Aut: {0}")]
    BadAction(String),
    #[error("automorphism does not preserve the subgroup (moves {0})")]
    NotPreserved(usize),
    #[error("subgroup is not characteristic (moved by automorphism {0})")]
    NotCharacteristic(usize),
    #[error("crossed homomorphism is not bijective")]
    NotBijective,
    #[error("set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("Byott count not integral: |Aut(G)| = {aut_g}, raw = {raw}, |Aut(N)| = {aut_n}")]
    NonIntegral { aut_g: u64, raw: u64, aut_n: u64 },
    #[error("unknown simple group label {0:?}")]
    UnknownLabel(String),
    #[error("usage: {0}")]
    UsageError(String),
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T, E = HgError> = std::result::Result<T, E>;

impl HgError {
    pub(crate) fn cap(what: impl Into<String>, limit: u64) -> Self {
        HgError::CapExceeded {
            what: what.into(),
            limit,
        }
    }
}
