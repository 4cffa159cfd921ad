use thiserror::Error;

/// Errors produced by parsing, indexing, solving and instance generation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: no cells to parse")]
    EmptyInput,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("symbol {0:?} is not in the declared alphabet")]
    UnknownSymbol(char),

    #[error("alphabet has {size} symbols, the configured limit is {limit}")]
    AlphabetTooLarge { size: usize, limit: usize },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("position {position} is out of range 1..={len}")]
    OutOfRange { position: usize, len: usize },

    #[error("position {position} is not an occurrence of the prefix of length {length}")]
    NotAnOccurrence { position: usize, length: usize },

    #[error("input is not a partial word")]
    NotPartialWord,

    #[error("{what}: {needed} exceeds the budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("clause {clause} contains both x{var} and -x{var}")]
    TautologicalClause { clause: usize, var: usize },

    #[error("DIMACS error on line {line}: {message}")]
    Dimacs { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(what: &'static str, needed: u128, limit: u128) -> Self {
        Error::BudgetExceeded {
            what,
            needed,
            limit,
        }
    }

    /// True for refusals caused by an enumeration or table budget.
    pub fn is_resource_refusal(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
