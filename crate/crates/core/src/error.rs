use thiserror::Error;

use crate::term::FragmentClass;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {position}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("term needs fragment {found} but only {allowed} is allowed")]
    Fragment {
        found: FragmentClass,
        allowed: FragmentClass,
    },

    #[error("left-hand side contains a star")]
    NotStarFree,

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),

    #[error("operands are over different alphabets")]
    AlphabetMismatch,

    #[error("no profile entry for variable `{0}`")]
    MissingVariable(String),

    #[error("block {0} is the empty word")]
    NonEmptyRequired(usize),

    #[error("symbol `{0}` is not in the valuation alphabet")]
    NotASubset(String),

    #[error("enumeration of {needed} exceeds the configured limit of {limit}")]
    BudgetExceeded { needed: String, limit: String },

    #[error("refutation did not verify: {0}")]
    NotActuallyDistinct(String),

    #[error("invalid valuation file: {0}")]
    ValuationFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
