use thiserror::Error;

use crate::txdb::ItemId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input is not valid UTF-8 at byte offset {offset}")]
    Decode { offset: usize },

    #[error("malformed CSV record at line {line}: {message}")]
    Csv { line: u64, message: String },

    #[error("invalid minimum support `{0}`: expected a positive count `N`, a percentage `P%` or a fraction in (0, 1]")]
    InvalidSupport(String),

    #[error("invalid minimum confidence `{0}`: expected a fraction in [0, 1]")]
    InvalidConfidence(String),

    #[error("support is undefined over an empty transaction database")]
    EmptyDatabase,

    #[error("confidence is undefined: no transaction contains the antecedent")]
    UndefinedConfidence,

    #[error("item {0:?} has no node in the tree")]
    NoNode(ItemId),

    #[error("item {0:?} has no active header entry")]
    InactiveHeader(ItemId),

    #[error("unknown item `{0}`")]
    UnknownItem(String),

    #[error(
        "batch for anchor {anchor:?} would enumerate 2^{exponent} item sets (limit 2^{limit})"
    )]
    BatchTooLarge {
        anchor: ItemId,
        exponent: usize,
        limit: usize,
    },

    #[error("invalid synthetic dataset spec: {0}")]
    InvalidSpec(String),

    #[error("benchmark repeat count must be at least 1")]
    InvalidRepeat,

    #[error(
        "algorithm `{name}` returned {first} item sets on its first run but {other} on a later run"
    )]
    UnstableItemsetCount {
        name: String,
        first: usize,
        other: usize,
    },
}
