use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("line {line}, column {column}: {msg}")]
    GroupFile {
        line: usize,
        column: usize,
        msg: String,
    },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("not normal: {0}")]
    NotNormal(String),

    #[error("enumeration budget exceeded: {what} is {size}, budget is {budget}")]
    Budget {
        what: &'static str,
        size: u128,
        budget: u128,
    },

    #[error("isomorphism search undecided after {0} backtrack nodes")]
    Undecided(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
