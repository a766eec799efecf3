use thiserror::Error;

use crate::qc::Family;

/// Errors produced by the design library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be at least 1")]
    ZeroLength,

    #[error("Z4 digit out of range: {0} (expected 0..=3)")]
    InvalidDigit(u8),

    #[error("generator vectors differ in length: u has {u}, v has {v}")]
    LengthMismatch { u: usize, v: usize },

    #[error("generator length {got} does not match n = {n}")]
    WrongLength { n: usize, got: usize },

    #[error("{family} designs take no (u0, v0) pair")]
    UnexpectedBranch { family: Family },

    #[error("{family} designs require a (u0, v0) pair")]
    MissingBranch { family: Family },

    #[error("lambda profile is all zero")]
    EmptyLambda,

    #[error("design has {q} columns, above the cap of {cap}")]
    TooManyColumns { q: usize, cap: usize },

    #[error("design has no rows or no columns")]
    EmptyDesign,

    #[error("row {row} has {got} entries, expected {q}")]
    RaggedRow { row: usize, q: usize, got: usize },

    #[error("entry {value} at row {row}, column {col} is not +1 or -1")]
    NotPlusMinusOne { row: usize, col: usize, value: i8 },

    #[error("unknown column label `{0}`")]
    UnknownLabel(String),

    #[error("empty column subset")]
    EmptySubset,

    #[error("word length {length} exceeds factor count {q}")]
    LengthExceedsFactors { length: usize, q: usize },

    #[error("operation needs a {expected} design, got {family}")]
    WrongFamily { expected: &'static str, family: Family },

    #[error("no closed-form projectivity bound for {0} designs")]
    NoClosedFormBound(Family),

    #[error("n = {n} outside the supported search range 1..={max}")]
    SearchRange { n: usize, max: usize },

    #[error("unknown criterion `{0}` (expected resolution, aberration or projectivity)")]
    UnknownCriterion(String),

    #[error("branch {branch} disagrees with its class representative at lambda {lambda}")]
    BranchClassMismatch { lambda: String, branch: String },
}

pub type Result<T> = std::result::Result<T, Error>;
