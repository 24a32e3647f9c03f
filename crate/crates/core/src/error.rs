use thiserror::Error;

use crate::weyl::GroupContext;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group context: {0}")]
    InvalidContext(String),

    #[error("context mismatch: {0} vs {1}")]
    ContextMismatch(GroupContext, GroupContext),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("permutation {perm:?} is not valid in {ctx}")]
    InvalidPermutation { ctx: GroupContext, perm: Vec<u8> },

    #[error("vector {vector:?} is not in the translation lattice of {ctx}")]
    LatticeViolation { ctx: GroupContext, vector: Vec<i64> },

    #[error("invalid level structure: {0}")]
    InvalidLevel(String),

    #[error("cocharacter {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported operation for {ctx}: {what}")]
    Unsupported { ctx: GroupContext, what: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
