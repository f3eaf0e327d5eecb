use thiserror::Error;

use crate::root_system::Kind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrystalError {
    #[error("invalid rank {rank} for type {kind}: {reason}")]
    InvalidRank {
        kind: Kind,
        rank: usize,
        reason: &'static str,
    },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("node index {node} out of range 1..={rank}")]
    InvalidNode { node: usize, rank: usize },
    #[error("word is not reduced: letter at position {position} does not increase the length")]
    NotReduced { position: usize },
    #[error("word has length {length}, but the longest element has length {expected}")]
    NotLongest { length: usize, expected: usize },
    #[error("no {kind} braid move is available at position {position}")]
    InadmissibleMove { position: usize, kind: &'static str },
    #[error("the two words represent different Weyl group elements")]
    DifferentElements,
    #[error("{0:?} is not a positive root")]
    NotARoot(Vec<i32>),
    #[error("operation requires a root system of type {expected}, got {found}")]
    WrongKind { expected: Kind, found: Kind },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = CrystalError> = std::result::Result<T, E>;
