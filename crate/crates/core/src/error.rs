use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("multiplication table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("action is not by automorphisms: {0}")]
    InvalidAction(String),
    #[error("size bound exceeded: {what} ({size} > {bound})")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("coset {0} is not stable under the subgroup")]
    NotStable(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cochain is not a cocycle (first violation at {0:?})")]
    NotCocycle(Vec<usize>),
    #[error("no module structure: the 3-cocycle restricted to the subgroup is nontrivial")]
    Obstructed,
    #[error("dual category is not pointed: {0}")]
    NotPointed(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconclusive within budget: {0}")]
    Inconclusive(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
