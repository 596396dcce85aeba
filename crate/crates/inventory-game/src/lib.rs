//! Dynamics of self-inventorying multisets.
//!
//! The central object is a finite multiset of positive integers and the map
//! `f(S) = [S] + mu(S)`: append each distinct element of `S` together with its
//! multiplicity. Iterating `f` always falls into a short loop; the modules here
//! provide the forward iteration, complete preimage enumeration, the induced
//! dynamics on multiplicity ("adjective") space, symbolic backtracking trees
//! over core-adjective transitions, verification harnesses for the enumeration
//! and pre-period bounds, and a generalized `(G, I, |.|, r)` variation engine.

pub mod adjectives;
pub mod backtrack;
pub mod cli;
pub mod dynamics;
pub mod multiset;
pub mod variations;
pub mod verify;

pub use multiset::Multiset;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("no repeat within {0} iterations")]
    OrbitBudget(usize),
    #[error("node budget of {budget} exhausted (partial result has {got} nodes)")]
    NodeBudget { budget: usize, got: usize },
    #[error("cannot pad to order {n}: multiset already has {support} distinct elements")]
    NegativePadding { n: u64, support: u64 },
    #[error("empty multiset has no adjective decomposition")]
    EmptyMultiset,
    #[error("core adjectives must not contain 1")]
    OneInCore,
    #[error("impossible table cell: core {core} with {k} new appearances")]
    ImpossibleCell { core: String, k: u32 },
    #[error("edge {0} -> {1} is not in the occurrence-bound table")]
    UnknownEdge(String, String),
    #[error("loop does not match any enumerated form (order {0})")]
    Unclassifiable(u64),
    #[error("k = {k} is below the family floor {floor}")]
    BelowFloor { k: u64, floor: u64 },
    #[error("enumeration limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("counterexample: {0}")]
    Counterexample(String),
    #[error("no cycle within {0} iterations")]
    NoCycleWithin(usize),
    #[error("preimage is not representable in this variation (cofinite value feeds a finite-only cardinality)")]
    Unrepresentable,
}

pub type Result<T> = std::result::Result<T, Error>;
