//! The existential k-pebble game: an exact retrograde solver and tools for
//! checking explicit Duplicator strategies.
//!
//! [`solve_game`] ranks every position by the number of rounds Spoiler needs.
//! [`Strategy`] represents a Duplicator strategy by maximal maps, possibly as a
//! union of products; [`verify_critical_strategy`] and
//! [`verify_strategy_sequence`] check the conditions that make a sequence of
//! such strategies a lower-bound certificate.

mod game;
mod io;
mod strategy;
mod verify;

pub use game::{solve_game, spoiler_min_rounds, GameOptions, GameSolution};
pub use io::{read_strategy, write_strategy};
pub use strategy::{Alternative, Family, Strategy};
pub use verify::{
    verify_critical_strategy, verify_handoff, verify_strategy_sequence, SequenceFailure, StrategyFailure,
};

use pdl_core::Vertex;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("k must be at least 2 (got {0})")]
    BadK(usize),
    #[error("B has no vertices")]
    EmptyB,
    #[error("{positions} positions exceed the limit of {limit}")]
    TooLarge { positions: u64, limit: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("maximal map uses vertex {vertex} outside its region")]
    OutsideRegion { vertex: Vertex },
    #[error("maximal maps disagree on boundary vertex {vertex}")]
    BoundaryDisagreement { vertex: Vertex },
    #[error("a maximal map is undefined on shared vertex {vertex}")]
    BoundaryUndefined { vertex: Vertex },
    #[error("more than {cap} maximal maps")]
    TooManyMaximal { cap: usize },
    #[error("strategy text, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
