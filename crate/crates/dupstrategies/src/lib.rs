//! Explicit Duplicator strategies on the gadgets and the global sequence of
//! critical strategies that certifies the round lower bound.
//!
//! Gadget strategies are single families over the gadget's Spoiler vertices.
//! Global strategies are products of gadget strategies glued along shared
//! boundary blocks, and unions of such products.

mod gadget;
mod sequence;

pub use gadget::{
    inc_strategy, init_critical, init_strategies, permutations, switch_in, switch_out, switch_restart, win_strategy,
    InitStrategies, SwitchIn,
};
pub use sequence::{build_duplicator_sequence, footprint, Globals, Guard, SequenceOptions};

use pdl_gadgets::GadgetError;
use pdl_pebblegame::StrategyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DupError {
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("composition failed: {0}")]
    Compose(#[from] StrategyError),
    #[error("the winning configuration has no Duplicator strategy on the winning gadget")]
    WinningConfiguration,
    #[error("configuration {0} must be invalid")]
    NeedsInvalid(String),
    #[error("configuration {0} must be valid")]
    NeedsValid(String),
    #[error("estimated {estimate} bytes exceed the limit of {limit}")]
    TooLarge { estimate: u64, limit: u64 },
}
