//! Configuration arithmetic and the gadget construction of the hard instance
//! pairs `(A_n, B_m)`.
//!
//! Vertex ids follow one scheme on both sides: boundary blocks are
//! `<block>.<i>.<j>` (`x`, `y`, `incR<ℓ>.y`, `incL<ℓ>.y`), the winning gadget
//! uses `win.a` / `win.a.<i>`, switch internals are `sw<g>.a.*` and
//! `sw<g>.b.*`, and the initialization gadget lives under `init.*`. Gadget-local
//! names of glued boundary blocks (such as `sw3.x.1.2`) are kept as aliases.

mod builder;
mod config;
mod gadgets;
mod instance;

pub use builder::{Block, PairBuilder, Sides};
pub use config::{alpha, alpha_inverse, applicable, successor, t_left, t_right, Configuration, Inc, Params, Side};
pub use gadgets::{IncGadget, InitGadget, SwitchGadget, WinGadget};
pub use instance::{
    build_inc, build_init, build_instance, build_switch, build_win, inc_gadget, init_gadget, switch_gadget,
    win_gadget, GadgetPair, IncStage, InstancePair, Layout,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("configuration {0} is out of range")]
    OutOfRange(String),
    #[error("configuration {0} is invalid")]
    InvalidConfiguration(String),
    #[error("configuration has maximal rank")]
    MaximalRank,
    #[error("increment level {0} is out of range")]
    BadLevel(u32),
    #[error("unknown block `{0}`")]
    UnknownBlock(String),
}
