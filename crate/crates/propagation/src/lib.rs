//! The k-consistency test as a saturation engine over partial maps.
//!
//! [`saturate`] computes the least fixpoint of the propagation rule on maps of
//! size at most k−1 and records, for every derived map, the pivot and one
//! premise per B-vertex. [`extract_refutation`] turns that record into a
//! [`Derivation`], and [`verify_derivation`] re-checks a derivation from scratch
//! without trusting the engine.

mod derivation;
mod saturate;
mod verify;

pub use derivation::{metrics, read_derivation, write_derivation, Derivation, DerivationLine, LineKind, Metrics};
pub use saturate::{
    depth_via_saturation, extract_refutation, saturate, saturate_with, Entry, Mode, Premise, SaturationResult,
};
pub use verify::{verify_derivation, verify_refutation, Failure, FailureReason};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropagationError {
    #[error("k must be at least 2 (got {0})")]
    BadK(usize),
    #[error("B has no vertices")]
    EmptyB,
    #[error("saturation did not refute; no refutation to extract")]
    NotRefuted,
    #[error("derivation text, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
