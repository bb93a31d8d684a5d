//! Two-component links formed by an alternating quotient of the trivial knot
//! and the image of the rotation axis, and a move sequence exchanging the two
//! components.
//!
//! A link in normal form is drawn as a 4-plat on strand positions `0..4`. The
//! quotient knot runs through positions `0, 1` and carries the twist boxes
//! (`sigma_1` powers); the axis runs through positions `2, 3` and meets the knot
//! in `k` clasps (`sigma_2` squares). A box moved to the axis side is drawn as a
//! `sigma_3` power instead.

mod link;
mod moves;

pub use link::{linking_number, nfl_to_pd, Labels, LabeledLink, NormalFormLink, Role};
pub use moves::{
    exchange_components, move_box, parity_normalize, rotate, transfer_all, transfer_box, verify_log, ExchangeLog, ExchangeMove,
    LogEntry,
};

use thiserror::Error;

use crate::diagram_core::DiagramError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExchangeError {
    #[error("malformed link parameters: {0}")]
    Malformed(String),
    #[error("box {index} holds {count} crossings; interior boxes must be even before the transfer")]
    PreconditionParity { index: usize, count: i64 },
    #[error("expected 2 components, found {0}")]
    WrongComponentCount(usize),
    #[error("log entry {step} does not match its recorded parameters")]
    ReplayMismatch { step: usize },
    #[error("log entry {step} changes the link invariants")]
    InvariantChanged { step: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
