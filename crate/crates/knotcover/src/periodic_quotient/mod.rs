//! Periodic diagrams, their quotients by the period, and the pinwheel normal
//! form of alternating quotient diagrams of the trivial knot.

mod closure;
mod normal_form;
mod periodic;
mod tangle;

use thiserror::Error;

use crate::diagram_core::DiagramError;

pub use closure::AxisClosureDiagram;
pub use normal_form::{
    nf_canonical, nf_swap_ends, nf_to_diagram, nf_to_tangle, normalize_unknot_quotient, reinsert_string,
    strip_first_box, Normalization, QuotientNormalForm, Strip,
};
pub use periodic::{build_periodic, detect_period, period_witnesses, quotient, PeriodicDiagram};
pub use tangle::{TangleDiagram, TangleOp};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("period must be at least 2, got {0}")]
    PeriodTooSmall(usize),
    #[error("not a rotation: {0}")]
    BadRotation(String),
    #[error("diagram is not alternating")]
    NotAlternating,
    #[error("no loop around the axis can be removed: the knot is not trivial")]
    NontrivialKnot,
    #[error("a removable loop lies inside the tangle")]
    InternalNugatory,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
