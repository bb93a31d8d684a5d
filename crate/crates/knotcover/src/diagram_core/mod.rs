//! Planar diagrams in PD form, validation, Reidemeister moves and the Kauffman
//! bracket / Jones polynomial used to check every other module.

mod bracket;
mod builder;
mod diagram;
pub mod examples;
mod faces;
mod iso;
mod moves;
mod poly;
mod validate;

use thiserror::Error;

pub use bracket::{
    bracket_cap_from_env, bracket_state_sum, jones, jones_capped, kauffman_bracket, kauffman_bracket_capped,
    normalize_writhe, BRACKET_CAP_ENV, DEFAULT_BRACKET_CAP,
};
pub use builder::{LayerBuilder, Port};
pub use diagram::{Arc, Component, PlanarDiagram, Slot};
pub use faces::{face_by_arcs, face_distance, face_of, faces, Corner, Face};
pub use iso::{find_isomorphism, isomorphisms, mirror_image, Isomorphism};
pub use moves::{
    alternating_unknot_check, find_nugatory, find_r3_sites, is_alternating, kink_sign, nugatory_side, r1_add,
    r2_add, r3, reduce_r1, reduce_r1_tracked, FaceMark, MoveKind, MoveRecord,
};
pub use poly::LaurentPolynomial;
pub use validate::{validate, Check, ValidationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("diagram has no orientation data")]
    MissingOrientation,
    #[error("{found} crossings exceed the bracket cap of {cap}")]
    CrossingCap { cap: usize, found: usize },
    #[error("crossing {0} is not nugatory")]
    NotNugatory(usize),
    #[error("diagram is not alternating")]
    NotAlternating,
    #[error("expected {expected} component(s), found {found}")]
    ComponentCount { expected: usize, found: usize },
}
