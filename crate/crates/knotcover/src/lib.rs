//! Diagrams of periodic alternating knots, their quotients, the exchange of the
//! two components of a quotient link, and Seifert invariants of cyclic branched
//! covers of torus knots.

pub mod diagram_core;
pub mod component_exchange;
pub mod periodic_quotient;
pub mod torus_cover;
