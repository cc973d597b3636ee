//! Skein-theoretic invariants of ribbon twins and ribbon 2-knots.

pub mod alexander;
pub mod constructions;
pub mod corpus;
pub mod diagram;
pub mod laurent;
pub mod moves;
pub mod skein;

pub use diagram::{Diagram, Mode};
pub use laurent::LaurentPoly;
