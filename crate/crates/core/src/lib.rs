//! From positive braid words and checkerboard graphs to open books and
//! exact link invariants.
//!
//! The pipeline: parse a positive braid word, build its brick diagram and
//! oriented plane linking graph, choose the twist order, assemble the page
//! surface, and read off the Seifert matrix, Alexander polynomial,
//! signature, genus and component count — all in exact integer arithmetic.
//! An independent Burau-based oracle cross-checks every polynomial, and a
//! census engine enumerates prime positive braid knots of small genus.

pub mod braid;
pub mod census;
pub mod coxeter;
pub mod error;
pub mod invariants;
pub mod matrix;
pub mod moves;
pub mod openbook;
pub mod oracle;
pub mod plane;
pub mod poly;

pub use braid::{brick_diagram, is_prime, linked, linking_graph, parse_braid, BraidWord, Brick, BrickDiagram};
pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use plane::{CheckerboardGraph, CodeMode, Colour, Dart, Dir, Edge, Face, ValidationReport};
pub use poly::LaurentPoly;
