//! Vertex-colored graphs, partial maps between them, and the binary CSP encoding.
//!
//! Everything downstream (saturation, pebble games, gadgets) speaks in terms of
//! [`Structure`] and [`PartialMap`]. Vertices are dense `u32` indices whose order
//! is the declaration order of the structure.

mod csp;
mod error;
mod exec;
mod hom;
mod io;
mod map;
mod structure;

pub use csp::{csp_to_structures, Constraint, ConstraintNetwork};
pub use error::{CoreError, ParseError, ParseErrorKind};
pub use exec::Exec;
pub use hom::{enumerate_homomorphisms, is_partial_homomorphism, HomChecker};
pub use io::{read_structure, write_structure};
pub use map::PartialMap;
pub use structure::{Structure, StructureBuilder};

/// Dense vertex index into a [`Structure`].
pub type Vertex = u32;
