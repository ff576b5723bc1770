//! Facial parity edge colorings of 2-edge-connected plane multigraphs.
//!
//! [`fpe::fpe_color`] computes a coloring with at most 16 colors in which
//! face-adjacent edges differ and every color occurs an odd number of times
//! or not at all on each face. [`verify`] holds the checkers and exact oracles.

pub mod coloring;
pub mod fpe;
pub mod generate;
pub mod multigraph;
pub mod oddcolor;
pub mod partition;
pub mod planemap;
pub mod qfo;
pub mod verify;

pub use coloring::{Color, EdgeColoring};
pub use fpe::{fpe_color, FpeError, FpeResult};
pub use multigraph::BundledMultigraph;
pub use oddcolor::OddColoring;
pub use planemap::{MapError, PlaneMap};
pub use qfo::{qfo_color, QfoColoring};
