//! Constrained planar triangulations, edge flips, and flip sequences whose
//! length is bounded by the number of proper edge crossings between the
//! start and the target triangulation.

pub mod cli;
pub mod error;
pub mod formats;
pub mod genharness;
pub mod geometry;
pub mod intersect;
pub mod lemmas;
pub mod morph;
pub mod oracle;
pub mod render;
pub mod triangulation;

#[cfg(test)]
mod test_support;

pub use error::{Error, Result};
pub use geometry::{Point, Segment};
pub use triangulation::{Edge, Instance, Quadrilateral, Triangulation, VertexId};
