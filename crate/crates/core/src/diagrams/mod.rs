//! Diagram representations: signed Gauss diagrams, the planar map they
//! induce, and planar diagrams.

pub mod gauss;
pub mod map;
pub mod planar;

pub use gauss::{End, GaussDiagram, Pos};
pub use map::{is_realizable, PlanarMap};
pub use planar::PlanarDiagram;
