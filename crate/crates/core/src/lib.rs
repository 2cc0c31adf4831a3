//! Exact skein invariants and local-move rewriting for classical, virtual
//! and welded knots.

pub mod cli;
pub mod diagrams;
pub mod error;
pub mod moves;
pub mod poly;
pub mod random;
pub mod skein;
pub mod suites;
pub mod table;
pub mod vinv;

pub use diagrams::{GaussDiagram, PlanarDiagram};
pub use error::{Error, Result};
pub use poly::{LaurentPoly, Var};
