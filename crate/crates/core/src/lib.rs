//! Finite orthomodular lattices, their Sasaki maps, and the quantale and
//! dynamic-algebra structures built from them.
//!
//! Modules build on one another in order: [`oml`] for lattices,
//! [`linmap`] for linear maps and the Foulis quantale, [`testmonoid`] for the
//! monoid generated by Sasaki projections, [`dynalg`] for the powerset
//! dynamic algebra, and [`equivalence`] for the functors between the two
//! categories. [`hilbert3`] is independent exact linear algebra.

pub mod cli;
pub mod config;
pub mod dynalg;
pub mod equivalence;
pub mod hilbert3;
pub mod linmap;
pub mod oml;
pub mod report;
pub mod testmonoid;
