//! Exact structure-constant computations for Leibniz superalgebras whose
//! even part is sl2.
//!
//! - [`linalg`]: rational scalars, matrices, row reduction.
//! - [`algebra`]: graded algebras, bimodules and identity checkers.
//! - [`catalog`]: sl2, its simple and indecomposable Leibniz bimodules, and
//!   the two superalgebras with two-dimensional odd part.
//! - [`classify`]: constraint systems on unknown odd·odd brackets and their
//!   exact solution.

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod linalg;

pub use algebra::{BimoduleSpec, Element, Parity, SuperAlgebra, ViolationReport};
pub use linalg::{Matrix, Scalar};
