//! Brauer, walled Brauer and periplectic diagram combinatorics and the
//! algebras they span.

pub mod algebra;
pub mod brauer;
pub mod cache;
pub mod notation;
pub mod walled;

pub use algebra::{AlgebraKind, BasisElement, DiagramAlgebra, Object, Product};
pub use brauer::{enumerate_diagrams, BrauerDiagram, Dot};
pub use walled::{enumerate_walled, Orient, WalledDiagram};
