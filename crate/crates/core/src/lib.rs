//! Exact computations with Brauer-type diagram algebras acting on super
//! tensor spaces: centralisers, invariants, coends, standard modules and
//! tilting checks.

pub mod commutant;
pub mod diagrams;
pub mod error;
pub mod interp;
pub mod par;
pub mod repthy;
pub mod superlinalg;
pub mod supergroups;

pub use error::{Error, Result};
pub use superlinalg::field::{Field, FieldKind, Parity, PrimeField, Rationals};
