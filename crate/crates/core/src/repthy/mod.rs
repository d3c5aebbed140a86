//! Standard, costandard and simple modules of the extended diagram
//! algebras, Ext¹ and tilting checks.

pub mod module;
pub mod partition;
pub mod report;
pub mod specht;
pub mod standard;

pub use partition::{labels, parse_label, partitions, Label, Partition};
pub use module::{dual_module, ext1, find_isomorphism, hom_space, AlgebraModule, Ext1};
pub use report::{cellular_dim_identity, degenerate_flags, qh_report, tilting_check, CellularIdentity, QhReport, TiltingReport};
pub use specht::SpechtModule;
pub use standard::{composition_multiplicities, costandard_module, simple_dim, simple_module, standard_module, SimpleFlag, SimpleModule};
