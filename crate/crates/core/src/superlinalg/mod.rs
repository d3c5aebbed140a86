//! Exact graded linear algebra.

pub mod field;
pub mod form;
pub mod matrix;
pub mod operator;
pub mod solve;
pub mod space;

pub use field::{Field, FieldKind, Parity, PrimeField, Rationals};
pub use form::{standard_form, BilinearForm, FormKind};
pub use matrix::{Matrix, SparseVec};
pub use operator::{braiding_operator, permutation_operator, tensor_all, tensor_operator, SparseOperator};
pub use solve::{generated_subalgebra, joint_kernel, kernel_basis, rank, Echelon, LinearMap, MatrixMap, Rref};
pub use space::{Factor, IndexSpace, SuperSpace, TensorSpace};
