//! Exact integer linear algebra.

pub mod chain;
pub mod group;
pub mod hnf;
pub mod hom;
pub mod matrix;
pub mod snf;
pub mod sparse;

pub use chain::{ChainComplex, ChainHomology};
pub use group::{cokernel_presentation, quotient_by_relations, FgAbGroup};
pub use hnf::column_hnf;
pub use hom::{hom_is_isomorphism, AbHom};
pub use matrix::{big, bigs, IntMatrix};
pub use snf::{kernel_basis, smith_normal_form, SmithDecomposition};
pub use sparse::SparseMatrix;
