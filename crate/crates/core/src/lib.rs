//! Exact computations with cohomological Mackey functors over small finite groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: integer matrices, Smith and Hermite normal forms, finitely
//!   generated abelian groups and homomorphisms between them, and a sparse
//!   chain-complex homology engine.
//! * [`groups`]: finite groups stored as multiplication tables, with subgroup
//!   lattices, Sylow subgroups, double cosets and Weyl groups.
//! * [`gmodules`]: integral representations and the fixed-point calculus.
//! * [`mackey`]: Mackey functors, axiom checkers, the catalog of named
//!   functors, isomorphism classification and a JSON interchange format.
//! * [`recover`]: reconstruction of the top level from Sylow restrictions.
//! * [`spheres`]: equivariant cellular chains of representation spheres and
//!   their Mackey-functor valued homology.
//! * [`closedform`]: closed-form homology tables.

pub mod closedform;
pub mod error;
pub mod exact;
pub mod gmodules;
pub mod groups;
pub mod mackey;
pub mod recover;
pub mod spheres;

pub use error::{Error, Result};
