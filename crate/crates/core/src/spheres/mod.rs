//! Equivariant cellular chains of representation spheres and their
//! Mackey-functor valued homology.
//!
//! Spheres of cyclic groups are built from the elementary complexes
//! `D_j = [Z ← Z[C_n] ← Z[C_n]]` by tensor products and duals. For the
//! nonabelian group of order `pq` the `C_q`-restriction of `S^{W_j}` carries
//! an explicit operator through which `C_p` acts, and whole-group answers
//! are assembled from the two Sylow sides by top-level recovery.

mod assemble;
mod complex;
mod homology;
mod rep;
mod twisted;

pub use assemble::{assemble_pq_homology, LevelMode, PqAssembler, BRUTE_FORCE_W_CAP};
pub use complex::{
    cyclic_sphere_complex, cyclic_sphere_complex_over, dual_complex, elementary_complex, signed_sphere_complex, tensor_complexes,
    tensor_many, GChainComplex,
};
pub use homology::{homology_mackey, HomologyTable};
pub use rep::{reduce_to_sylow, sylow_cells, RepLabel, Side, SylowCells, VirtualRep};
pub use twisted::{cp_action_on_homology, twisted_operator_for, twisted_permutation_operator, DegreeAction, TwistedOperator};
