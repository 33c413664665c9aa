//! Independent decision aids used to cross-check the solver.

pub mod affine;
pub mod checks;
pub mod ncl;
pub mod primitive;
pub mod psl2;
pub mod sample;
pub mod smith;

pub use affine::{affine_eval_bs1n, AffineMap};
pub use checks::{
    check_commutator_roots, check_conjugacy_theorem, check_freiheitssatz, check_hierarchy,
    check_modular_group, check_witnesses, witness_violation, CheckReport, DEFAULT_SEED,
};
pub use ncl::{ncl_semidecide, NclCertificate};
pub use primitive::is_primitive_rank2;
pub use psl2::{free_at_length, psl2_eval, ProjectiveMatrix, M_A, M_B};
pub use smith::smith_invariants;
