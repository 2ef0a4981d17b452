//! Finite groups given by multiplication tables, their matrix
//! representations, induction, and the named groups and representations
//! used as witnesses.

mod catalog;
mod group;
mod induce;
mod rep;
mod standard;

pub use catalog::{
    abelian_group, abelian_types, cyclic_group, dicyclic_group, dihedral_group, group_catalog,
    heisenberg_group, invariant_factors, matrix_group, named_group, s3_as_gl2f2, sl2_group,
};
pub use group::{invert_word, FiniteGroup, Subgroup, Word, FULL_CHECK_ORDER, MAX_GROUP_ORDER};
pub use induce::{induce_rep, verify_induced_summand};
pub use rep::{Equivalence, RepJson, Representation};
pub use standard::{
    coset_permutation_rep, is_single_jordan_block, jordan_block, jordan_block_rep, nilpotent_shift,
    p_times_p_rep, s3_natural_rep, single_block_modules, sl2_natural_rep, two_powers_rep,
};
