//! Obstruction classes in `H^2(G, Ad)`, the coboundary solve that decides
//! liftability to `W_2(k)`, `H^1`, and rigidity.

mod coboundary;
mod cocycle;
mod exhaustive;
mod h1;
mod linalg;
mod module;
mod nonrigid;
mod rigidity;

pub use coboundary::{
    certify, coboundary_of, is_coboundary, is_coboundary_bar, lift_from_cochain, restricted_obstruction,
    verify_cochain, CoboundarySolution, ObstructionCertificate, Verdict, KERNEL_IDENTIFICATION,
};
pub use cocycle::{
    corrected_lift, obstruction_class, obstruction_with_section, teichmuller_section, TwoCocycle,
    FULL_COCYCLE_CHECK_ORDER, MAX_OBSTRUCTION_ORDER,
};
pub use exhaustive::{exhaustive_lifts, ExhaustiveResult, ExhaustiveStamp};
pub use h1::{h1_dimension, h1_relators, h1_table, H1Mode};
pub use linalg::{dense_rank, DenseSystem, RankData, SparseSystem};
pub use module::{matrix_coords, matrix_from_coords, FpModule};
pub use rigidity::{is_strongly_rigid, Rigidity, RigidityReport};
pub use nonrigid::{nonrigid_lift_check, NonrigidCheck, NonrigidReport};
