//! Coordinate models of `H^1` and `H^2` of local fields containing `mu_p`:
//! the pairing module at levels `p` and `p^2`, the tame case, and
//! Heisenberg representations of a one-relator local Galois quotient.

mod heisenberg;
mod model;
mod tame;

pub use heisenberg::*;
pub use model::*;
pub use tame::*;
