//! Deciding, certifying and exhibiting lifts of mod-`p` matrix
//! representations of finite groups to `W_2(k)` coefficients, plus a
//! coordinate model of mod-`p^2` local Galois cohomology.

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod groups;
pub mod local;
pub mod witnesses;
