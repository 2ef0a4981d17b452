//! Exact arithmetic in the coefficient rings used throughout the crate:
//! finite fields `F_{p^m}`, length-2 Witt vectors `W_2(F_{p^m})`, the
//! residue rings `Z/p^k`, and the 64-element ring `W_2(F_4)[t]/(t^2 - 2, 2t)`.
//!
//! Ring descriptors are cheap to clone and carry all tables; elements are
//! small `Copy` values interpreted relative to a descriptor.

mod fq;
mod matrix;
mod quotient;
mod ring_json;
mod witt;
mod zmod;

pub use fq::{conway_polynomial, is_prime, Fq, FqElem, FqValue};
pub use matrix::{nullspace, Matrix, MatrixOps};
pub use quotient::{QElem, QuotientRing};
pub use ring_json::{JsonRing, RingMatrix, RingTag};
pub use witt::{witt_add, witt_mul, teichmuller, Witt2, WittElem, WittValue};
pub use zmod::Zmod;

use std::fmt::Debug;
use std::hash::Hash;

/// A commutative ring with a runtime descriptor.
pub trait Ring: Clone + Send + Sync {
    type Elem: Copy + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Inverse of a unit, `None` otherwise.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn tag(&self) -> RingTag;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    /// Image of an integer under `Z -> R`.
    fn from_int(&self, n: i64) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = if n < 0 { self.neg(self.one()) } else { self.one() };
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    fn pow(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// A finite ring whose elements can be listed.
pub trait FiniteRing: Ring {
    fn elements(&self) -> Vec<Self::Elem>;
}
