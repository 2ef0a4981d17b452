//! Normalized 2-cocycles and the obstruction class of a representation.

use std::sync::Arc;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use super::module::{matrix_coords, FpModule};
use crate::algebra::{Matrix, MatrixOps, Witt2, WittElem};
use crate::error::{AlgebraError, GroupError};
use crate::groups::{FiniteGroup, Representation};

/// Triples are checked exhaustively up to this group order, sampled above.
pub const FULL_COCYCLE_CHECK_ORDER: usize = 24;

/// Largest group handled by the obstruction computation.
pub const MAX_OBSTRUCTION_ORDER: usize = 128;

/// A normalized 2-cocycle `G x G -> V`, `values[g * |G| + h]`.
#[derive(Clone, Debug)]
pub struct TwoCocycle {
    module: Arc<FpModule>,
    values: Vec<Vec<u32>>,
}

impl TwoCocycle {
    /// Wraps explicit values; checks normalization and the cocycle identity.
    pub fn new(module: Arc<FpModule>, values: Vec<Vec<u32>>) -> Result<TwoCocycle, String> {
        let c = TwoCocycle { module, values };
        c.verify()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(module: Arc<FpModule>, values: Vec<Vec<u32>>) -> TwoCocycle {
        TwoCocycle { module, values }
    }

    pub fn module(&self) -> &Arc<FpModule> {
        &self.module
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    pub fn value(&self, g: usize, h: usize) -> &[u32] {
        &self.values[g * self.group().order() + h]
    }

    pub fn values(&self) -> &[Vec<u32>] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|&x| x == 0)
    }

    /// Normalization plus `g.c(h,l) - c(gh,l) + c(g,hl) - c(g,h) = 0` on all
    /// triples for `|G| <= 24`, on a deterministic sample of triples above.
    pub fn verify(&self) -> Result<(), String> {
        let g = self.group();
        let n = g.order();
        let m = &self.module;
        if self.values.len() != n * n || self.values.iter().any(|v| v.len() != m.dim()) {
            return Err("cocycle table has the wrong shape".into());
        }
        let e = g.identity();
        for x in 0..n {
            if self.value(e, x).iter().chain(self.value(x, e)).any(|&v| v != 0) {
                return Err(format!("cocycle is not normalized at element {x}"));
            }
        }
        let check = |a: usize, b: usize, c: usize| {
            let lhs = m.add(&m.act(a, self.value(b, c)), self.value(a, g.mul(b, c)));
            let rhs = m.add(self.value(g.mul(a, b), c), self.value(a, b));
            lhs == rhs
        };
        let bad = if n <= FULL_COCYCLE_CHECK_ORDER {
            (0..n * n * n).into_par_iter().find_any(|&t| !check(t / (n * n), (t / n) % n, t % n))
        } else {
            let mut state: u64 = 0x2545_f491_4f6c_dd1d;
            let samples: Vec<usize> = (0..20_000)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    (state % (n * n * n) as u64) as usize
                })
                .collect();
            samples.into_par_iter().find_any(|&t| !check(t / (n * n), (t / n) % n, t % n))
        };
        match bad {
            Some(t) => Err(format!(
                "cocycle identity fails at ({}, {}, {})",
                t / (n * n),
                (t / n) % n,
                t % n
            )),
            None => Ok(()),
        }
    }

    /// SHA-256 over the little-endian table, pairs in index order.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.group().order() as u32).to_le_bytes());
        h.update((self.module.dim() as u32).to_le_bytes());
        for v in self.values.iter().flatten() {
            h.update(v.to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// `self - other`, both over the same module.
    pub fn difference(&self, other: &TwoCocycle) -> TwoCocycle {
        let m = &self.module;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| m.sub(a, b)).collect();
        TwoCocycle { module: m.clone(), values }
    }

    /// Restriction to a subgroup, over the restricted module.
    pub fn restrict(&self, h: &crate::groups::Subgroup) -> TwoCocycle {
        let (_, emb) = self.group().subgroup_as_group(h);
        let module = Arc::new(self.module.restrict(h));
        let values = emb
            .iter()
            .flat_map(|&a| emb.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.value(a, b).to_vec())
            .collect();
        TwoCocycle { module, values }
    }
}

/// Entrywise Teichmüller lift of every image.
pub fn teichmuller_section(rep: &Representation<crate::algebra::Fq>, witt: &Witt2) -> Vec<Matrix<WittElem>> {
    rep.images().iter().map(|a| a.map(|x| witt.teichmuller(x))).collect()
}

/// Obstruction cocycle of `rep` for the lifting problem to `W_2(k)`, using
/// the Teichmüller-entry section.
pub fn obstruction_class(rep: &Representation<crate::algebra::Fq>) -> Result<TwoCocycle, GroupError> {
    let witt = Witt2::new(rep.field().clone())?;
    let section = teichmuller_section(rep, &witt);
    obstruction_with_section(rep, &witt, &section)
}

/// Obstruction cocycle for an arbitrary section `s` (one lift per element,
/// `s(e) = I`): `s(g) s(h) = (I + p c(g,h)) s(gh)`, with `p M_n(k) = M_n(k)`
/// through the Teichmüller digit.
pub fn obstruction_with_section(
    rep: &Representation<crate::algebra::Fq>,
    witt: &Witt2,
    section: &[Matrix<WittElem>],
) -> Result<TwoCocycle, GroupError> {
    let g = rep.group();
    let n = g.order();
    if n > MAX_OBSTRUCTION_ORDER {
        return Err(GroupError::TooLarge(n, MAX_OBSTRUCTION_ORDER));
    }
    let f = rep.field();
    if section.len() != n {
        return Err(AlgebraError::Dimension("section needs one matrix per element".into()).into());
    }
    for (x, s) in section.iter().enumerate() {
        if s.map(|e| witt.reduce(e)) != *rep.image(x) {
            return Err(GroupError::NotHomomorphism(format!("section does not reduce to f({x})")));
        }
    }
    if !witt.mat_is_identity(&section[g.identity()]) {
        return Err(GroupError::NotHomomorphism("section must send the identity to I".into()));
    }
    let inverses: Vec<Matrix<WittElem>> = section
        .par_iter()
        .map(|s| witt.mat_inverse(s))
        .collect::<Result<_, _>>()?;
    let module = Arc::new(FpModule::adjoint(rep));
    let dim = rep.dim();
    let values = (0..n * n)
        .into_par_iter()
        .map(|t| {
            let (a, b) = (t / n, t % n);
            let u = witt.mat_mul(&witt.mat_mul(&section[a], &section[b]), &inverses[g.mul(a, b)]);
            let diff = witt.mat_sub(&u, &witt.mat_identity(dim));
            let digits = diff.map(|x| witt.p_digit(x).expect("u reduces to the identity"));
            matrix_coords(f, &digits)
        })
        .collect();
    let c = TwoCocycle::new_unchecked(module, values);
    c.verify().map_err(GroupError::NotHomomorphism)?;
    Ok(c)
}

/// Lift `(I + p b(g)) s(g)` of a representation from a 1-cochain `b`
/// (values in `Ad`, indexed by element) and a section `s`.
pub fn corrected_lift(
    rep: &Representation<crate::algebra::Fq>,
    witt: &Witt2,
    section: &[Matrix<WittElem>],
    b: &[Vec<u32>],
) -> Vec<Matrix<WittElem>> {
    let f = rep.field();
    let n = rep.dim();
    section
        .iter()
        .zip(b)
        .map(|(s, bv)| {
            let bm = super::module::matrix_from_coords(f, n, bv);
            let corr = witt.mat_add(&witt.mat_identity(n), &bm.map(|x| witt.p_times(x)));
            witt.mat_mul(&corr, s)
        })
        .collect()
}
