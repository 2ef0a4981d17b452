//! Brute-force enumeration of lifts, as an independent check on the
//! linear-algebra verdicts.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cocycle::teichmuller_section;
use crate::algebra::{FiniteRing, Fq, FqElem, Matrix, MatrixOps, Witt2, WittElem};
use crate::error::GroupError;
use crate::groups::Representation;

/// Record of an exhaustive search over all candidate generator lifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveStamp {
    /// Size of the full candidate space (product over generators).
    pub candidates: u64,
    /// Candidate tuples satisfying every Cayley-graph relator.
    pub solutions: u64,
    pub method: String,
}

/// Result of [`exhaustive_lifts`], with one lift when any exists.
#[derive(Clone, Debug)]
pub struct ExhaustiveResult {
    pub stamp: ExhaustiveStamp,
    pub witness: Option<Vec<Matrix<WittElem>>>,
}

fn all_matrices(field: &Fq, n: usize) -> Vec<Matrix<FqElem>> {
    let els = field.elements();
    let q = els.len() as u64;
    let total = q.pow((n * n) as u32);
    (0..total)
        .map(|mut idx| {
            let data = (0..n * n)
                .map(|_| {
                    let e = els[(idx % q) as usize];
                    idx /= q;
                    e
                })
                .collect();
            Matrix { n, data }
        })
        .collect()
}

/// Enumerates every tuple `s(gen_j) + p M_j`, `M_j` in `M_n(k)`, and counts
/// those that define a homomorphism to `GL_n(W_2(k))`. Each generator's
/// candidates are first filtered by `A^{ord(s)} = I`; surviving tuples are
/// checked against all Cayley-graph relators, which present the group
/// independently of any user-supplied relators. Returns `None` when the
/// candidate space exceeds `budget`.
pub fn exhaustive_lifts(rep: &Representation<Fq>, budget: u64) -> Result<Option<ExhaustiveResult>, GroupError> {
    let field = rep.field();
    let n = rep.dim();
    let g = rep.group();
    let per_gen = (field.order() as u64).checked_pow((n * n) as u32);
    let candidates = per_gen.and_then(|c| c.checked_pow(g.generators().len() as u32));
    let Some(candidates) = candidates.filter(|&c| c <= budget) else { return Ok(None) };
    let witt = Witt2::new(field.clone())?;
    let section = teichmuller_section(rep, &witt);
    let corrections = all_matrices(field, n);
    let filtered: Vec<Vec<Matrix<WittElem>>> = g
        .generators()
        .iter()
        .map(|&s| {
            let ord = g.element_order(s) as u64;
            corrections
                .par_iter()
                .map(|m| witt.mat_add(&section[s], &m.map(|x| witt.p_times(x))))
                .filter(|a| witt.mat_is_identity(&witt.mat_pow(a, ord)))
                .collect()
        })
        .collect();
    let relators = g.cayley_relators();
    let sizes: Vec<usize> = filtered.iter().map(Vec::len).collect();
    let tuples: u64 = sizes.iter().map(|&s| s as u64).product();
    let decode = |mut idx: u64| -> Vec<&Matrix<WittElem>> {
        filtered
            .iter()
            .map(|c| {
                let k = (idx % c.len() as u64) as usize;
                idx /= c.len() as u64;
                &c[k]
            })
            .collect()
    };
    let holds = |idx: u64| {
        let imgs = decode(idx);
        let inverses: Vec<Matrix<WittElem>> =
            imgs.iter().map(|a| witt.mat_inverse(a).expect("lifts of units are units")).collect();
        relators.iter().all(|w| {
            let mut acc = witt.mat_identity(n);
            for &l in w {
                let k = l.unsigned_abs() as usize - 1;
                acc = witt.mat_mul(&acc, if l > 0 { imgs[k] } else { &inverses[k] });
            }
            witt.mat_is_identity(&acc)
        })
    };
    let hits: Vec<u64> = (0..tuples).into_par_iter().filter(|&i| holds(i)).collect();
    let witness = hits.first().map(|&i| decode(i).into_iter().cloned().collect());
    Ok(Some(ExhaustiveResult {
        stamp: ExhaustiveStamp {
            candidates,
            solutions: hits.len() as u64,
            method: "all generator lifts s(gen) + p*M, checked on Cayley-graph relators".into(),
        },
        witness,
    }))
}
