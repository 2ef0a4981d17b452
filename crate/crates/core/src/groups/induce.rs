use std::sync::Arc;

use super::{FiniteGroup, Representation, Subgroup};
use crate::algebra::{Matrix, MatrixOps, Ring};
use crate::error::GroupError;

/// Induced representation `Ind_H^G rho`.
///
/// `rho` is a representation of `G.subgroup_as_group(h)`. With left coset
/// representatives `t_0 = e, t_1, …` (see [`FiniteGroup::left_coset_reps`])
/// the block `(j, i)` of the image of `g` is `rho(t_j^-1 g t_i)` when that
/// element lies in `H`, and zero otherwise.
pub fn induce_rep<R: Ring>(
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    rho: &Representation<R>,
) -> Result<Representation<R>, GroupError> {
    g.subgroup(h.elements())?;
    let (hg, emb) = g.subgroup_as_group(h);
    if **rho.group() != hg {
        return Err(GroupError::NotSubgroup(
            "representation is not defined on the designated subgroup".into(),
        ));
    }
    let mut local = vec![usize::MAX; g.order()];
    for (i, &x) in emb.iter().enumerate() {
        local[x] = i;
    }
    let reps = g.left_coset_reps(h);
    let (n, k) = (rho.dim(), reps.len());
    let r = rho.ring();
    let image = |x: usize| {
        let mut m = r.mat_zero(n * k);
        for (i, &ti) in reps.iter().enumerate() {
            for (j, &tj) in reps.iter().enumerate() {
                let y = g.mul(g.mul(g.inv(tj), x), ti);
                if local[y] == usize::MAX {
                    continue;
                }
                let block = rho.image(local[y]);
                for a in 0..n {
                    for b in 0..n {
                        m.set(j * n + a, i * n + b, block.get(a, b));
                    }
                }
            }
        }
        m
    };
    let gens = g.generators().iter().map(|&x| image(x)).collect();
    Representation::new(g.clone(), r.clone(), gens)
}

/// Checks that `rho` is a direct summand of the restriction of `Ind rho` to
/// `H`: returns the idempotent projecting onto the identity-coset block after
/// verifying it commutes with the restricted action and cuts out `rho`
/// exactly.
pub fn verify_induced_summand<R: Ring>(
    induced: &Representation<R>,
    h: &Subgroup,
    rho: &Representation<R>,
) -> Result<Matrix<R::Elem>, GroupError> {
    let r = induced.ring();
    let (big, n) = (induced.dim(), rho.dim());
    let e = Matrix::from_fn(big, |i, j| if i == j && i < n { r.one() } else { r.zero() });
    if r.mat_mul(&e, &e) != e {
        return Err(GroupError::NotHomomorphism("projection is not idempotent".into()));
    }
    let (_, emb) = induced.group().subgroup_as_group(h);
    for (local, &x) in emb.iter().enumerate() {
        let m = induced.image(x);
        let (em, me) = (r.mat_mul(&e, m), r.mat_mul(m, &e));
        if em != me {
            return Err(GroupError::NotHomomorphism(format!(
                "projection does not commute with element {x}"
            )));
        }
        let block = Matrix::from_fn(n, |a, b| em.get(a, b));
        if &block != rho.image(local) {
            return Err(GroupError::NotHomomorphism(format!(
                "projected block differs from rho at element {x}"
            )));
        }
    }
    Ok(e)
}
