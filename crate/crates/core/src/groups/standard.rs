//! The explicit representations used as witnesses.

use std::sync::Arc;

use super::catalog::{abelian_group, cyclic_group, s3_as_gl2f2, sl2_group};
use super::Representation;
use crate::algebra::{Fq, FqElem, Matrix, MatrixOps, Ring};
use crate::error::{AlgebraError, GroupError};

/// Unipotent Jordan block `I + N` of size `m`, `N` the superdiagonal shift.
pub fn jordan_block<R: Ring>(ring: &R, m: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(m, |i, j| if i == j || j == i + 1 { ring.one() } else { ring.zero() })
}

/// Nilpotent shift `N` of size `m` (ones on the superdiagonal).
pub fn nilpotent_shift<R: Ring>(ring: &R, m: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(m, |i, j| if j == i + 1 { ring.one() } else { ring.zero() })
}

/// `Z/p^n` acting through a unipotent Jordan block of size `p^{n-1} + 1`,
/// whose order is exactly `p^n`.
pub fn jordan_block_rep(p: u32, n: u32, field: &Fq) -> Result<Representation<Fq>, GroupError> {
    if field.characteristic() != p {
        return Err(AlgebraError::Unsupported(format!(
            "field {} does not have characteristic {p}",
            field.describe()
        ))
        .into());
    }
    if n == 0 {
        return Err(AlgebraError::Unsupported("exponent must be positive".into()).into());
    }
    let group = Arc::new(cyclic_group(p.pow(n))?);
    let m = p.pow(n - 1) as usize + 1;
    Representation::new(group, field.clone(), vec![jordan_block(field, m)])
}

/// `Z/2^m x Z/2^n` over `F_4` in dimension `2^m`, generators acting by
/// `I + x` and `I + y` with `x` the nilpotent Jordan block and
/// `y = w x^{2^{m-n}}`, `w` a primitive cube root of unity.
pub fn two_powers_rep(m: u32, n: u32) -> Result<Representation<Fq>, GroupError> {
    if n == 0 || n > m {
        return Err(AlgebraError::Unsupported(format!("need m >= n >= 1, got ({m}, {n})")).into());
    }
    let f = Fq::new(2, 2)?;
    let dim = 1usize << m;
    let x = nilpotent_shift(&f, dim);
    let w = f.basis(1);
    let y = f.mat_scale(w, &f.mat_pow(&x, 1 << (m - n)));
    let id = f.mat_identity(dim);
    let group = Arc::new(abelian_group(&[1 << m, 1 << n])?);
    Representation::new(group, f.clone(), vec![f.mat_add(&id, &x), f.mat_add(&id, &y)])
}

/// `Z/p x Z/p` in `GL_2(F_{p^2})` via `I + e` and `I + w e`, `e` the
/// elementary nilpotent and `w` a generator of `F_{p^2}` (so `1, w` are
/// linearly independent over `F_p`).
pub fn p_times_p_rep(p: u32) -> Result<Representation<Fq>, GroupError> {
    let f = Fq::new(p, 2)?;
    let e = nilpotent_shift(&f, 2);
    let id = f.mat_identity(2);
    let w = f.generator();
    let group = Arc::new(abelian_group(&[p, p])?);
    Representation::new(group, f.clone(), vec![f.mat_add(&id, &e), f.mat_add(&id, &f.mat_scale(w, &e))])
}

/// Natural 2-dimensional representation of `S_3 = GL_2(F_2)`.
pub fn s3_natural_rep() -> Representation<Fq> {
    let (g, elems) = s3_as_gl2f2();
    let f = Fq::prime(2).expect("F_2");
    let gens = g.generators().iter().map(|&x| elems[x].clone()).collect();
    Representation::new(Arc::new(g), f, gens).expect("inclusion is a representation")
}

/// Natural representation of `SL_2(F_p)`, `p` in {3, 5}.
pub fn sl2_natural_rep(p: u32) -> Result<Representation<Fq>, GroupError> {
    let (g, elems) = sl2_group(p)?;
    let f = Fq::prime(p)?;
    let gens = g.generators().iter().map(|&x| elems[x].clone()).collect();
    Representation::new(Arc::new(g), f, gens)
}

/// Permutation representation of `G` on the left cosets `G/H` over `field`.
pub fn coset_permutation_rep(
    g: &Arc<super::FiniteGroup>,
    h: &super::Subgroup,
    field: &Fq,
) -> Result<Representation<Fq>, GroupError> {
    let reps = g.left_coset_reps(h);
    let coset_of = |x: usize| {
        reps.iter()
            .position(|&t| h.contains(g.mul(g.inv(t), x)))
            .expect("cosets cover the group")
    };
    let k = reps.len();
    let gens = g
        .generators()
        .iter()
        .map(|&s| {
            let mut m = field.mat_zero(k);
            for (i, &t) in reps.iter().enumerate() {
                m.set(coset_of(g.mul(s, t)), i, field.one());
            }
            m
        })
        .collect();
    Representation::new(g.clone(), field.clone(), gens)
}

/// Whether `m - I` has rank `dim - 1`, i.e. a unipotent `m` is a single
/// Jordan block.
pub fn is_single_jordan_block(field: &Fq, m: &Matrix<FqElem>) -> bool {
    let n = m.n;
    let nil = field.mat_sub(m, &field.mat_identity(n));
    let nilpotent = field.mat_pow(&nil, n as u64).data.iter().all(|&x| x == field.zero());
    nilpotent && field.mat_rank(&nil) + 1 == n
}

/// Modules over `field` on which some element acts as a single Jordan
/// block: permutation modules on `G/H` (for the 2-generated subgroups
/// `H`) of dimension at most `max_dim`, and for abelian groups the blocks
/// of size `2..=ord(s)` on one generator `s` with the others trivial.
pub fn single_block_modules(
    g: &Arc<super::FiniteGroup>,
    field: &Fq,
    max_dim: usize,
) -> Result<Vec<(String, Representation<Fq>)>, GroupError> {
    let mut out = Vec::new();
    for h in g.small_subgroups() {
        let dim = g.order() / h.order();
        if dim > max_dim {
            continue;
        }
        let rep = coset_permutation_rep(g, &h, field)?;
        if (0..g.order()).any(|x| is_single_jordan_block(field, rep.image(x))) {
            out.push((format!("permutation module on G/H, |H| = {}", h.order()), rep));
        }
    }
    if g.is_abelian() {
        for (j, &s) in g.generators().iter().enumerate() {
            let ord = g.element_order(s);
            for m in 2..=ord.min(max_dim) {
                let block = jordan_block(field, m);
                if !field.mat_is_identity(&field.mat_pow(&block, ord as u64)) {
                    continue;
                }
                let gens = (0..g.generators().len())
                    .map(|i| if i == j { block.clone() } else { field.mat_identity(m) })
                    .collect();
                // generators need not be independent in a user-supplied table
                let Ok(rep) = Representation::new(g.clone(), field.clone(), gens) else { continue };
                out.push((format!("Jordan block of size {m} on generator {}", j + 1), rep));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::induce::{induce_rep, verify_induced_summand};
    use crate::groups::{named_group, Equivalence};

    #[test]
    fn jordan_orders() {
        for (p, n) in [(5, 1), (2, 1), (3, 2), (2, 3), (7, 1)] {
            let f = Fq::prime(p).unwrap();
            let rep = jordan_block_rep(p, n, &f).unwrap();
            assert_eq!(rep.dim(), p.pow(n - 1) as usize + 1);
            let order = f.matrix_order(&rep.generator_images()[0], 1000).unwrap();
            assert_eq!(order, p.pow(n) as u64);
        }
        assert!(jordan_block_rep(3, 1, &Fq::prime(2).unwrap()).is_err());
    }

    #[test]
    fn two_powers_commute_with_stated_orders() {
        for m in 1..=4u32 {
            for n in 1..=m {
                let rep = two_powers_rep(m, n).unwrap();
                let f = rep.field().clone();
                let (a, b) = (&rep.generator_images()[0], &rep.generator_images()[1]);
                assert!(f.mat_is_identity(&f.mat_commutator(a, b).unwrap()));
                assert_eq!(f.matrix_order(a, 64).unwrap(), 1 << m);
                assert_eq!(f.matrix_order(b, 64).unwrap(), 1 << n);
            }
        }
    }

    #[test]
    fn induction_from_trivial_subgroup_is_regular() {
        let g = Arc::new(cyclic_group(2).unwrap());
        let f = Fq::prime(2).unwrap();
        let h = g.subgroup(&[g.identity()]).unwrap();
        let (hg, _) = g.subgroup_as_group(&h);
        let rho = Representation::trivial(Arc::new(hg), f.clone(), 1);
        let ind = induce_rep(&g, &h, &rho).unwrap();
        assert_eq!(ind.dim(), 2);
        let swap = Matrix { n: 2, data: vec![f.zero(), f.one(), f.one(), f.zero()] };
        assert_eq!(ind.generator_images()[0], swap);
        verify_induced_summand(&ind, &h, &rho).unwrap();
    }

    #[test]
    fn induction_from_whole_group_is_conjugate() {
        let rho = s3_natural_rep();
        let g = rho.group().clone();
        let all: Vec<usize> = (0..g.order()).collect();
        let h = g.subgroup(&all).unwrap();
        let (hg, emb) = g.subgroup_as_group(&h);
        let gens: Vec<usize> = hg.generators().iter().map(|&x| emb[x]).collect();
        let local = rho.pullback(Arc::new(hg), &gens).unwrap();
        let ind = induce_rep(&g, &h, &local).unwrap();
        assert!(matches!(ind.equivalence(&rho), Equivalence::Conjugate(_)));
    }

    #[test]
    fn serre_rep_induced_to_d4() {
        let d4 = Arc::new(named_group("D4").unwrap());
        // the Klein four subgroup {1, r^2, s, r^2 s}
        let (r, s) = (d4.generators()[0], d4.generators()[1]);
        let r2 = d4.mul(r, r);
        let h = d4.generated_subgroup(&[r2, s]);
        let (hg, emb) = d4.subgroup_as_group(&h);
        let serre = p_times_p_rep(2).unwrap();
        let f = serre.field().clone();
        let (a, b) = (&serre.generator_images()[0], &serre.generator_images()[1]);
        let image = |x: usize| {
            let mut m = f.mat_identity(2);
            if x == r2 || x == d4.mul(r2, s) {
                m = f.mat_mul(&m, a);
            }
            if x == s || x == d4.mul(r2, s) {
                m = f.mat_mul(&m, b);
            }
            m
        };
        let images = hg.generators().iter().map(|&x| image(emb[x])).collect();
        let rho = Representation::new(Arc::new(hg), f.clone(), images).unwrap();
        let ind = induce_rep(&d4, &h, &rho).unwrap();
        assert_eq!(ind.dim(), 4);
        verify_induced_summand(&ind, &h, &rho).unwrap();
    }

    #[test]
    fn coset_action_of_cyclic_is_single_block() {
        let g = Arc::new(abelian_group(&[4, 2]).unwrap());
        let f = Fq::prime(2).unwrap();
        let h = g.generated_subgroup(&[g.generators()[1]]);
        let rep = coset_permutation_rep(&g, &h, &f).unwrap();
        assert_eq!(rep.dim(), 4);
        assert!(is_single_jordan_block(&f, &rep.generator_images()[0]));
    }

    #[test]
    fn single_block_module_library() {
        let g = Arc::new(named_group("D4").unwrap());
        let f = Fq::prime(2).unwrap();
        let mods = single_block_modules(&g, &f, 8).unwrap();
        assert!(mods.iter().any(|(_, r)| r.dim() == 4));
        for (_, r) in &mods {
            assert!((0..8).any(|x| is_single_jordan_block(&f, r.image(x))));
        }
        let z = Arc::new(named_group("Z4xZ2").unwrap());
        let mods = single_block_modules(&z, &f, 8).unwrap();
        assert!(mods.iter().any(|(d, r)| d.starts_with("Jordan") && r.dim() == 3));
    }
}
