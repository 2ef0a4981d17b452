//! Named finite groups with presentations.

use std::sync::Arc;

use super::{FiniteGroup, Word, MAX_GROUP_ORDER};
use crate::algebra::{Fq, FqElem, Matrix, MatrixOps, Ring};
use crate::error::GroupError;

fn commutator(i: i32, j: i32) -> Word {
    vec![i, j, -i, -j]
}

fn power(l: i32, e: usize) -> Word {
    vec![l; e]
}

/// Abelian group `prod Z/q_i` for prime powers (or any moduli) `q_i`, one
/// generator per factor, named by invariant factors.
pub fn abelian_group(factors: &[u32]) -> Result<FiniteGroup, GroupError> {
    let factors: Vec<u32> = factors.iter().copied().filter(|&q| q > 1).collect();
    let order: u64 = factors.iter().map(|&q| q as u64).product();
    if order > MAX_GROUP_ORDER as u64 {
        return Err(GroupError::TooLarge(order as usize, MAX_GROUP_ORDER));
    }
    let k = factors.len();
    let gens: Vec<Vec<u32>> = (0..k)
        .map(|i| (0..k).map(|j| u32::from(i == j)).collect())
        .collect();
    let mut relators: Vec<Word> = (0..k).map(|i| power(i as i32 + 1, factors[i] as usize)).collect();
    for i in 0..k {
        for j in i + 1..k {
            relators.push(commutator(i as i32 + 1, j as i32 + 1));
        }
    }
    let fs = factors.clone();
    let (g, _) = FiniteGroup::from_closure(
        &gens,
        vec![0; k],
        move |a, b| a.iter().zip(b).zip(&fs).map(|((x, y), q)| (x + y) % q).collect(),
        relators,
        Some(abelian_name(&factors)),
    )?;
    Ok(g)
}

/// `Z/n` with a single generator.
pub fn cyclic_group(n: u32) -> Result<FiniteGroup, GroupError> {
    if n == 1 {
        return abelian_group(&[]);
    }
    let (g, _) = FiniteGroup::from_closure(
        &[1u32],
        0,
        move |a, b| (a + b) % n,
        vec![power(1, n as usize)],
        Some(format!("Z{n}")),
    )?;
    Ok(g)
}

fn prime_factorization(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while n > 1 {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    out
}

/// Invariant factors of a group given by prime-power factors, largest first.
pub fn invariant_factors(factors: &[u32]) -> Vec<u32> {
    let mut by_prime: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
    for &q in factors.iter().filter(|&&q| q > 1) {
        for (p, e) in prime_factorization(q) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    for v in by_prime.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    (0..len)
        .map(|i| by_prime.values().map(|v| v.get(i).copied().unwrap_or(1)).product())
        .collect()
}

fn abelian_name(factors: &[u32]) -> String {
    let inv = invariant_factors(factors);
    if inv.is_empty() {
        return "1".into();
    }
    inv.iter().map(|q| format!("Z{q}")).collect::<Vec<_>>().join("x")
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Primary decompositions (lists of prime powers) of all abelian groups of
/// order `n`.
pub fn abelian_types(n: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for (p, e) in prime_factorization(n) {
        let mut next = Vec::new();
        for prefix in &out {
            for part in partitions(e, e) {
                let mut v = prefix.clone();
                v.extend(part.iter().map(|&k| p.pow(k)));
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Dihedral group of order `2n`: `r^n = s^2 = (s r)^2 = 1`.
pub fn dihedral_group(n: u32) -> Result<FiniteGroup, GroupError> {
    let (g, _) = FiniteGroup::from_closure(
        &[(1u32, 0u32), (0, 1)],
        (0, 0),
        move |&(k, e), &(l, f)| {
            let l = if e == 1 { (n - l) % n } else { l };
            ((k + l) % n, (e + f) % 2)
        },
        vec![power(1, n as usize), power(2, 2), vec![2, 1, 2, 1]],
        Some(format!("D{n}")),
    )?;
    Ok(g)
}

/// Dicyclic group of order `4n`: `a^{2n} = 1`, `a^n = b^2`, `b a b^-1 = a^-1`.
pub fn dicyclic_group(n: u32) -> Result<FiniteGroup, GroupError> {
    let m = 2 * n;
    let name = if n.is_power_of_two() { format!("Q{}", 4 * n) } else { format!("Dic{n}") };
    let (g, _) = FiniteGroup::from_closure(
        &[(1u32, 0u32), (0, 1)],
        (0, 0),
        move |&(k, e), &(l, f)| match (e, f) {
            (0, _) => ((k + l) % m, f),
            (1, 0) => ((k + m - l) % m, 1),
            _ => ((k + m - l + n) % m, 0),
        },
        vec![
            power(1, m as usize),
            [power(1, n as usize), vec![-2, -2]].concat(),
            vec![2, 1, -2, 1],
        ],
        Some(name),
    )?;
    Ok(g)
}

/// Matrix group generated by `gens` over `field`, with its elements.
pub fn matrix_group(
    field: &Fq,
    gens: &[Matrix<FqElem>],
    relators: Vec<Word>,
    name: &str,
) -> Result<(FiniteGroup, Vec<Matrix<FqElem>>), GroupError> {
    let n = gens.first().map_or(1, |m| m.n);
    FiniteGroup::from_closure(
        gens,
        field.mat_identity(n),
        |a, b| field.mat_mul(a, b),
        relators,
        Some(name.into()),
    )
}

fn fq_mat(f: &Fq, rows: &[&[i64]]) -> Matrix<FqElem> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect())
        .expect("square literal")
}

/// `S_3` realised as `GL_2(F_2)`; the natural representation is the identity
/// on these matrices.
pub fn s3_as_gl2f2() -> (FiniteGroup, Vec<Matrix<FqElem>>) {
    let f = Fq::prime(2).expect("F_2");
    let a = fq_mat(&f, &[&[0, 1], &[1, 1]]);
    let b = fq_mat(&f, &[&[0, 1], &[1, 0]]);
    matrix_group(&f, &[a, b], vec![power(1, 3), power(2, 2), vec![1, 2, 1, 2]], "S3")
        .expect("GL_2(F_2) is a group of order 6")
}

/// Heisenberg group of order `p^3` as unitriangular `3x3` matrices over `F_p`.
pub fn heisenberg_group(p: u32) -> Result<(FiniteGroup, Vec<Matrix<FqElem>>), GroupError> {
    let f = Fq::prime(p)?;
    let x = fq_mat(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
    let y = fq_mat(&f, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
    let c = commutator(1, 2);
    let central = |l: i32| [c.clone(), vec![l], crate::groups::invert_word(&c), vec![-l]].concat();
    let relators = vec![power(1, p as usize), power(2, p as usize), central(1), central(2)];
    matrix_group(&f, &[x, y], relators, &format!("H{}", p.pow(3)))
}

/// `SL_2(F_p)` for `p` in {3, 5}, generated by `s, t` with
/// `(s t)^2 = s^3 = t^r` (`r = 3, 5`): the binary tetrahedral and
/// icosahedral presentations. Generators are the first pair in element
/// order satisfying the relations and generating the group.
pub fn sl2_group(p: u32) -> Result<(FiniteGroup, Vec<Matrix<FqElem>>), GroupError> {
    let r = match p {
        3 => 3,
        5 => 5,
        _ => return Err(GroupError::UnknownGroup(format!("SL2({p})"))),
    };
    let f = Fq::prime(p)?;
    let s0 = fq_mat(&f, &[&[0, -1], &[1, 0]]);
    let t0 = fq_mat(&f, &[&[1, 1], &[0, 1]]);
    let (_, elems) = matrix_group(&f, &[s0, t0], vec![], "SL2")?;
    let order = elems.len();
    for s in &elems {
        let s3 = f.mat_pow(s, 3);
        for t in &elems {
            let st = f.mat_mul(s, t);
            if f.mat_pow(&st, 2) != s3 || f.mat_pow(t, r) != s3 {
                continue;
            }
            let relators = vec![
                [vec![1, 2, 1, 2], vec![-1; 3]].concat(),
                [vec![1; 3], vec![-2; r as usize]].concat(),
            ];
            let (g, els) =
                matrix_group(&f, &[s.clone(), t.clone()], relators, &format!("SL2({p})"))?;
            if g.order() == order {
                return Ok((g, els));
            }
        }
    }
    Err(GroupError::UnknownGroup(format!("SL2({p})")))
}

/// Group by name: `Z<n>` products such as `Z4xZ2`, `S3`, `D<n>`, `Q8`,
/// `Q16`, `H27`, `SL2(3)`, `SL2(5)`, or `1` for the trivial group.
pub fn named_group(name: &str) -> Result<FiniteGroup, GroupError> {
    let unknown = || GroupError::UnknownGroup(name.into());
    let parse = |s: &str| s.parse::<u32>().map_err(|_| unknown());
    match name {
        "1" => abelian_group(&[]),
        "S3" => Ok(s3_as_gl2f2().0),
        "Q8" => dicyclic_group(2),
        "Q16" => dicyclic_group(4),
        "H27" => heisenberg_group(3).map(|x| x.0),
        "SL2(3)" => sl2_group(3).map(|x| x.0),
        "SL2(5)" => sl2_group(5).map(|x| x.0),
        _ if name.starts_with('D') => dihedral_group(parse(&name[1..])?),
        _ if name.starts_with('Z') => {
            let factors: Vec<u32> = name
                .split('x')
                .map(|s| s.strip_prefix('Z').ok_or_else(unknown).and_then(parse))
                .collect::<Result<_, _>>()?;
            if factors.len() == 1 {
                return cyclic_group(factors[0]);
            }
            let primary: Vec<u32> = factors
                .iter()
                .flat_map(|&q| prime_factorization(q).into_iter().map(|(p, e)| p.pow(e)))
                .collect();
            let mut g = abelian_group(&primary)?;
            g = g.with_name(name);
            Ok(g)
        }
        _ => Err(unknown()),
    }
}

const NAMED_NONABELIAN: &[(&str, usize)] = &[
    ("S3", 6),
    ("D4", 8),
    ("Q8", 8),
    ("D8", 16),
    ("Q16", 16),
    ("SL2(3)", 24),
    ("H27", 27),
    ("SL2(5)", 120),
];

/// All abelian groups of order up to `max_order` (in primary-decomposition
/// form, trivial group included) followed by the named non-abelian groups of
/// order up to `max_order`, sorted by (order, name).
pub fn group_catalog(max_order: usize) -> Result<Vec<Arc<FiniteGroup>>, GroupError> {
    if max_order > MAX_GROUP_ORDER {
        return Err(GroupError::TooLarge(max_order, MAX_GROUP_ORDER));
    }
    let mut out = Vec::new();
    for n in 1..=max_order as u32 {
        for t in abelian_types(n) {
            out.push(Arc::new(abelian_group(&t)?));
        }
    }
    for &(name, order) in NAMED_NONABELIAN {
        if order <= max_order {
            out.push(Arc::new(named_group(name)?));
        }
    }
    out.sort_by(|a, b| (a.order(), a.label()).cmp(&(b.order(), b.label())));
    Ok(out)
}
