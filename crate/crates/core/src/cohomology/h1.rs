//! First cohomology `H^1(G, V)` of a finite module.

use super::linalg::{dense_rank, SparseSystem};
use super::module::FpModule;
use crate::groups::Word;

/// How `Z^1` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H1Mode {
    /// Normalized bar cochains: `b(gh) = b(g) + g.b(h)` for all pairs,
    /// solved by sparse elimination on the multiplication table.
    Table,
    /// Derivations determined by their values on generators, subject to
    /// the Fox derivatives of the group's presentation relators.
    Relators,
}

fn over_k(module: &FpModule, fp_dim: usize) -> usize {
    let m = module.field_degree() as usize;
    assert!(fp_dim % m == 0, "F_p-dimension {fp_dim} of a k-space is not divisible by [k:F_p] = {m}");
    fp_dim / m
}

/// `dim_{F_p} B^1 = dim V - dim V^G`.
fn boundaries_dim(module: &FpModule) -> usize {
    module.dim() - module.invariants_dim()
}

/// `dim_k H^1(G, V)`.
pub fn h1_dimension(module: &FpModule, mode: H1Mode) -> usize {
    match mode {
        H1Mode::Table => h1_table(module),
        H1Mode::Relators => h1_relators(module, &module.group().presentation_relators()),
    }
}

pub fn h1_table(module: &FpModule) -> usize {
    let g = module.group();
    let (n, d, p) = (g.order(), module.dim(), module.prime());
    let e = g.identity();
    let rank = g.bfs_rank();
    let col = |x: usize, i: usize| (rank[x] - 1) * d + i;
    let mut sys = SparseSystem::new(p, (n - 1) * d);
    let mut order: Vec<(usize, usize)> = Vec::with_capacity(n * n);
    for &x in g.bfs_order() {
        for &s in g.generators() {
            order.push((x, s));
        }
    }
    for &x in g.bfs_order() {
        for &y in g.bfs_order() {
            if !g.generators().contains(&y) {
                order.push((x, y));
            }
        }
    }
    for (x, y) in order {
        if x == e || y == e {
            continue;
        }
        let xy = g.mul(x, y);
        let act = module.action_matrix(x);
        for i in 0..d {
            let mut entries: Vec<(usize, u32)> = (0..d)
                .filter(|&k| act[i * d + k] != 0)
                .map(|k| (col(y, k), act[i * d + k]))
                .collect();
            if xy != e {
                entries.push((col(xy, i), p - 1));
            }
            entries.push((col(x, i), 1));
            sys.push(&entries, 0);
        }
    }
    let z1 = (n - 1) * d - sys.rank_data().rank;
    over_k(module, z1 - boundaries_dim(module))
}

/// Relator mode for an explicit list of relators (words in the generators).
/// The list must present the group for the answer to be `H^1`; the Cayley
/// relators always do.
pub fn h1_relators(module: &FpModule, relators: &[Word]) -> usize {
    let g = module.group();
    let (d, p) = (module.dim(), module.prime());
    let gens = g.generators();
    let ncols = gens.len() * d;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for w in relators {
        // sum over letters of +-(prefix action) on the generator's block
        let mut jac = vec![0u32; d * ncols];
        let mut prefix = g.identity();
        for &l in w {
            let j = l.unsigned_abs() as usize - 1;
            let (elem, sign) = if l > 0 {
                (prefix, 1)
            } else {
                (g.mul(prefix, g.inv(gens[j])), p - 1)
            };
            let act = module.action_matrix(elem);
            for i in 0..d {
                for k in 0..d {
                    let v = &mut jac[i * ncols + j * d + k];
                    *v = ((*v as u64 + sign as u64 * act[i * d + k] as u64) % p as u64) as u32;
                }
            }
            prefix = if l > 0 { g.mul(prefix, gens[j]) } else { g.mul(prefix, g.inv(gens[j])) };
        }
        rows.extend(jac.chunks(ncols).map(<[u32]>::to_vec));
    }
    let z1 = ncols - dense_rank(p, rows, ncols);
    over_k(module, z1 - boundaries_dim(module))
}
