//! Solving `d^1 b = c` and certifying liftability.

use serde::{Deserialize, Serialize};

use super::cocycle::{corrected_lift, obstruction_class, teichmuller_section, TwoCocycle};
use super::exhaustive::ExhaustiveStamp;
use super::linalg::{DenseSystem, RankData, SparseSystem};
use super::module::FpModule;
use crate::algebra::{Fq, Witt2};
use crate::error::GroupError;
use crate::groups::{FiniteGroup, RepJson, Representation};

/// Outcome of a coboundary solve.
#[derive(Clone, Debug)]
pub struct CoboundarySolution {
    pub rank_data: RankData,
    /// `b` with `d^1 b = c`, one module vector per element (`b(e) = 0`).
    pub cochain: Option<Vec<Vec<u32>>>,
}

/// `(d^1 b)(g, h) = g.b(h) - b(gh) + b(g)`.
pub fn coboundary_of(module: &FpModule, b: &[Vec<u32>], g: usize, h: usize) -> Vec<u32> {
    let grp = module.group();
    let t = module.add(&module.act(g, &b[h]), &b[g]);
    module.sub(&t, &b[grp.mul(g, h)])
}

/// Checks `d^1 b = c` on every pair.
pub fn verify_cochain(c: &TwoCocycle, b: &[Vec<u32>]) -> bool {
    let m = c.module();
    let n = c.group().order();
    b.len() == n
        && b[c.group().identity()].iter().all(|&x| x == 0)
        && (0..n).all(|g| (0..n).all(|h| coboundary_of(m, b, g, h) == c.value(g, h)))
}

/// Solves `d^1 b = c` over `F_p`.
///
/// Uses the equations on Cayley-graph edges `(g, s)`, `s` a generator; for a
/// normalized cocycle these are equivalent to the equations on all pairs
/// (if `z = c - d^1 b` vanishes on every `(g, s)` the cocycle identity
/// gives `z(g, hs) = z(g, h)`, hence `z = 0`). Columns are ordered by the
/// BFS rank of the element. Spanning-tree rows are eliminated first: each
/// pivots on `b(child)`, expressing every `b(x)` through the values on the
/// generators. The remaining edge rows are then reduced densely in those
/// generator coordinates.
pub fn is_coboundary(c: &TwoCocycle) -> CoboundarySolution {
    let m = c.module();
    let g = c.group();
    let (n, d, p) = (g.order(), m.dim(), m.prime());
    let e = g.identity();
    let gens = g.generators();

    // free blocks: elements reached directly from the identity
    let mut block = vec![usize::MAX; n];
    let mut blocks = 0;
    for &x in g.bfs_order() {
        if let Some((parent, _)) = g.tree_parent(x) {
            if parent == e {
                block[x] = blocks;
                blocks += 1;
            }
        }
    }
    let w = blocks * d;
    // b(x) = A_x beta + a_x with A_x a d x w matrix
    let mut amat: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut avec: Vec<Vec<u32>> = vec![Vec::new(); n];
    amat[e] = vec![0; d * w];
    avec[e] = vec![0; d];
    let mut tree_rows = 0;
    for &x in g.bfs_order() {
        let Some((parent, j)) = g.tree_parent(x) else { continue };
        if parent == e {
            let mut a = vec![0u32; d * w];
            for i in 0..d {
                a[i * w + block[x] * d + i] = 1;
            }
            amat[x] = a;
            avec[x] = vec![0; d];
            continue;
        }
        tree_rows += d;
        let s = gens[j];
        // b(x) = b(parent) + parent.b(s) - c(parent, s)
        let mut a = amat[parent].clone();
        let act = m.action_matrix(parent);
        let col0 = block[s] * d;
        for i in 0..d {
            for k in 0..d {
                let v = &mut a[i * w + col0 + k];
                *v = (*v + act[i * d + k]) % p;
            }
        }
        amat[x] = a;
        avec[x] = m.sub(&avec[parent], c.value(parent, s));
    }

    let mut dense = DenseSystem::new(p, w);
    let mut residual_rows = 0;
    for x in 0..n {
        for (j, &s) in gens.iter().enumerate() {
            if s == e || g.tree_parent(g.mul(x, s)) == Some((x, j)) {
                continue;
            }
            if x == e {
                // b(s) = b(s): only a duplicate generator lands here
                continue;
            }
            let y = g.mul(x, s);
            let act = m.action_matrix(x);
            let col0 = block[s] * d;
            // (A_y - A_x - act(x) A_s) beta = a_x - c(x, s) - a_y
            let rhs = m.sub(&m.sub(&avec[x], c.value(x, s)), &avec[y]);
            for i in 0..d {
                let mut row: Vec<u32> = (0..w)
                    .map(|k| (amat[y][i * w + k] + p - amat[x][i * w + k]) % p)
                    .collect();
                for k in 0..d {
                    row[col0 + k] = (row[col0 + k] + p - act[i * d + k]) % p;
                }
                dense.push(row, rhs[i]);
            }
            residual_rows += d;
        }
    }
    let (residual, beta) = dense.solve();
    let rank_data = RankData {
        equations: tree_rows + residual_rows,
        unknowns: (n - 1) * d,
        rank: tree_rows + residual.rank,
        augmented_rank: tree_rows + residual.augmented_rank,
    };
    let cochain = beta.map(|beta| {
        (0..n)
            .map(|x| {
                (0..d)
                    .map(|i| {
                        let row = &amat[x][i * w..(i + 1) * w];
                        let dot: u64 = row.iter().zip(&beta).map(|(&a, &b)| a as u64 * b as u64).sum();
                        ((dot + avec[x][i] as u64) % p as u64) as u32
                    })
                    .collect()
            })
            .collect()
    });
    CoboundarySolution { rank_data, cochain }
}

/// Solves `d^1 b = c` with every pair `(g, h)` of non-identity elements as an
/// equation block, by sparse elimination. Independent of
/// [`is_coboundary`]; used to cross-check it.
pub fn is_coboundary_bar(c: &TwoCocycle) -> CoboundarySolution {
    let m = c.module();
    let g = c.group();
    let (n, d, p) = (g.order(), m.dim(), m.prime());
    let e = g.identity();
    let rank = g.bfs_rank();
    let col = |x: usize, i: usize| (rank[x] - 1) * d + i;
    let mut sys = SparseSystem::new(p, (n - 1) * d);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &x in g.bfs_order() {
        for &s in g.generators() {
            pairs.push((x, s));
        }
    }
    let mut seen = vec![false; n * n];
    for &(x, s) in &pairs {
        seen[x * n + s] = true;
    }
    for &x in g.bfs_order() {
        for &y in g.bfs_order() {
            if !seen[x * n + y] {
                pairs.push((x, y));
            }
        }
    }
    for (x, y) in pairs {
        if x == e || y == e {
            continue;
        }
        let xy = g.mul(x, y);
        let act = m.action_matrix(x);
        let cv = c.value(x, y);
        for i in 0..d {
            // x.b(y)_i - b(xy)_i + b(x)_i = c_i
            let mut entries: Vec<(usize, u32)> = (0..d)
                .filter(|&k| act[i * d + k] != 0)
                .map(|k| (col(y, k), act[i * d + k]))
                .collect();
            if xy != e {
                entries.push((col(xy, i), p - 1));
            }
            entries.push((col(x, i), 1));
            sys.push(&entries, cv[i]);
        }
    }
    let rank_data = sys.rank_data();
    let cochain = sys.solve().map(|sol| {
        (0..n)
            .map(|x| if x == e { vec![0; d] } else { (0..d).map(|i| sol[col(x, i)]).collect() })
            .collect()
    });
    CoboundarySolution { rank_data, cochain }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Lifts,
    Obstructed,
}

/// How `p M_n(k)` is identified with `M_n(k)` in the stored cocycles.
pub const KERNEL_IDENTIFICATION: &str = "teichmuller_digit";

/// Certificate for the lifting problem of a representation to `W_2(k)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub verdict: Verdict,
    pub group: FiniteGroup,
    pub rep: RepJson,
    pub cocycle_hash: String,
    /// The re-verified lift over `W_2(k)` when the verdict is `LIFTS`.
    pub lift: Option<RepJson>,
    /// Coordinates of the 1-cochain `b` with `d^1 b = c`, per element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cochain: Option<Vec<Vec<u32>>>,
    pub rank_data: RankData,
    pub kernel_identification: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhaustive: Option<ExhaustiveStamp>,
    /// Full cocycle table, `values[g * |G| + h]`, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<Vec<u32>>>,
}

/// Decides whether `rep` lifts to `W_2(k)`. A `LIFTS` verdict carries the
/// lift `(I - p b(g)) s(g)`, which has passed the full homomorphism check.
pub fn certify(rep: &Representation<Fq>) -> Result<ObstructionCertificate, GroupError> {
    let c = obstruction_class(rep)?;
    let sol = is_coboundary(&c);
    let mut cert = ObstructionCertificate {
        verdict: Verdict::Obstructed,
        group: (**rep.group()).clone(),
        rep: rep.to_json(),
        cocycle_hash: c.hash(),
        lift: None,
        cochain: None,
        rank_data: sol.rank_data,
        kernel_identification: KERNEL_IDENTIFICATION.into(),
        exhaustive: None,
        cocycle: None,
    };
    if let Some(b) = sol.cochain {
        let lift = lift_from_cochain(rep, &c, &b)?;
        cert.verdict = Verdict::Lifts;
        cert.lift = Some(lift.to_json());
        cert.cochain = Some(b);
    }
    Ok(cert)
}

/// Assembles and fully verifies the lift given `b` with `d^1 b = c`.
pub fn lift_from_cochain(
    rep: &Representation<Fq>,
    c: &TwoCocycle,
    b: &[Vec<u32>],
) -> Result<Representation<Witt2>, GroupError> {
    if !verify_cochain(c, b) {
        return Err(GroupError::NotHomomorphism("cochain does not bound the cocycle".into()));
    }
    let witt = Witt2::new(rep.field().clone())?;
    let section = teichmuller_section(rep, &witt);
    let m = c.module();
    let neg: Vec<Vec<u32>> = b.iter().map(|v| m.neg(v)).collect();
    let images = corrected_lift(rep, &witt, &section, &neg);
    let gens = rep.group().generators().iter().map(|&s| images[s].clone()).collect();
    let lift = Representation::new(rep.group().clone(), witt.clone(), gens)?;
    for (x, img) in images.iter().enumerate() {
        if lift.image(x) != img {
            return Err(GroupError::NotHomomorphism(format!("lift disagrees at element {x}")));
        }
    }
    Ok(lift)
}

impl ObstructionCertificate {
    pub fn with_cocycle(mut self, c: &TwoCocycle) -> Self {
        self.cocycle = Some(c.values().to_vec());
        self
    }

    /// Independent re-verification: recomputes the cocycle and its hash;
    /// a `LIFTS` certificate must carry a lift reducing to the
    /// representation that passes the full homomorphism check; an
    /// `OBSTRUCTED` one must reproduce an inconsistent system with the
    /// recorded rank profile.
    pub fn recheck(&self) -> Result<(), String> {
        let rep = Representation::<Fq>::from_json(self.rep.clone()).map_err(|e| e.to_string())?;
        if *rep.group().as_ref() != self.group {
            return Err("certificate group differs from the representation's group".into());
        }
        if self.kernel_identification != KERNEL_IDENTIFICATION {
            return Err(format!("unknown kernel identification {}", self.kernel_identification));
        }
        let c = obstruction_class(&rep).map_err(|e| e.to_string())?;
        if c.hash() != self.cocycle_hash {
            return Err("cocycle hash mismatch".into());
        }
        match self.verdict {
            Verdict::Lifts => {
                let lift_json = self.lift.clone().ok_or("LIFTS certificate without a lift")?;
                let lift =
                    Representation::<Witt2>::from_json(lift_json).map_err(|e| format!("lift invalid: {e}"))?;
                if lift.group() != rep.group() {
                    return Err("lift is for a different group".into());
                }
                let witt = lift.ring().clone();
                for (a, b) in lift.generator_images().iter().zip(rep.generator_images()) {
                    if a.map(|x| witt.reduce(x)) != *b {
                        return Err("lift does not reduce to the representation".into());
                    }
                }
                Ok(())
            }
            Verdict::Obstructed => {
                if self.lift.is_some() {
                    return Err("OBSTRUCTED certificate carries a lift".into());
                }
                let sol = is_coboundary(&c);
                if sol.rank_data != self.rank_data {
                    return Err(format!("rank data {:?} != recorded {:?}", sol.rank_data, self.rank_data));
                }
                if sol.rank_data.consistent() || sol.cochain.is_some() {
                    return Err("coboundary system is consistent".into());
                }
                if let Some(stamp) = &self.exhaustive {
                    if stamp.solutions != 0 {
                        return Err("exhaustive stamp records solutions".into());
                    }
                }
                Ok(())
            }
        }
    }
}

/// Obstruction of a representation restricted to a subgroup, for comparing
/// with the restriction of the obstruction class.
pub fn restricted_obstruction(
    rep: &Representation<Fq>,
    h: &crate::groups::Subgroup,
) -> Result<TwoCocycle, GroupError> {
    let (res, _) = rep.restrict(h);
    obstruction_class(&res)
}
