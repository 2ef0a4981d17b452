//! Exact linear algebra over `F_p` for coboundary systems.

use serde::{Deserialize, Serialize};

/// Rank profile of a linear system `A x = b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankData {
    pub equations: usize,
    pub unknowns: usize,
    pub rank: usize,
    pub augmented_rank: usize,
}

impl RankData {
    pub fn consistent(&self) -> bool {
        self.rank == self.augmented_rank
    }

    /// Combines independent blocks of a block-triangular system.
    pub fn stack(self, other: RankData) -> RankData {
        RankData {
            equations: self.equations + other.equations,
            unknowns: self.unknowns.max(other.unknowns),
            rank: self.rank + other.rank,
            augmented_rank: self.augmented_rank + other.augmented_rank,
        }
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Sparse system over `F_p` solved by row-by-row elimination.
///
/// Each incoming row is reduced against existing pivot rows, always
/// eliminating its largest column first; if that column has no pivot the
/// row becomes its pivot row. Pivot rows therefore only contain columns
/// smaller than their pivot, so back-substitution runs in increasing column
/// order. Processing order and pivot choice are fully deterministic.
#[derive(Clone, Debug)]
pub struct SparseSystem {
    p: u32,
    ncols: usize,
    equations: usize,
    /// `pivots[c]` = reduced row (sorted entries, rhs) with largest column `c`.
    pivots: Vec<Option<(Vec<(u32, u32)>, u32)>>,
    rank: usize,
    inconsistent: bool,
}

impl SparseSystem {
    pub fn new(p: u32, ncols: usize) -> SparseSystem {
        SparseSystem { p, ncols, equations: 0, pivots: vec![None; ncols], rank: 0, inconsistent: false }
    }

    fn axpy(&self, row: &[(u32, u32)], f: u32, pivot: &[(u32, u32)]) -> Vec<(u32, u32)> {
        // row - f * pivot
        let p = self.p as u64;
        let mut out = Vec::with_capacity(row.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < row.len() || j < pivot.len() {
            let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
            let take_piv = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
            if take_row {
                out.push(row[i]);
                i += 1;
            } else if take_piv {
                let v = (p - (f as u64 * pivot[j].1 as u64) % p) % p;
                out.push((pivot[j].0, v as u32));
                j += 1;
            } else {
                let v = (row[i].1 as u64 + p - (f as u64 * pivot[j].1 as u64) % p) % p;
                if v != 0 {
                    out.push((row[i].0, v as u32));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Adds the equation `sum coeff * x_col = rhs`. Entries may repeat columns
    /// and need not be reduced.
    pub fn push(&mut self, entries: &[(usize, u32)], rhs: u32) {
        self.equations += 1;
        let p = self.p;
        let mut row: Vec<(u32, u32)> = Vec::with_capacity(entries.len());
        let mut sorted: Vec<(usize, u32)> = entries.iter().map(|&(c, v)| (c, v % p)).collect();
        sorted.sort_unstable_by_key(|e| e.0);
        for (c, v) in sorted {
            debug_assert!(c < self.ncols);
            match row.last_mut() {
                Some(last) if last.0 as usize == c => last.1 = (last.1 + v) % p,
                _ => row.push((c as u32, v)),
            }
        }
        row.retain(|e| e.1 != 0);
        let mut rhs = rhs % p;
        while let Some(&(c, v)) = row.last() {
            match &self.pivots[c as usize] {
                Some((prow, prhs)) => {
                    // pivot rows are normalised to leading coefficient 1
                    rhs = ((rhs as u64 + p as u64 - (v as u64 * *prhs as u64) % p as u64) % p as u64) as u32;
                    row = self.axpy(&row, v, prow);
                }
                None => {
                    let inv = inv_mod(v, p);
                    let row: Vec<(u32, u32)> =
                        row.iter().map(|&(c, x)| (c, ((x as u64 * inv as u64) % p as u64) as u32)).collect();
                    let rhs = ((rhs as u64 * inv as u64) % p as u64) as u32;
                    self.pivots[c as usize] = Some((row, rhs));
                    self.rank += 1;
                    return;
                }
            }
        }
        if rhs != 0 {
            self.inconsistent = true;
        }
    }

    pub fn rank_data(&self) -> RankData {
        RankData {
            equations: self.equations,
            unknowns: self.ncols,
            rank: self.rank,
            augmented_rank: self.rank + usize::from(self.inconsistent),
        }
    }

    /// A solution with all free variables zero, if the system is consistent.
    pub fn solve(&self) -> Option<Vec<u32>> {
        if self.inconsistent {
            return None;
        }
        let p = self.p as u64;
        let mut x = vec![0u32; self.ncols];
        for c in 0..self.ncols {
            if let Some((row, rhs)) = &self.pivots[c] {
                let mut acc = *rhs as u64;
                for &(col, v) in row.iter().filter(|e| e.0 as usize != c) {
                    acc = (acc + p - (v as u64 * x[col as usize] as u64) % p) % p;
                }
                x[c] = acc as u32;
            }
        }
        Some(x)
    }
}

/// Dense system over `F_p` with partial pivoting in column order.
#[derive(Clone, Debug)]
pub struct DenseSystem {
    p: u32,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    rhs: Vec<u32>,
}

impl DenseSystem {
    pub fn new(p: u32, ncols: usize) -> DenseSystem {
        DenseSystem { p, ncols, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<u32>, rhs: u32) {
        debug_assert_eq!(row.len(), self.ncols);
        self.rows.push(row);
        self.rhs.push(rhs % self.p);
    }

    /// Gauss-Jordan elimination; returns the rank data and, when consistent,
    /// the solution with free variables zero.
    pub fn solve(mut self) -> (RankData, Option<Vec<u32>>) {
        let p = self.p as u64;
        let equations = self.rows.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(sel) = (r..self.rows.len()).find(|&i| self.rows[i][c] != 0) else { continue };
            self.rows.swap(r, sel);
            self.rhs.swap(r, sel);
            let inv = inv_mod(self.rows[r][c], self.p) as u64;
            for x in self.rows[r].iter_mut() {
                *x = (*x as u64 * inv % p) as u32;
            }
            self.rhs[r] = (self.rhs[r] as u64 * inv % p) as u32;
            let prow = std::mem::take(&mut self.rows[r]);
            let prhs = self.rhs[r];
            for i in 0..self.rows.len() {
                if i == r {
                    continue;
                }
                let f = self.rows[i][c] as u64;
                if f == 0 {
                    continue;
                }
                let row = &mut self.rows[i];
                for (x, &y) in row.iter_mut().zip(&prow).skip(c) {
                    if y != 0 {
                        *x = ((*x as u64 + p - f * y as u64 % p) % p) as u32;
                    }
                }
                self.rhs[i] = ((self.rhs[i] as u64 + p - f * prhs as u64 % p) % p) as u32;
            }
            self.rows[r] = prow;
            pivots.push(c);
            r += 1;
        }
        let inconsistent = self.rhs[r..].iter().any(|&v| v != 0);
        let data = RankData {
            equations,
            unknowns: self.ncols,
            rank: r,
            augmented_rank: r + usize::from(inconsistent),
        };
        if inconsistent {
            return (data, None);
        }
        let mut x = vec![0u32; self.ncols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = self.rhs[i];
        }
        (data, Some(x))
    }
}

/// Rank of a dense matrix over `F_p`.
pub fn dense_rank(p: u32, rows: Vec<Vec<u32>>, ncols: usize) -> usize {
    let mut sys = DenseSystem::new(p, ncols);
    for r in rows {
        sys.push(r, 0);
    }
    sys.solve().0.rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_consistent_and_inconsistent() {
        let mut s = SparseSystem::new(5, 3);
        s.push(&[(0, 1), (1, 1)], 2);
        s.push(&[(1, 1), (2, 1)], 3);
        s.push(&[(0, 1), (2, 4)], 4); // = first - second (mod 5)
        assert_eq!(s.rank_data().rank, 2);
        let x = s.solve().unwrap();
        assert_eq!((x[0] + x[1]) % 5, 2);
        assert_eq!((x[1] + x[2]) % 5, 3);
        s.push(&[(0, 1), (2, 4)], 0);
        assert!(!s.rank_data().consistent());
        assert!(s.solve().is_none());
    }

    proptest! {
        #[test]
        fn sparse_and_dense_agree(
            p in prop::sample::select(vec![2u32, 3, 5, 7]),
            rows in prop::collection::vec((prop::collection::vec(0u32..7, 6), 0u32..7), 1..12),
        ) {
            let mut sparse = SparseSystem::new(p, 6);
            let mut dense = DenseSystem::new(p, 6);
            for (r, b) in &rows {
                let entries: Vec<(usize, u32)> = r.iter().enumerate().map(|(c, &v)| (c, v)).collect();
                sparse.push(&entries, *b);
                dense.push(r.iter().map(|v| v % p).collect(), *b);
            }
            let (data, sol) = dense.solve();
            prop_assert_eq!(sparse.rank_data().rank, data.rank);
            prop_assert_eq!(sparse.rank_data().augmented_rank, data.augmented_rank);
            for x in [sol, sparse.solve()].into_iter().flatten() {
                for (r, b) in &rows {
                    let lhs: u64 = r.iter().zip(&x).map(|(&a, &v)| a as u64 * v as u64).sum();
                    prop_assert_eq!(lhs % p as u64, (*b % p) as u64);
                }
            }
        }
    }
}
