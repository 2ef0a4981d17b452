//! Finite `F_p[G]`-modules given by action matrices.

use std::sync::Arc;

use rayon::prelude::*;

use super::linalg::dense_rank;
use crate::algebra::{Fq, FqElem, Matrix, MatrixOps, Ring};
use crate::groups::{FiniteGroup, Representation};

/// A `G`-module that is a finite-dimensional `F_p`-vector space, stored as
/// one dense `D x D` action matrix per group element.
///
/// Modules over `k = F_{p^m}` are handled by restriction of scalars; the
/// field degree is remembered so dimensions can be reported over `k`.
#[derive(Clone, Debug)]
pub struct FpModule {
    group: Arc<FiniteGroup>,
    p: u32,
    field_degree: u32,
    dim: usize,
    /// `action[g][i * dim + j]`: coefficient of `e_i` in `g . e_j`.
    action: Vec<Vec<u32>>,
    label: String,
}

/// Coordinates of a matrix over `k` in the `F_p`-basis `x^l E_ij`, index
/// `(i n + j) m + l`.
pub fn matrix_coords(field: &Fq, a: &Matrix<FqElem>) -> Vec<u32> {
    a.data.iter().flat_map(|&x| field.coords(x)).collect()
}

pub fn matrix_from_coords(field: &Fq, n: usize, v: &[u32]) -> Matrix<FqElem> {
    let m = field.degree() as usize;
    let data = v
        .chunks(m)
        .map(|c| field.from_coords(c).expect("coordinates are reduced"))
        .collect::<Vec<_>>();
    debug_assert_eq!(data.len(), n * n);
    Matrix { n, data }
}

impl FpModule {
    /// Module from explicit action matrices, one per group element. The
    /// action property is verified.
    pub fn from_action(
        group: Arc<FiniteGroup>,
        p: u32,
        field_degree: u32,
        dim: usize,
        action: Vec<Vec<u32>>,
        label: impl Into<String>,
    ) -> Result<FpModule, String> {
        let m = FpModule { group, p, field_degree, dim, action, label: label.into() };
        m.verify_action()?;
        Ok(m)
    }

    /// The adjoint module `M_n(k)` with `g . X = f(g) X f(g)^-1`.
    pub fn adjoint(rep: &Representation<Fq>) -> FpModule {
        let f = rep.field();
        let (n, m) = (rep.dim(), f.degree() as usize);
        let dim = n * n * m;
        let g = rep.group();
        let action = (0..g.order())
            .into_par_iter()
            .map(|x| {
                let a = rep.image(x);
                let ainv = f.mat_inverse(a).expect("representation images are invertible");
                let mut out = vec![0u32; dim * dim];
                for i in 0..n {
                    for j in 0..n {
                        for l in 0..m {
                            let c = f.basis(l as u32);
                            // a (c E_ij) a^-1 = c * column i of a times row j of a^-1
                            let col = (i * n + j) * m + l;
                            for r in 0..n {
                                let ar = f.mul(c, a.get(r, i));
                                if ar == f.zero() {
                                    continue;
                                }
                                for s in 0..n {
                                    let v = f.mul(ar, ainv.get(j, s));
                                    for (t, &cv) in f.coords(v).iter().enumerate() {
                                        out[((r * n + s) * m + t) * dim + col] = cv;
                                    }
                                }
                            }
                        }
                    }
                }
                out
            })
            .collect();
        FpModule {
            group: g.clone(),
            p: f.characteristic(),
            field_degree: m as u32,
            dim,
            action,
            label: format!("Ad({}-dim over F_{})", n, f.order()),
        }
    }

    /// The representation space `k^n` itself, over `F_p`.
    pub fn from_rep(rep: &Representation<Fq>) -> FpModule {
        let f = rep.field();
        let (n, m) = (rep.dim(), f.degree() as usize);
        let dim = n * m;
        let g = rep.group();
        let action = (0..g.order())
            .map(|x| {
                let a = rep.image(x);
                let mut out = vec![0u32; dim * dim];
                for j in 0..n {
                    for l in 0..m {
                        let c = f.basis(l as u32);
                        for r in 0..n {
                            let v = f.mul(a.get(r, j), c);
                            for (t, &cv) in f.coords(v).iter().enumerate() {
                                out[(r * m + t) * dim + j * m + l] = cv;
                            }
                        }
                    }
                }
                out
            })
            .collect();
        FpModule {
            group: g.clone(),
            p: f.characteristic(),
            field_degree: m as u32,
            dim,
            action,
            label: format!("{}-dim over F_{}", n, f.order()),
        }
    }

    /// Trivial module `k`, `k = F_{p^m}`.
    pub fn trivial(group: Arc<FiniteGroup>, p: u32, field_degree: u32) -> FpModule {
        let dim = field_degree as usize;
        let id: Vec<u32> = (0..dim * dim).map(|i| u32::from(i / dim == i % dim)).collect();
        let action = vec![id; group.order()];
        FpModule { group, p, field_degree, dim, action, label: "trivial".into() }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn field_degree(&self) -> u32 {
        self.field_degree
    }

    /// Dimension over `F_p`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn action_matrix(&self, g: usize) -> &[u32] {
        &self.action[g]
    }

    pub fn act(&self, g: usize, v: &[u32]) -> Vec<u32> {
        let (d, p) = (self.dim, self.p as u64);
        let a = &self.action[g];
        (0..d)
            .map(|i| {
                let row = &a[i * d..(i + 1) * d];
                (row.iter().zip(v).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>() % p) as u32
            })
            .collect()
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.dim]
    }

    fn verify_action(&self) -> Result<(), String> {
        let g = &self.group;
        if self.action.len() != g.order() || self.action.iter().any(|a| a.len() != self.dim * self.dim) {
            return Err("one dim x dim action matrix per element required".into());
        }
        if self.action.iter().flatten().any(|&x| x >= self.p) {
            return Err("action entries must be reduced mod p".into());
        }
        let id = g.identity();
        let d = self.dim;
        for j in 0..d {
            let e: Vec<u32> = (0..d).map(|i| u32::from(i == j)).collect();
            if self.act(id, &e) != e {
                return Err("identity does not act trivially".into());
            }
        }
        for x in 0..g.order() {
            for &s in g.generators() {
                for j in 0..d {
                    let e: Vec<u32> = (0..d).map(|i| u32::from(i == j)).collect();
                    if self.act(x, &self.act(s, &e)) != self.act(g.mul(x, s), &e) {
                        return Err(format!("action fails on ({x}, {s})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `dim_{F_p} V^G`, computed from the generators.
    pub fn invariants_dim(&self) -> usize {
        let d = self.dim;
        let mut rows = Vec::new();
        for &s in self.group.generators() {
            let a = &self.action[s];
            for i in 0..d {
                rows.push(
                    (0..d)
                        .map(|j| (a[i * d + j] + self.p - u32::from(i == j)) % self.p)
                        .collect(),
                );
            }
        }
        d - dense_rank(self.p, rows, d)
    }

    /// The restriction to `H`, as a module over
    /// [`FiniteGroup::subgroup_as_group`].
    pub fn restrict(&self, h: &crate::groups::Subgroup) -> FpModule {
        let (hg, emb) = self.group.subgroup_as_group(h);
        let action = emb.iter().map(|&x| self.action[x].clone()).collect();
        FpModule {
            group: Arc::new(hg),
            p: self.p,
            field_degree: self.field_degree,
            dim: self.dim,
            action,
            label: format!("{} restricted", self.label),
        }
    }
}
