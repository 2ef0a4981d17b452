use std::fmt;

use serde::{Deserialize, Serialize};

use super::Ring;
use crate::error::AlgebraError;

/// Square matrix stored row-major; entries are interpreted by a ring descriptor.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<E> {
    pub n: usize,
    pub data: Vec<E>,
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[i * self.n + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<E: Copy> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Matrix<E>, AlgebraError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::Dimension("rows must form a non-empty square".into()));
        }
        Ok(Matrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> E) -> Matrix<E> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> E {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn map<F: Copy>(&self, f: impl Fn(E) -> F) -> Matrix<F> {
        Matrix { n: self.n, data: self.data.iter().map(|&x| f(x)).collect() }
    }
}

/// Matrix arithmetic over any [`Ring`]; implemented for every ring.
pub trait MatrixOps: Ring {
    fn mat_zero(&self, n: usize) -> Matrix<Self::Elem> {
        Matrix { n, data: vec![self.zero(); n * n] }
    }

    fn mat_identity(&self, n: usize) -> Matrix<Self::Elem> {
        Matrix::from_fn(n, |i, j| if i == j { self.one() } else { self.zero() })
    }

    fn mat_add(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        debug_assert_eq!(a.n, b.n);
        Matrix { n: a.n, data: a.data.iter().zip(&b.data).map(|(&x, &y)| self.add(x, y)).collect() }
    }

    fn mat_sub(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        debug_assert_eq!(a.n, b.n);
        Matrix { n: a.n, data: a.data.iter().zip(&b.data).map(|(&x, &y)| self.sub(x, y)).collect() }
    }

    fn mat_neg(&self, a: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        a.map(|x| self.neg(x))
    }

    fn mat_scale(&self, c: Self::Elem, a: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        a.map(|x| self.mul(c, x))
    }

    fn mat_mul(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        debug_assert_eq!(a.n, b.n);
        let n = a.n;
        let zero = self.zero();
        let mut out = vec![zero; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a.data[i * n + k];
                if x == zero {
                    continue;
                }
                for j in 0..n {
                    let y = b.data[k * n + j];
                    if y != zero {
                        out[i * n + j] = self.add(out[i * n + j], self.mul(x, y));
                    }
                }
            }
        }
        Matrix { n, data: out }
    }

    fn mat_pow(&self, a: &Matrix<Self::Elem>, mut e: u64) -> Matrix<Self::Elem> {
        let mut acc = self.mat_identity(a.n);
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mat_mul(&base, &base);
            }
        }
        acc
    }

    fn mat_is_identity(&self, a: &Matrix<Self::Elem>) -> bool {
        let (zero, one) = (self.zero(), self.one());
        (0..a.n).all(|i| (0..a.n).all(|j| a.get(i, j) == if i == j { one } else { zero }))
    }

    /// Inverse by Gauss-Jordan elimination with unit pivots. Over the local
    /// rings used here a matrix is invertible exactly when every column step
    /// finds a unit.
    fn mat_inverse(&self, a: &Matrix<Self::Elem>) -> Result<Matrix<Self::Elem>, AlgebraError> {
        let n = a.n;
        let mut m = a.clone();
        let mut inv = self.mat_identity(n);
        for col in 0..n {
            let (row, pinv) = (col..n)
                .find_map(|r| self.inv(m.get(r, col)).map(|u| (r, u)))
                .ok_or(AlgebraError::NotInvertible)?;
            if row != col {
                for j in 0..n {
                    m.data.swap(row * n + j, col * n + j);
                    inv.data.swap(row * n + j, col * n + j);
                }
            }
            for j in 0..n {
                m.set(col, j, self.mul(pinv, m.get(col, j)));
                inv.set(col, j, self.mul(pinv, inv.get(col, j)));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = m.get(r, col);
                if f == self.zero() {
                    continue;
                }
                for j in 0..n {
                    m.set(r, j, self.sub(m.get(r, j), self.mul(f, m.get(col, j))));
                    inv.set(r, j, self.sub(inv.get(r, j), self.mul(f, inv.get(col, j))));
                }
            }
        }
        Ok(inv)
    }

    /// Commutator `a b a^-1 b^-1`.
    fn mat_commutator(
        &self,
        a: &Matrix<Self::Elem>,
        b: &Matrix<Self::Elem>,
    ) -> Result<Matrix<Self::Elem>, AlgebraError> {
        let ai = self.mat_inverse(a)?;
        let bi = self.mat_inverse(b)?;
        Ok(self.mat_mul(&self.mat_mul(a, b), &self.mat_mul(&ai, &bi)))
    }

    /// Least `e <= bound` with `a^e = I`.
    fn matrix_order(&self, a: &Matrix<Self::Elem>, bound: u64) -> Result<u64, AlgebraError> {
        self.mat_inverse(a)?;
        let mut cur = a.clone();
        for e in 1..=bound {
            if self.mat_is_identity(&cur) {
                return Ok(e);
            }
            cur = self.mat_mul(&cur, a);
        }
        Err(AlgebraError::NoOrderWithinBound(bound))
    }

    /// Rank over a field (Gaussian elimination; every nonzero entry is a unit).
    fn mat_rank(&self, a: &Matrix<Self::Elem>) -> usize {
        let n = a.n;
        let mut m = a.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some((row, pinv)) =
                (rank..n).find_map(|r| self.inv(m.get(r, col)).map(|u| (r, u)))
            else {
                continue;
            };
            for j in 0..n {
                m.data.swap(row * n + j, rank * n + j);
            }
            for r in 0..n {
                if r == rank {
                    continue;
                }
                let f = self.mul(m.get(r, col), pinv);
                if f == self.zero() {
                    continue;
                }
                for j in 0..n {
                    m.set(r, j, self.sub(m.get(r, j), self.mul(f, m.get(rank, j))));
                }
            }
            rank += 1;
        }
        rank
    }
}

impl<R: Ring> MatrixOps for R {}

/// Basis of the right nullspace `{x : A x = 0}` of a dense matrix over a field
/// given as rows of length `ncols`.
pub fn nullspace<R: Ring>(ring: &R, rows: &[Vec<R::Elem>], ncols: usize) -> Vec<Vec<R::Elem>> {
    let mut m: Vec<Vec<R::Elem>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some((row, pinv)) = (r..m.len()).find_map(|i| ring.inv(m[i][col]).map(|u| (i, u))) else {
            continue;
        };
        m.swap(r, row);
        for x in m[r].iter_mut() {
            *x = ring.mul(*x, pinv);
        }
        let prow = m[r].clone();
        for (i, other) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = other[col];
            if ring.is_zero(f) {
                continue;
            }
            for (x, &y) in other.iter_mut().zip(&prow) {
                *x = ring.sub(*x, ring.mul(f, y));
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![ring.zero(); ncols];
            v[fc] = ring.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = ring.neg(m[i][fc]);
            }
            v
        })
        .collect()
}
