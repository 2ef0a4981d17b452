//! `H^1(L, mu_{p^k})` as `(Z/p^k)^d` with a block-hyperbolic alternating
//! pairing into `H^2 = Z/p^k`, for `k = 1, 2`.

use serde::{Deserialize, Serialize};

use crate::algebra::is_prime;
use crate::error::LocalError;

/// Local field containing `mu_{p^s}`, `s >= 2`, with `H^1(L, mu_p)` of rank
/// `d`. The coordinates are model coordinates, not an arithmetic basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalModel {
    pub p: u32,
    pub d: usize,
    pub s: u32,
}

impl LocalModel {
    pub fn new(p: u32, d: usize, s: u32) -> Result<LocalModel, LocalError> {
        if !is_prime(p) || p == 2 {
            return Err(LocalError::InvalidModel(format!("p = {p} must be an odd prime")));
        }
        if d < 2 || d % 2 == 1 {
            return Err(LocalError::InvalidModel(format!("rank d = {d} must be even and >= 2")));
        }
        if s < 2 {
            return Err(LocalError::InvalidModel(format!("s = {s}: the model needs mu_(p^2) in L")));
        }
        Ok(LocalModel { p, d, s })
    }

    pub fn modulus(&self, level: u32) -> u32 {
        self.p.pow(level)
    }

    /// Gram entry `J[a][b]`: `1` at `(2i, 2i+1)`, `-1` at `(2i+1, 2i)`.
    pub fn gram(&self, a: usize, b: usize) -> i64 {
        match (a % 2, b as i64 - a as i64) {
            (0, 1) => 1,
            (1, -1) => -1,
            _ => 0,
        }
    }

    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.d).map(|a| (0..self.d).map(|b| self.gram(a, b)).collect()).collect()
    }

    pub fn class(&self, level: u32, coords: &[i64]) -> Result<KummerClass, LocalError> {
        if !(1..=2).contains(&level) {
            return Err(LocalError::InvalidModel(format!("level {level} is not 1 or 2")));
        }
        if coords.len() != self.d {
            return Err(LocalError::InvalidModel(format!("{} coordinates for rank {}", coords.len(), self.d)));
        }
        let q = self.modulus(level) as i64;
        let coords = coords.iter().map(|&c| c.rem_euclid(q) as u32).collect();
        Ok(KummerClass { model: *self, level, coords })
    }

    pub fn zero(&self, level: u32) -> KummerClass {
        KummerClass { model: *self, level, coords: vec![0; self.d] }
    }

    /// The basis vector `e_j` (0-based).
    pub fn basis(&self, level: u32, j: usize) -> KummerClass {
        let mut c = self.zero(level);
        c.coords[j] = 1;
        c
    }

    /// Every class at `level`, in lexicographic coordinate order.
    pub fn all_classes(&self, level: u32) -> Vec<KummerClass> {
        let q = self.modulus(level) as u64;
        (0..q.pow(self.d as u32))
            .map(|mut idx| {
                let coords = (0..self.d)
                    .map(|_| {
                        let c = (idx % q) as u32;
                        idx /= q;
                        c
                    })
                    .collect();
                KummerClass { model: *self, level, coords }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KummerClass {
    pub model: LocalModel,
    pub level: u32,
    pub coords: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct H2Class {
    pub model: LocalModel,
    pub level: u32,
    pub value: u32,
}

fn same_space(x: &KummerClass, y: &KummerClass) -> Result<(), LocalError> {
    if x.model != y.model {
        return Err(LocalError::ModelMismatch);
    }
    if x.level != y.level {
        return Err(LocalError::LevelMismatch(x.level, y.level));
    }
    Ok(())
}

impl KummerClass {
    fn q(&self) -> i64 {
        self.model.modulus(self.level) as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &KummerClass) -> Result<KummerClass, LocalError> {
        same_space(self, other)?;
        let q = self.q();
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| ((a as i64 + b as i64) % q) as u32).collect();
        Ok(KummerClass { coords, ..self.clone() })
    }

    pub fn scale(&self, c: i64) -> KummerClass {
        let q = self.q();
        let coords = self.coords.iter().map(|&a| (a as i64 * c).rem_euclid(q) as u32).collect();
        KummerClass { coords, ..self.clone() }
    }

    pub fn sub(&self, other: &KummerClass) -> Result<KummerClass, LocalError> {
        self.add(&other.scale(-1))
    }

    /// Reduction `pi` from level 2 to level 1; the identity at level 1.
    pub fn pi(&self) -> KummerClass {
        let p = self.model.p;
        KummerClass { model: self.model, level: 1, coords: self.coords.iter().map(|&c| c % p).collect() }
    }

    /// `i`: multiplication by `p` from level 1 into level 2.
    pub fn i(&self) -> Result<KummerClass, LocalError> {
        if self.level != 1 {
            return Err(LocalError::LevelMismatch(self.level, 1));
        }
        let p = self.model.p;
        Ok(KummerClass { model: self.model, level: 2, coords: self.coords.iter().map(|&c| c * p).collect() })
    }

    /// The level-2 class with the same digits.
    pub fn digit_lift(&self) -> KummerClass {
        KummerClass { model: self.model, level: 2, coords: self.coords.clone() }
    }
}

impl H2Class {
    pub fn pi(&self) -> H2Class {
        H2Class { level: 1, value: self.value % self.model.p, ..*self }
    }

    pub fn i(&self) -> Result<H2Class, LocalError> {
        if self.level != 1 {
            return Err(LocalError::LevelMismatch(self.level, 1));
        }
        Ok(H2Class { level: 2, value: self.value * self.model.p, ..*self })
    }
}

/// `x^T J y mod p^k`.
pub fn cup(x: &KummerClass, y: &KummerClass) -> Result<H2Class, LocalError> {
    same_space(x, y)?;
    let m = &x.model;
    let q = x.q();
    let mut acc = 0i64;
    for a in 0..m.d {
        let b = a ^ 1;
        acc += m.gram(a, b) * x.coords[a] as i64 * y.coords[b] as i64;
    }
    Ok(H2Class { model: *m, level: x.level, value: acc.rem_euclid(q) as u32 })
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| (a as u64 * b as u64) % p as u64 == 1).expect("nonzero residue mod a prime")
}

/// Some level-1 `z` with `x cup z = t`, for `x != 0`: a multiple of the
/// first basis vector that pairs nontrivially with `x`.
fn solve_pairing(x: &KummerClass, t: u32) -> KummerClass {
    let m = x.model;
    let p = m.p as i64;
    let j = (0..m.d).find(|&b| x.coords[b ^ 1] != 0).expect("x is nonzero");
    let coeff = (m.gram(j ^ 1, j) * x.coords[j ^ 1] as i64).rem_euclid(p) as u32;
    let mut z = m.zero(1);
    z.coords[j] = (t as u64 * inv_mod_p(coeff, m.p) as u64 % m.p as u64) as u32;
    z
}

/// Classes `z1, z2` at level 1 with
/// `i(pi(y1) cup z1 + pi(y2) cup z2) = y1 cup y2`. Prefers `z2 = 0`; when
/// `pi(y1) = 0` uses `z1 = 0` and solves on `pi(y2)`.
pub fn solve_property_d(y1: &KummerClass, y2: &KummerClass) -> Result<(KummerClass, KummerClass), LocalError> {
    same_space(y1, y2)?;
    if y1.level != 2 {
        return Err(LocalError::LevelMismatch(y1.level, 2));
    }
    let (x1, x2) = (y1.pi(), y2.pi());
    let low = cup(&x1, &x2)?.value;
    if low != 0 {
        return Err(LocalError::PreconditionViolated(format!("pi(y1) cup pi(y2) = {low}, not 0")));
    }
    if x1.is_zero() && x2.is_zero() {
        return Err(LocalError::PreconditionViolated("pi(y1) and pi(y2) are both zero".into()));
    }
    // y1 cup y2 lies in ker pi = i(H^2 at level 1)
    let t = cup(y1, y2)?.value / y1.model.p;
    let m = y1.model;
    if !x1.is_zero() {
        Ok((solve_pairing(&x1, t), m.zero(1)))
    } else {
        Ok((m.zero(1), solve_pairing(&x2, t)))
    }
}

/// Lifts of an orthogonal level-1 pair to an orthogonal level-2 pair:
/// `x1~ = y1 + i(z2)`, `x2~ = y2 - i(z1)` from the digit lifts `y_i` and a
/// solution of [`solve_property_d`].
pub fn lift_orthogonal_pair(x1: &KummerClass, x2: &KummerClass) -> Result<(KummerClass, KummerClass), LocalError> {
    same_space(x1, x2)?;
    if x1.level != 1 {
        return Err(LocalError::LevelMismatch(x1.level, 1));
    }
    let c = cup(x1, x2)?.value;
    if c != 0 {
        return Err(LocalError::NotOrthogonal(c));
    }
    let (y1, y2) = (x1.digit_lift(), x2.digit_lift());
    if x1.is_zero() && x2.is_zero() {
        return Ok((y1, y2));
    }
    let (z1, z2) = solve_property_d(&y1, &y2)?;
    let t1 = y1.add(&z2.i()?)?;
    let t2 = y2.sub(&z1.i()?)?;
    debug_assert_eq!(cup(&t1, &t2)?.value, 0);
    Ok((t1, t2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m() -> LocalModel {
        LocalModel::new(3, 4, 2).unwrap()
    }

    #[test]
    fn cup_examples() {
        let m = m();
        assert_eq!(cup(&m.basis(1, 0), &m.basis(1, 1)).unwrap().value, 1);
        assert_eq!(cup(&m.basis(1, 1), &m.basis(1, 0)).unwrap().value, 2);
        let x = m.class(2, &[1, 0, 0, 0]).unwrap();
        let y = m.class(2, &[0, 3, 0, 1]).unwrap();
        assert_eq!(cup(&x, &y).unwrap().value, 3);
        assert_eq!(cup(&x, &x).unwrap().value, 0);
        assert!(matches!(cup(&x, &m.basis(1, 0)), Err(LocalError::LevelMismatch(2, 1))));
    }

    #[test]
    fn bockstein_maps() {
        let m = m();
        let t = H2Class { model: m, level: 1, value: 1 };
        assert_eq!(t.i().unwrap().value, 3);
        assert_eq!(t.i().unwrap().pi().value, 0);
        let x = m.class(2, &[4, 8, 0, 1]).unwrap();
        assert_eq!(x.pi().i().unwrap(), x.scale(3));
    }

    #[test]
    fn property_d_examples() {
        let m = m();
        let (z1, z2) = solve_property_d(&m.basis(2, 0), &m.basis(2, 2)).unwrap();
        assert!(z1.is_zero() && z2.is_zero());
        let y1 = m.class(2, &[1, 0, 0, 0]).unwrap();
        let y2 = m.class(2, &[0, 3, 0, 1]).unwrap();
        let (z1, z2) = solve_property_d(&y1, &y2).unwrap();
        assert_eq!(z1.coords, vec![0, 1, 0, 0]);
        assert!(z2.is_zero());
        let both_zero = solve_property_d(&m.class(2, &[3, 0, 0, 0]).unwrap(), &m.class(2, &[0, 3, 0, 0]).unwrap());
        assert!(matches!(both_zero, Err(LocalError::PreconditionViolated(_))));
    }

    #[test]
    fn orthogonal_pair_examples() {
        let m = m();
        let (a, b) = lift_orthogonal_pair(&m.zero(1), &m.zero(1)).unwrap();
        assert!(a.is_zero() && b.is_zero() && a.level == 2);
        let (a, b) = lift_orthogonal_pair(&m.basis(1, 0), &m.basis(1, 3)).unwrap();
        assert_eq!(cup(&a, &b).unwrap().value, 0);
        assert_eq!((a.pi(), b.pi()), (m.basis(1, 0), m.basis(1, 3)));
        assert!(matches!(lift_orthogonal_pair(&m.basis(1, 0), &m.basis(1, 1)), Err(LocalError::NotOrthogonal(1))));
    }

    #[test]
    fn invalid_models() {
        assert!(LocalModel::new(2, 4, 2).is_err());
        assert!(LocalModel::new(3, 3, 2).is_err());
        assert!(LocalModel::new(3, 4, 1).is_err());
    }
}
