//! A local field of residue characteristic `l != p` with residue field
//! `F_q`, containing `mu_p` but not `mu_{p^2}`. Then
//! `H^1(L, mu_p) = L^x / p = F_p^2`, spanned by a uniformizer and a unit.

use serde::{Deserialize, Serialize};

use crate::algebra::{is_prime, Fq, FqElem, Ring};
use crate::error::LocalError;

/// Generator of `H^2(L, mu_p)` fixed by [`tame_d_map`]; any nonzero
/// choice gives an isomorphic picture.
pub const TAME_D_NORMALIZATION: u32 = 1;

#[derive(Clone, Debug)]
pub struct TameModel {
    p: u32,
    q: u32,
    residue: Fq,
}

/// `pi^valuation * [g]^unit_index`, `g` the fixed generator of `F_q^x`
/// and `[g]` its Teichmüller lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TameElement {
    pub valuation: i64,
    pub unit_index: i64,
}

/// A class in `H^1(L, mu_p)`: `(uniformizer coordinate, unit coordinate)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TameClass {
    pub pi_coord: u32,
    pub unit_coord: u32,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let l = (2..=q).find(|&d| q % d == 0)?;
    let mut m = 0;
    let mut r = q;
    while r % l == 0 {
        r /= l;
        m += 1;
    }
    (r == 1).then_some((l, m))
}

impl TameModel {
    pub fn new(p: u32, q: u32) -> Result<TameModel, LocalError> {
        if !is_prime(p) || p == 2 {
            return Err(LocalError::InvalidModel(format!("p = {p} must be an odd prime")));
        }
        let Some((l, m)) = prime_power(q) else {
            return Err(LocalError::InvalidModel(format!("q = {q} is not a prime power")));
        };
        if l == p {
            return Err(LocalError::InvalidModel("residue characteristic must differ from p".into()));
        }
        if (q - 1) % p != 0 || (q - 1) % (p * p) == 0 {
            return Err(LocalError::InvalidModel(format!("need p | q - 1 and p^2 not dividing q - 1, got q = {q}")));
        }
        let residue = Fq::new(l, m).map_err(|e| LocalError::InvalidModel(e.to_string()))?;
        Ok(TameModel { p, q, residue })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn residue_field(&self) -> &Fq {
        &self.residue
    }

    /// Image in `L^x / p`.
    pub fn class_of(&self, a: TameElement) -> TameClass {
        let p = self.p as i64;
        TameClass { pi_coord: a.valuation.rem_euclid(p) as u32, unit_coord: a.unit_index.rem_euclid(p) as u32 }
    }

    /// Every element `pi^v [g]^u` with `0 <= v < p`, `0 <= u < q - 1`.
    pub fn elements(&self) -> Vec<TameElement> {
        (0..self.p as i64)
            .flat_map(|v| (0..self.q as i64 - 1).map(move |u| TameElement { valuation: v, unit_index: u }))
            .collect()
    }

    fn unit(&self, idx: i64) -> FqElem {
        self.residue.exp(idx.rem_euclid(self.q as i64 - 1) as u64)
    }

    fn int_pow(&self, x: FqElem, e: i64) -> FqElem {
        let f = &self.residue;
        let base = if e < 0 { f.inv(x).expect("units are invertible") } else { x };
        f.pow(base, e.unsigned_abs())
    }

    /// `-a` as a tame element: `-1 = [g]^{(q-1)/2}` for odd `q`, `1` in
    /// characteristic 2.
    pub fn negate(&self, a: TameElement) -> TameElement {
        let f = &self.residue;
        let minus_one = f.log(f.neg(f.one())).expect("-1 is a unit") as i64;
        TameElement { valuation: a.valuation, unit_index: a.unit_index + minus_one }
    }
}

/// The exponent `e` with
/// `((-1)^{v(a)v(b)} b^{v(a)} a^{-v(b)})^{(q-1)/p} = zeta^e`, computed in
/// `F_q`, `zeta = g^{(q-1)/p}`.
pub fn tame_symbol(model: &TameModel, a: TameElement, b: TameElement) -> u32 {
    let f = &model.residue;
    let (va, vb) = (a.valuation, b.valuation);
    let sign = if (va * vb).rem_euclid(2) == 1 { f.neg(f.one()) } else { f.one() };
    let w = f.mul(
        sign,
        f.mul(model.int_pow(model.unit(b.unit_index), va), model.int_pow(model.unit(a.unit_index), -vb)),
    );
    let k = (model.q as u64 - 1) / model.p as u64;
    let w = f.pow(w, k);
    let zeta = f.exp(k);
    let mut acc = f.one();
    for e in 0..model.p {
        if acc == w {
            return e;
        }
        acc = f.mul(acc, zeta);
    }
    unreachable!("a (q-1)/p-th power lies in mu_p")
}

/// The connecting map `d: H^1(L, mu_p) -> H^2(L, mu_p) = Z/p`, which is
/// `c` times the uniformizer coordinate with `c` = [`TAME_D_NORMALIZATION`].
pub fn tame_d_map(model: &TameModel, x: TameClass) -> u32 {
    (TAME_D_NORMALIZATION * x.pi_coord) % model.p
}
