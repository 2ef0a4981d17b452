use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FiniteRing, Fq, FqElem, FqValue, Ring, RingTag};
use crate::error::AlgebraError;

/// Largest prime for which the carry polynomial is tabulated.
pub const MAX_WITT_PRIME: u32 = 31;

/// Length-2 Witt vector `(a0, a1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct WittElem {
    pub a0: FqElem,
    pub a1: FqElem,
}

impl fmt::Debug for WittElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.a0, self.a1)
    }
}

/// The ring `W_2(k)` for a finite field `k` of characteristic `p <= 31`.
///
/// Addition uses the carry polynomial
/// `s1 = x1 + y1 - sum_{i=1}^{p-1} (C(p,i)/p) x0^i y0^{p-i}`, whose integer
/// coefficients are tabulated once per prime.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witt2 {
    field: Fq,
    carry: Vec<FqElem>,
}

fn binomial(n: u64, k: u64) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

impl Witt2 {
    pub fn new(field: Fq) -> Result<Witt2, AlgebraError> {
        let p = field.characteristic();
        if p > MAX_WITT_PRIME {
            return Err(AlgebraError::Unsupported(format!(
                "Witt carries tabulated for p <= {MAX_WITT_PRIME}, got {p}"
            )));
        }
        // carry[i] = C(p, i) / p mod p, for i = 0..p (ends are unused zeros)
        let carry = (0..=p as u64)
            .map(|i| {
                if i == 0 || i == p as u64 {
                    field.zero()
                } else {
                    let c = binomial(p as u64, i) / p as u128;
                    field.from_int((c % p as u128) as i64)
                }
            })
            .collect();
        Ok(Witt2 { field, carry })
    }

    pub fn over(p: u32, m: u32) -> Result<Witt2, AlgebraError> {
        Witt2::new(Fq::new(p, m)?)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    fn carry_sum(&self, x0: FqElem, y0: FqElem) -> FqElem {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let mut acc = f.zero();
        for i in 1..p {
            let c = self.carry[i];
            if c == f.zero() {
                continue;
            }
            let term = f.mul(f.pow(x0, i as u64), f.pow(y0, (p - i) as u64));
            acc = f.add(acc, f.mul(c, term));
        }
        acc
    }

    /// Teichmüller representative `[a] = (a, 0)`.
    pub fn teichmuller(&self, a: FqElem) -> WittElem {
        WittElem { a0: a, a1: self.field.zero() }
    }

    /// Verschiebung `V(b) = (0, b)`.
    pub fn verschiebung(&self, b: FqElem) -> WittElem {
        WittElem { a0: self.field.zero(), a1: b }
    }

    /// `p * [c] = (0, c^p)`: the element of `pW_2(k)` with Teichmüller digit `c`.
    pub fn p_times(&self, c: FqElem) -> WittElem {
        self.verschiebung(self.field.frobenius(c))
    }

    /// Teichmüller digit of an element of `pW_2(k)`, i.e. the `c` with
    /// `(0, b) = p * [c]`. This is the identification `pW_2(k) = k` used for
    /// obstruction cocycles.
    pub fn p_digit(&self, x: WittElem) -> Option<FqElem> {
        (x.a0 == self.field.zero()).then(|| self.field.frobenius_inv(x.a1))
    }

    /// Reduction `W_2(k) -> k`.
    pub fn reduce(&self, x: WittElem) -> FqElem {
        x.a0
    }

    pub fn value(&self, x: WittElem) -> WittValue {
        WittValue { a0: self.field.value(x.a0), a1: self.field.value(x.a1) }
    }

    /// `W_2(F_p) -> Z/p^2`, `(a0, a1) -> [a0] + p*a1` with `[a0] = a0^p mod p^2`.
    pub fn to_zmod(&self, x: WittElem) -> Option<u32> {
        if self.field.degree() != 1 {
            return None;
        }
        let p = self.characteristic() as u64;
        let n = p * p;
        let teich = pow_mod(x.a0.0 as u64, p, n);
        Some(((teich + p * x.a1.0 as u64) % n) as u32)
    }

    /// Inverse of [`Witt2::to_zmod`].
    pub fn from_zmod(&self, z: u32) -> Option<WittElem> {
        if self.field.degree() != 1 {
            return None;
        }
        let p = self.characteristic() as u64;
        let n = p * p;
        let z = z as u64 % n;
        let a0 = z % p;
        let teich = pow_mod(a0, p, n);
        let a1 = ((z + n - teich) % n) / p;
        Some(WittElem { a0: FqElem(a0 as u32), a1: FqElem(a1 as u32) })
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    acc
}

impl Ring for Witt2 {
    type Elem = WittElem;

    fn zero(&self) -> WittElem {
        WittElem { a0: self.field.zero(), a1: self.field.zero() }
    }
    fn one(&self) -> WittElem {
        WittElem { a0: self.field.one(), a1: self.field.zero() }
    }
    fn add(&self, x: WittElem, y: WittElem) -> WittElem {
        let f = &self.field;
        let s0 = f.add(x.a0, y.a0);
        let s1 = f.sub(f.add(x.a1, y.a1), self.carry_sum(x.a0, y.a0));
        WittElem { a0: s0, a1: s1 }
    }
    fn neg(&self, x: WittElem) -> WittElem {
        let f = &self.field;
        let y0 = f.neg(x.a0);
        // x + y = 0 forces y1 = carry(x0, y0) - x1
        let y1 = f.sub(self.carry_sum(x.a0, y0), x.a1);
        WittElem { a0: y0, a1: y1 }
    }
    fn mul(&self, x: WittElem, y: WittElem) -> WittElem {
        let f = &self.field;
        let p = f.characteristic() as u64;
        WittElem {
            a0: f.mul(x.a0, y.a0),
            a1: f.add(f.mul(f.pow(x.a0, p), y.a1), f.mul(x.a1, f.pow(y.a0, p))),
        }
    }
    fn inv(&self, x: WittElem) -> Option<WittElem> {
        let f = &self.field;
        let b0 = f.inv(x.a0)?;
        let p = f.characteristic() as u64;
        // x0^p b1 + x1 b0^p = 0
        let b1 = f.neg(f.mul(x.a1, f.pow(b0, 2 * p)));
        Some(WittElem { a0: b0, a1: b1 })
    }
    fn tag(&self) -> RingTag {
        RingTag::Witt { p: self.field.characteristic(), m: self.field.degree() }
    }
}

impl FiniteRing for Witt2 {
    fn elements(&self) -> Vec<WittElem> {
        let els = self.field.elements();
        els.iter()
            .flat_map(|&a0| els.iter().map(move |&a1| WittElem { a0, a1 }))
            .collect()
    }
}

/// A Witt vector with explicit field, serializing as `{"a0":…, "a1":…}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WittValue {
    pub a0: FqValue,
    pub a1: FqValue,
}

impl WittValue {
    pub fn new(a0: FqValue, a1: FqValue) -> Result<WittValue, AlgebraError> {
        check_same(&a0.field, &a1.field)?;
        Ok(WittValue { a0, a1 })
    }

    pub fn ring(&self) -> Result<Witt2, AlgebraError> {
        Witt2::new(self.a0.field.clone())
    }

    pub fn elem(&self) -> WittElem {
        WittElem { a0: self.a0.elem, a1: self.a1.elem }
    }
}

fn check_same(a: &Fq, b: &Fq) -> Result<(), AlgebraError> {
    if a != b {
        return Err(AlgebraError::FieldMismatch(a.describe(), b.describe()));
    }
    Ok(())
}

fn binary_op(
    x: &WittValue,
    y: &WittValue,
    op: impl Fn(&Witt2, WittElem, WittElem) -> WittElem,
) -> Result<WittValue, AlgebraError> {
    check_same(&x.a0.field, &x.a1.field)?;
    check_same(&x.a0.field, &y.a0.field)?;
    check_same(&y.a0.field, &y.a1.field)?;
    let ring = x.ring()?;
    Ok(ring.value(op(&ring, x.elem(), y.elem())))
}

/// Witt vector sum; errors when the operands live over different fields.
pub fn witt_add(x: &WittValue, y: &WittValue) -> Result<WittValue, AlgebraError> {
    binary_op(x, y, |r, a, b| r.add(a, b))
}

/// Witt vector product `(x0 y0, x0^p y1 + x1 y0^p)`.
pub fn witt_mul(x: &WittValue, y: &WittValue) -> Result<WittValue, AlgebraError> {
    binary_op(x, y, |r, a, b| r.mul(a, b))
}

pub fn teichmuller(a: &FqValue) -> WittValue {
    WittValue { a0: a.clone(), a1: a.field.value(a.field.zero()) }
}
