use super::{is_prime, FiniteRing, Ring, RingTag};
use crate::error::AlgebraError;

/// The residue ring `Z/p^k`, elements stored as residues in `[0, p^k)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Zmod {
    p: u32,
    k: u32,
    n: u32,
}

impl Zmod {
    pub fn new(p: u32, k: u32) -> Result<Zmod, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let n = (p as u64)
            .checked_pow(k)
            .filter(|&n| k >= 1 && n <= u32::MAX as u64 / 2)
            .ok_or_else(|| AlgebraError::Unsupported(format!("Z/{p}^{k}")))?;
        Ok(Zmod { p, k, n: n as u32 })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.n as i64) as u32
    }
}

impl Ring for Zmod {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.n
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.n as u64) as u32
    }
    fn neg(&self, a: u32) -> u32 {
        (self.n - a % self.n) % self.n
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.n as u64) as u32
    }
    fn inv(&self, a: u32) -> Option<u32> {
        if a % self.p == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.n as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce(t0))
    }
    fn tag(&self) -> RingTag {
        RingTag::Zmod { p: self.p, k: self.k }
    }
    fn from_int(&self, n: i64) -> u32 {
        self.reduce(n)
    }
}

impl FiniteRing for Zmod {
    fn elements(&self) -> Vec<u32> {
        (0..self.n).collect()
    }
}
