use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{FiniteRing, Ring, RingTag};
use crate::error::AlgebraError;

/// Element of `F_{p^m}`, encoded as `sum coords[i] * p^i` with respect to the
/// field's modulus polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FqElem(pub u32);

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Conway polynomials for small fields, ascending coefficients including the
/// leading 1.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 1, 4, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (11, 1, &[9, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 1, &[11, 1]),
    (13, 2, &[2, 12, 1]),
];

/// Largest field order for which log/exp tables are built.
const MAX_FIELD_ORDER: u64 = 1 << 20;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The Conway polynomial for `(p, m)` when it is in the built-in table.
pub fn conway_polynomial(p: u32, m: u32) -> Option<Vec<u32>> {
    CONWAY
        .iter()
        .find(|(cp, cm, _)| *cp == p && *cm == m)
        .map(|(_, _, c)| c.to_vec())
}

struct FqInner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    conway: bool,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// The finite field `F_{p^m}`.
#[derive(Clone)]
pub struct Fq(Arc<FqInner>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, self.0.modulus)
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), Fq>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Fq>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

// Dense polynomial helpers over F_p, ascending coefficients.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let idx = dr - db + i;
                r[idx] = (r[idx] + p - (c as u64 * bi as u64 % p as u64) as u32) % p;
            }
        }
        r.pop();
        r = poly_trim(r);
        if r.len() <= db {
            break;
        }
    }
    poly_trim(r)
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + ai as u64 * bj as u64) % p as u64) as u32;
        }
    }
    poly_rem(&poly_trim(prod), modulus, p)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i64) as u32
}

/// Trial division by every monic polynomial of degree at most `deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                g.push((k % p as u64) as u32);
                k /= p as u64;
            }
            g.push(1);
            let r = poly_rem(f, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `m` in lexicographic order of
/// the coefficient vector (constant term least significant).
fn first_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for idx in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut k = idx;
        for _ in 0..m {
            f.push((k % p as u64) as u32);
            k /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Fq {
    /// The field with `p^m` elements, using the Conway polynomial when known
    /// and otherwise the first irreducible polynomial in lexicographic order.
    pub fn new(p: u32, m: u32) -> Result<Fq, AlgebraError> {
        if let Some(f) = field_cache().lock().unwrap().get(&(p, m)) {
            return Ok(f.clone());
        }
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        if m == 0 || (p as u64).checked_pow(m).map_or(true, |q| q > MAX_FIELD_ORDER) {
            return Err(AlgebraError::Unsupported(format!("field of order {p}^{m}")));
        }
        let (modulus, conway) = match conway_polynomial(p, m) {
            Some(c) => (c, true),
            None => (first_irreducible(p, m), false),
        };
        let f = Self::with_modulus(p, modulus, conway)?;
        field_cache().lock().unwrap().insert((p, m), f.clone());
        Ok(f)
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Fq, AlgebraError> {
        Self::new(p, 1)
    }

    /// Construct from an explicit monic modulus (ascending coefficients).
    pub fn with_modulus(p: u32, modulus: Vec<u32>, conway: bool) -> Result<Fq, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        let m = modulus.len() as u32 - 1;
        if modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) || m == 0 {
            return Err(AlgebraError::Malformed(format!("modulus {modulus:?}")));
        }
        if !is_irreducible(&modulus, p) {
            return Err(AlgebraError::Reducible(modulus, p));
        }
        let q = p.pow(m);
        let decode = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(m as usize);
            let mut k = x;
            for _ in 0..m {
                v.push(k % p);
                k /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0u32, |acc, &c| acc * p + c) };

        // Smallest element whose powers exhaust the multiplicative group.
        let mut generator = None;
        let mut exp = Vec::new();
        for cand in 1..q {
            exp.clear();
            let g = decode(cand);
            let mut cur = decode(1);
            let mut ok = true;
            for i in 0..(q - 1) {
                let c = encode(&cur);
                if i > 0 && c == 1 {
                    ok = false;
                    break;
                }
                exp.push(c);
                cur = poly_mulmod(&cur, &g, &modulus, p);
                cur.resize(m as usize, 0);
            }
            if ok && encode(&cur) == 1 {
                generator = Some(cand);
                break;
            }
        }
        let generator = generator.expect("multiplicative group of a field is cyclic");
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let add = if q <= 256 && p != 2 && m > 1 {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let da = decode(a);
                for b in 0..q {
                    let db = decode(b);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = encode(&s);
                }
            }
            Some(t)
        } else {
            None
        };
        Ok(Fq(Arc::new(FqInner { p, m, q, modulus, conway, generator, exp, log, add })))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }
    pub fn degree(&self) -> u32 {
        self.0.m
    }
    pub fn order(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    /// Whether the modulus came from the Conway table.
    pub fn is_conway(&self) -> bool {
        self.0.conway
    }
    /// The fixed generator of the multiplicative group.
    pub fn generator(&self) -> FqElem {
        FqElem(self.0.generator)
    }

    pub fn coords(&self, a: FqElem) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.0.m as usize);
        let mut k = a.0;
        for _ in 0..self.0.m {
            v.push(k % self.0.p);
            k /= self.0.p;
        }
        v
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FqElem, AlgebraError> {
        if coords.len() != self.0.m as usize || coords.iter().any(|&c| c >= self.0.p) {
            return Err(AlgebraError::Malformed(format!(
                "coords {coords:?} for F_{}^{}",
                self.0.p, self.0.m
            )));
        }
        Ok(FqElem(coords.iter().rev().fold(0u32, |acc, &c| acc * self.0.p + c)))
    }

    pub fn from_index(&self, idx: u32) -> Result<FqElem, AlgebraError> {
        if idx >= self.0.q {
            return Err(AlgebraError::Malformed(format!("index {idx} >= {}", self.0.q)));
        }
        Ok(FqElem(idx))
    }

    /// The `i`-th basis element `x^i` of the polynomial basis.
    pub fn basis(&self, i: u32) -> FqElem {
        FqElem(self.0.p.pow(i))
    }

    /// Discrete logarithm with respect to [`Fq::generator`].
    pub fn log(&self, a: FqElem) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    pub fn exp(&self, k: u64) -> FqElem {
        FqElem(self.0.exp[(k % (self.0.q as u64 - 1)) as usize])
    }

    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.0.p as u64)
    }

    /// Inverse Frobenius `a -> a^{p^{m-1}}`.
    pub fn frobenius_inv(&self, a: FqElem) -> FqElem {
        self.pow(a, (self.0.p as u64).pow(self.0.m - 1))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FqElem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = self.0.q as u64 - 1;
        Some(n / gcd(l, n))
    }

    pub fn value(&self, a: FqElem) -> FqValue {
        FqValue { field: self.clone(), elem: a }
    }

    pub fn describe(&self) -> String {
        format!(
            "F_{}^{} modulus {:?}{}",
            self.0.p,
            self.0.m,
            self.0.modulus,
            if self.0.conway { " (Conway)" } else { " (lex-first irreducible)" }
        )
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ring for Fq {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(0)
    }
    fn one(&self) -> FqElem {
        FqElem(1)
    }
    fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let s = &self.0;
        if s.p == 2 {
            FqElem(a.0 ^ b.0)
        } else if s.m == 1 {
            FqElem((a.0 + b.0) % s.p)
        } else if let Some(t) = &s.add {
            FqElem(t[(a.0 * s.q + b.0) as usize])
        } else {
            let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
            for _ in 0..s.m {
                out += ((x % s.p + y % s.p) % s.p) * place;
                x /= s.p;
                y /= s.p;
                place *= s.p;
            }
            FqElem(out)
        }
    }
    fn neg(&self, a: FqElem) -> FqElem {
        let s = &self.0;
        if s.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        for _ in 0..s.m {
            out += ((s.p - x % s.p) % s.p) * place;
            x /= s.p;
            place *= s.p;
        }
        FqElem(out)
    }
    fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        let s = &self.0;
        let l = s.log[a.0 as usize] as u64 + s.log[b.0 as usize] as u64;
        FqElem(s.exp[(l % (s.q as u64 - 1)) as usize])
    }
    fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        let s = &self.0;
        let n = s.q - 1;
        Some(FqElem(s.exp[((n - s.log[a.0 as usize]) % n) as usize]))
    }
    fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem(1);
        }
        if a.0 == 0 {
            return FqElem(0);
        }
        let n = self.0.q as u64 - 1;
        FqElem(self.0.exp[((self.0.log[a.0 as usize] as u64 * (e % n)) % n) as usize])
    }
    fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.0.p as i64) as u32)
    }
    fn tag(&self) -> RingTag {
        RingTag::Fq { p: self.0.p, m: self.0.m }
    }
}

impl FiniteRing for Fq {
    fn elements(&self) -> Vec<FqElem> {
        (0..self.0.q).map(FqElem).collect()
    }
}

/// A field element bundled with its field; serializes as
/// `{"p":…, "m":…, "coords":[…]}`.
#[derive(Clone, PartialEq, Eq)]
pub struct FqValue {
    pub field: Fq,
    pub elem: FqElem,
}

impl fmt::Debug for FqValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.field.coords(self.elem))
    }
}

#[derive(Serialize, Deserialize)]
struct FqJson {
    p: u32,
    m: u32,
    coords: Vec<u32>,
}

impl Serialize for FqValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FqJson {
            p: self.field.characteristic(),
            m: self.field.degree(),
            coords: self.field.coords(self.elem),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FqValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = FqJson::deserialize(d)?;
        let field = Fq::new(j.p, j.m).map_err(serde::de::Error::custom)?;
        let elem = field.from_coords(&j.coords).map_err(serde::de::Error::custom)?;
        Ok(FqValue { field, elem })
    }
}
