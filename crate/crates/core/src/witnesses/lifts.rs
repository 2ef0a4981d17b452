//! Explicit lifts of unipotent Jordan blocks to `Z/p^2`.

use serde::{Deserialize, Serialize};

use crate::algebra::{Fq, Matrix, MatrixOps, Ring, RingMatrix, Zmod};
use crate::error::LiftError;
use crate::groups::{is_single_jordan_block, jordan_block};

/// An explicit matrix over `Z/p^2` lying over a unipotent Jordan block,
/// with everything needed to re-verify it from the stored matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftWitness {
    pub claim: String,
    pub p: u32,
    /// The lift has multiplicative order `p^exponent`.
    pub exponent: u32,
    /// Block size.
    pub m: usize,
    /// Integer polynomial `P(u)` (coefficients low to high) whose companion
    /// matrix was conjugated into the lift, if the lift came from one.
    pub polynomial: Option<Vec<i64>>,
    pub factors: Vec<String>,
    pub lift: RingMatrix,
    pub reduction: RingMatrix,
    pub transcript: Vec<String>,
}

impl LiftWitness {
    /// Re-verifies from the stored matrices alone: the lift reduces to the
    /// stored reduction, which is the size-`m` unipotent Jordan block, and
    /// the lift has order exactly `p^exponent` over `Z/p^2`.
    pub fn verify(&self) -> Result<(), String> {
        let RingMatrix::Zmod(ring, lift) = &self.lift else {
            return Err("lift must be over Z/p^2".into());
        };
        let RingMatrix::Fq(field, red) = &self.reduction else {
            return Err("reduction must be over F_p".into());
        };
        if ring.prime() != self.p || ring.exponent() != 2 || field.characteristic() != self.p || field.degree() != 1
        {
            return Err("rings do not match the stated prime".into());
        }
        if lift.n != self.m || red.n != self.m {
            return Err("size mismatch".into());
        }
        if *red != jordan_block(field, self.m) {
            return Err("reduction is not the unipotent Jordan block".into());
        }
        if lift.map(|x| field.from_int(x as i64)) != *red {
            return Err("lift does not reduce to the Jordan block".into());
        }
        let target = self.p.pow(self.exponent) as u64;
        let order = ring.matrix_order(lift, target * self.p as u64).map_err(|e| e.to_string())?;
        if order != target {
            return Err(format!("order {order}, expected {target}"));
        }
        if let Some(poly) = &self.polynomial {
            let exact = poly_divides_power_minus_one(poly, target);
            if !exact {
                return Err("P(u) does not divide u^order - 1".into());
            }
        }
        Ok(())
    }

    pub fn lift_matrix(&self) -> Option<&Matrix<u32>> {
        match &self.lift {
            RingMatrix::Zmod(_, m) => Some(m),
            _ => None,
        }
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division test of `u^e - 1` by a monic integer polynomial.
fn poly_divides_power_minus_one(p: &[i64], e: u64) -> bool {
    let d = p.len() - 1;
    if p[d] != 1 {
        return false;
    }
    let mut r = vec![0i128; e as usize + 1];
    r[0] = -1;
    r[e as usize] = 1;
    for k in (d..=e as usize).rev() {
        let c = r[k];
        if c != 0 {
            for (i, &pi) in p.iter().enumerate() {
                r[k - d + i] -= c * pi as i128;
            }
        }
    }
    r.iter().all(|&x| x == 0)
}

/// Companion matrix of a monic `P`: multiplication by `u` on the basis
/// `1, u, ..., u^{m-1}` of `Z[u]/P`.
pub fn companion_matrix(poly: &[i64]) -> Vec<Vec<i64>> {
    let m = poly.len() - 1;
    let mut c = vec![vec![0i64; m]; m];
    for i in 0..m {
        if i + 1 < m {
            c[i + 1][i] = 1;
        }
        c[i][m - 1] = -poly[i];
    }
    c
}

/// The irreducible factors `u - 1, u + 1, u^2 + 1, ..., u^{2^{n-1}} + 1`
/// of `u^{2^n} - 1`, with display names.
fn two_power_factors(n: u32) -> Vec<(String, Vec<i64>)> {
    let mut out = vec![("u-1".to_string(), vec![-1, 1]), ("u+1".to_string(), vec![1, 1])];
    for k in 1..n {
        let deg = 1usize << k;
        let mut f = vec![0i64; deg + 1];
        f[0] = 1;
        f[deg] = 1;
        out.push((format!("u^{deg}+1"), f));
    }
    out
}

/// Picks factors of total degree `m`, largest degree first (`u - 1`
/// before `u + 1` among the linear ones).
fn select_factors(n: u32, m: usize) -> Vec<(String, Vec<i64>)> {
    let mut factors = two_power_factors(n);
    // stable sort keeps u-1 ahead of u+1
    factors.sort_by_key(|f| std::cmp::Reverse(f.1.len()));
    let mut left = m;
    let mut chosen = Vec::new();
    for f in factors {
        let deg = f.1.len() - 1;
        if deg <= left {
            left -= deg;
            chosen.push(f);
        }
    }
    assert_eq!(left, 0, "every m <= 2^n is a sum of distinct factor degrees");
    chosen
}

fn to_zmod(ring: &Zmod, a: &[Vec<i64>]) -> Matrix<u32> {
    Matrix::from_fn(a.len(), |i, j| ring.reduce(a[i][j]))
}

/// Conjugates `c` over `Z/p^2` so that it reduces to the literal unipotent
/// Jordan block, assuming its reduction is a single unipotent block. Uses
/// the basis `N^{m-1} v, ..., N v, v` with `N = c - I` and `v` a standard
/// basis vector with `N^{m-1} v != 0 mod p`.
pub fn conjugate_to_jordan(ring: &Zmod, c: &Matrix<u32>) -> Result<Matrix<u32>, LiftError> {
    let m = c.n;
    let p = ring.prime();
    let nil = ring.mat_sub(c, &ring.mat_identity(m));
    let top = ring.mat_pow(&nil, (m - 1) as u64);
    let j = (0..m)
        .find(|&j| (0..m).any(|i| top.get(i, j) % p != 0))
        .ok_or_else(|| LiftError::Construction("reduction is not a single Jordan block".into()))?;
    let mut cols = vec![vec![0u32; m]; m];
    let mut v: Vec<u32> = (0..m).map(|i| u32::from(i == j)).collect();
    for k in (0..m).rev() {
        cols[k] = v.clone();
        v = (0..m)
            .map(|i| (0..m).fold(ring.zero(), |acc, t| ring.add(acc, ring.mul(nil.get(i, t), v[t]))))
            .collect();
    }
    let basis = Matrix::from_fn(m, |i, k| cols[k][i]);
    let inv = ring.mat_inverse(&basis)?;
    Ok(ring.mat_mul(&ring.mat_mul(&inv, c), &basis))
}

fn witness_from_polynomial(
    claim: &str,
    p: u32,
    exponent: u32,
    poly: Vec<i64>,
    factors: Vec<String>,
) -> Result<LiftWitness, LiftError> {
    let m = poly.len() - 1;
    let ring = Zmod::new(p, 2)?;
    let field = Fq::prime(p)?;
    let order = p.pow(exponent) as u64;
    let mut transcript = Vec::new();
    if !poly_divides_power_minus_one(&poly, order) {
        return Err(LiftError::Construction(format!("P(u) does not divide u^{order} - 1")));
    }
    transcript.push(format!("P(u) = {} divides u^{order} - 1 over Z", render_poly(&poly)));
    let comp = to_zmod(&ring, &companion_matrix(&poly));
    let comp_order = ring.matrix_order(&comp, order * p as u64)?;
    transcript.push(format!("companion matrix has order {comp_order} over Z/{}", p * p));
    let reduced = comp.map(|x| field.from_int(x as i64));
    if !is_single_jordan_block(&field, &reduced) {
        return Err(LiftError::Construction("companion does not reduce to one Jordan block".into()));
    }
    transcript.push(format!("reduction mod {p} is a single unipotent Jordan block of size {m}"));
    let lift = conjugate_to_jordan(&ring, &comp)?;
    transcript.push("conjugated over Z/p^2 to reduce to the literal Jordan block".into());
    let w = LiftWitness {
        claim: claim.into(),
        p,
        exponent,
        m,
        polynomial: Some(poly),
        factors,
        lift: RingMatrix::Zmod(ring, lift),
        reduction: RingMatrix::Fq(field.clone(), jordan_block(&field, m)),
        transcript,
    };
    w.verify().map_err(LiftError::Construction)?;
    Ok(w)
}

fn render_poly(p: &[i64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "u".into(),
            _ => format!("u^{i}"),
        };
        let coef = match (c, i) {
            (1, 0) | (-1, 0) => c.abs().to_string(),
            (1, _) | (-1, _) => String::new(),
            _ => c.abs().to_string(),
        };
        let sign = if c < 0 { "-" } else { "+" };
        terms.push(format!("{sign}{coef}{mono}"));
    }
    let s = terms.concat();
    s.strip_prefix('+').unwrap_or(&s).to_string()
}

/// Lift of the size-`m` unipotent Jordan block over `F_2` to an element of
/// order `2^n` over `Z/4`, for `2^{n-1} < m <= 2^n`, from a degree-`m`
/// divisor of `u^{2^n} - 1`.
pub fn lift_power_of_two(n: u32, m: usize) -> Result<LiftWitness, LiftError> {
    if n == 0 || n > 16 || m <= 1usize << (n - 1) || m > 1usize << n {
        return Err(LiftError::InvalidParameters(format!("need 2^(n-1) < m <= 2^n, got n={n}, m={m}")));
    }
    let chosen = select_factors(n, m);
    let poly = chosen.iter().fold(vec![1i64], |acc, f| poly_mul(&acc, &f.1));
    let names = chosen.into_iter().map(|f| f.0).collect();
    witness_from_polynomial("cyclic_power_of_two", 2, n, poly, names)
}

/// The order-2 lift `(-1 1; 0 1)` over `Z/4` of the `2 x 2` Jordan block.
pub fn order_two_lift() -> Result<LiftWitness, LiftError> {
    let ring = Zmod::new(2, 2)?;
    let field = Fq::prime(2)?;
    let lift = Matrix::from_rows(vec![vec![ring.reduce(-1), 1], vec![0, 1]])?;
    let w = LiftWitness {
        claim: "cyclic_order_two_or_three".into(),
        p: 2,
        exponent: 1,
        m: 2,
        polynomial: None,
        factors: vec![],
        lift: RingMatrix::Zmod(ring, lift),
        reduction: RingMatrix::Fq(field.clone(), jordan_block(&field, 2)),
        transcript: vec!["(-1 1; 0 1) over Z/4".into()],
    };
    w.verify().map_err(LiftError::Construction)?;
    Ok(w)
}

/// Order-3 lift over `Z/9` of the size-`m` unipotent Jordan block over
/// `F_3`, `m` in {2, 3}: multiplication by `u` on `Z[u]/(u^2+u+1)` or
/// `Z[u]/(u^3-1)`.
pub fn order_three_lift(m: usize) -> Result<LiftWitness, LiftError> {
    let (poly, name) = match m {
        2 => (vec![1, 1, 1], "u^2+u+1"),
        3 => (vec![-1, 0, 0, 1], "u^3-1"),
        _ => return Err(LiftError::InvalidParameters(format!("order-3 lifts exist for m = 2, 3, got {m}"))),
    };
    witness_from_polynomial("cyclic_order_two_or_three", 3, 1, poly, vec![name.into()])
}

/// Canonical lifts of every unipotent Jordan block of a cyclic `p`-group
/// that the classification treats as liftable: for `Z/2^n` the blocks of
/// size 2 to `2^n`, for `Z/3` sizes 2 and 3.
pub fn canonical_jordan_lifts(p: u32, n: u32) -> Result<Vec<LiftWitness>, LiftError> {
    match (p, n) {
        (2, n) if n >= 1 => (2..=(1usize << n))
            .map(|m| {
                let k = usize::BITS - (m - 1).leading_zeros();
                lift_power_of_two(k, m)
            })
            .collect(),
        (3, 1) => (2..=3).map(order_three_lift).collect(),
        _ => Err(LiftError::InvalidParameters(format!("Z/{p}^{n} has no canonical lifts"))),
    }
}
