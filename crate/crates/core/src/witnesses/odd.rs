//! Non-liftability of `Z/p^n` for `p >= 5`, or `p = 3` and `n >= 2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Fq, Matrix, MatrixOps, Zmod};
use crate::cohomology::{certify, ExhaustiveStamp, ObstructionCertificate, Verdict};
use crate::error::LiftError;
use crate::groups::{jordan_block_rep, nilpotent_shift};

/// Largest correction space `p^{m^2}` that is enumerated.
pub const ODD_STAMP_LIMIT: u64 = 1_000_000;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OddPowerWitness {
    pub p: u32,
    pub n: u32,
    /// Jordan block size `p^{n-1} + 1`.
    pub m: usize,
    pub certificate: ObstructionCertificate,
    /// Enumeration of every `X = I + N + pM` over `Z/p^2`, when the space
    /// has at most [`ODD_STAMP_LIMIT`] elements.
    pub stamp: Option<ExhaustiveStamp>,
}

fn binomial_mod(n: u64, k: u64, modulus: u64) -> u64 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    (r % modulus as u128) as u64
}

/// `X = I + N + pM` over `Z/p^2`, `N` the nilpotent shift of size `m`.
pub fn jordan_lift(ring: &Zmod, m: usize, correction: &Matrix<u32>) -> Matrix<u32> {
    let p = ring.prime();
    let id = ring.mat_identity(m);
    let shift = nilpotent_shift(ring, m);
    let pm = correction.map(|x| ring.reduce(p as i64 * x as i64));
    ring.mat_add(&ring.mat_add(&id, &shift), &pm)
}

/// `I + sum_{i=1}^{p-1} C(p^n, i p^{n-1}) N^{i p^{n-1}}` over `Z/p^2`, the
/// value of `X^{p^n}` for every lift `X` of the size-`m` block when
/// `p^n >= 2m`.
pub fn odd_power_closed_form(p: u32, n: u32) -> Result<Matrix<u32>, LiftError> {
    let ring = Zmod::new(p, 2)?;
    let m = p.pow(n - 1) as usize + 1;
    let pn = p.pow(n) as u64;
    let step = p.pow(n - 1) as u64;
    let shift = nilpotent_shift(&ring, m);
    let mut acc = ring.mat_identity(m);
    for i in 1..p as u64 {
        let c = binomial_mod(pn, i * step, ring.modulus() as u64);
        let term = ring.mat_scale(c as u32, &ring.mat_pow(&shift, i * step));
        acc = ring.mat_add(&acc, &term);
    }
    Ok(acc)
}

fn check_parameters(p: u32, n: u32) -> Result<(), LiftError> {
    if !crate::algebra::is_prime(p) || p < 3 || n == 0 {
        return Err(LiftError::InvalidParameters(format!("need an odd prime p and n >= 1, got ({p}, {n})")));
    }
    if p == 3 && n == 1 {
        return Err(LiftError::InvalidParameters("Z/3 is liftable; need p >= 5 or n >= 2".into()));
    }
    Ok(())
}

/// Counts the lifts `X = I + N + pM` with `X^{p^n} = I`, over all `M` in
/// `M_m(F_p)`, or `None` past [`ODD_STAMP_LIMIT`].
pub fn odd_power_stamp(p: u32, n: u32) -> Result<Option<ExhaustiveStamp>, LiftError> {
    check_parameters(p, n)?;
    let ring = Zmod::new(p, 2)?;
    let m = p.pow(n - 1) as usize + 1;
    let total = (p as u64).checked_pow((m * m) as u32).filter(|&t| t <= ODD_STAMP_LIMIT);
    let Some(total) = total else { return Ok(None) };
    let order = p.pow(n) as u64;
    let solutions = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let mut k = idx;
            let data = (0..m * m)
                .map(|_| {
                    let d = (k % p as u64) as u32;
                    k /= p as u64;
                    d
                })
                .collect();
            let x = jordan_lift(&ring, m, &Matrix { n: m, data });
            ring.mat_is_identity(&ring.mat_pow(&x, order))
        })
        .count() as u64;
    Ok(Some(ExhaustiveStamp {
        candidates: total,
        solutions,
        method: format!("all X = I + N + {p}M over Z/{}, tested X^{order} = I", p * p),
    }))
}

/// The Jordan witness for `Z/p^n`, its obstruction certificate, and the
/// exhaustive stamp when the correction space is small enough.
pub fn nonlift_odd_jordan(p: u32, n: u32) -> Result<OddPowerWitness, LiftError> {
    check_parameters(p, n)?;
    let field = Fq::prime(p)?;
    let rep = jordan_block_rep(p, n, &field)?;
    let certificate = certify(&rep)?;
    if certificate.verdict != Verdict::Obstructed {
        return Err(LiftError::Construction(format!("Jordan witness for Z/{p}^{n} unexpectedly lifts")));
    }
    let stamp = odd_power_stamp(p, n)?;
    Ok(OddPowerWitness { p, n, m: rep.dim(), certificate, stamp })
}
