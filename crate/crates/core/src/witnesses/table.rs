//! Liftability verdicts for small groups, each backed by a machine-checked
//! witness.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lifts::canonical_jordan_lifts;
use crate::algebra::{Fq, Matrix, MatrixOps, Ring, RingMatrix, Zmod};
use crate::cohomology::{certify, ObstructionCertificate, Verdict};
use crate::error::LiftError;
use crate::groups::{
    abelian_group, abelian_types, coset_permutation_rep, induce_rep, jordan_block_rep, named_group,
    p_times_p_rep, two_powers_rep, FiniteGroup, RepJson, Representation,
};

/// Largest order covered by [`abelian_verdict_table`].
pub const MAX_TABLE_ORDER: usize = 16;

/// Evidence reps for OPEN rows are limited to this dimension.
const OPEN_EVIDENCE_MAX_DIM: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TableVerdict {
    /// Every canonical Jordan witness has an explicit verified lift.
    LiftableWitnessed,
    /// A representation carries an OBSTRUCTED certificate.
    NotLiftableWitnessed,
    Open,
}

/// A representation over `F_p` together with a lift over `Z/p^2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifiedLift {
    pub block_size: usize,
    pub rep: RepJson,
    pub lift: RepJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OpenEvidence {
    pub description: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RowWitness {
    Lifts { lifts: Vec<VerifiedLift> },
    Obstructed { description: String, certificate: Box<ObstructionCertificate> },
    Open { note: String, evidence: Vec<OpenEvidence> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictRow {
    pub group: String,
    pub order: usize,
    pub p: u32,
    pub verdict: TableVerdict,
    /// What the classification of liftable abelian groups (and its
    /// corollary for `p`-groups) predicts.
    pub expected: TableVerdict,
    pub witness: RowWitness,
}

impl VerdictRow {
    /// Re-verifies the stored witness independently of how it was built.
    pub fn recheck(&self) -> Result<(), String> {
        match (&self.witness, self.verdict) {
            (RowWitness::Lifts { lifts }, TableVerdict::LiftableWitnessed) => {
                for l in lifts {
                    check_lift(l)?;
                }
                Ok(())
            }
            (RowWitness::Obstructed { certificate, .. }, TableVerdict::NotLiftableWitnessed) => {
                if certificate.verdict != Verdict::Obstructed {
                    return Err("certificate does not report OBSTRUCTED".into());
                }
                certificate.recheck()
            }
            (RowWitness::Open { .. }, TableVerdict::Open) => Ok(()),
            _ => Err("verdict does not match the kind of witness".into()),
        }
    }
}

fn check_lift(l: &VerifiedLift) -> Result<(), String> {
    let rep = Representation::<Fq>::from_json(l.rep.clone()).map_err(|e| e.to_string())?;
    let lift = Representation::<Zmod>::from_json(l.lift.clone()).map_err(|e| e.to_string())?;
    if rep.group() != lift.group() {
        return Err("lift is over a different group".into());
    }
    let f = rep.field();
    for (a, b) in lift.generator_images().iter().zip(rep.generator_images()) {
        if a.map(|x| f.from_int(x as i64)) != *b {
            return Err("lift does not reduce to the representation".into());
        }
    }
    Ok(())
}

/// Rep of `g` sending generator `j` to `images[k]` when `slots[k] == j`
/// and every other generator to the identity.
fn on_factors<R: Ring>(
    g: &Arc<FiniteGroup>,
    ring: &R,
    n: usize,
    slots: &[usize],
    images: &[Matrix<R::Elem>],
) -> Result<Representation<R>, LiftError> {
    let gens = (0..g.generators().len())
        .map(|j| match slots.iter().position(|&s| s == j) {
            Some(k) => images[k].clone(),
            None => ring.mat_identity(n),
        })
        .collect();
    Ok(Representation::new(g.clone(), ring.clone(), gens)?)
}

/// Indices of the factors that are powers of `p`, largest first.
fn sylow_factors(factors: &[u32], p: u32) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..factors.len()).filter(|&i| factors[i] % p == 0).collect();
    idx.sort_by_key(|&i| std::cmp::Reverse(factors[i]));
    idx
}

/// The classification prediction for an abelian group with the given
/// primary factors.
pub fn expected_abelian(factors: &[u32], p: u32) -> TableVerdict {
    let sylow: Vec<u32> = factors.iter().copied().filter(|&q| q % p == 0).collect();
    let liftable = match (p, sylow.as_slice()) {
        (_, []) => true,
        (2, [_]) => true,
        (3, [3]) => true,
        _ => false,
    };
    if liftable {
        TableVerdict::LiftableWitnessed
    } else {
        TableVerdict::NotLiftableWitnessed
    }
}

fn obstructed_row(
    g: &Arc<FiniteGroup>,
    p: u32,
    expected: TableVerdict,
    description: String,
    rep: &Representation<Fq>,
) -> Result<VerdictRow, LiftError> {
    let certificate = certify(rep)?;
    if certificate.verdict != Verdict::Obstructed {
        return Err(LiftError::Construction(format!("{description}: witness lifts")));
    }
    Ok(VerdictRow {
        group: g.label(),
        order: g.order(),
        p,
        verdict: TableVerdict::NotLiftableWitnessed,
        expected,
        witness: RowWitness::Obstructed { description, certificate: Box::new(certificate) },
    })
}

fn abelian_row(factors: &[u32], p: u32) -> Result<VerdictRow, LiftError> {
    let g = Arc::new(abelian_group(factors)?);
    let expected = expected_abelian(factors, p);
    let sylow = sylow_factors(factors, p);
    let fp = Fq::prime(p)?;
    let q = |i: usize| factors[sylow[i]];
    match (p, sylow.len()) {
        (2, 1) | (3, 1) if p == 2 || q(0) == 3 => {
            let exponent = q(0).trailing_zeros().max(u32::from(p == 3));
            let ring = Zmod::new(p, 2)?;
            let mut lifts = Vec::new();
            for w in canonical_jordan_lifts(p, exponent)? {
                let RingMatrix::Zmod(_, x) = &w.lift else { unreachable!("lifts are over Z/p^2") };
                let RingMatrix::Fq(_, red) = &w.reduction else { unreachable!("reductions are over F_p") };
                let rep = on_factors(&g, &fp, w.m, &[sylow[0]], std::slice::from_ref(red))?;
                let lift = on_factors(&g, &ring, w.m, &[sylow[0]], std::slice::from_ref(x))?;
                // the cohomological decision must agree with the explicit lift
                if certify(&rep)?.verdict != Verdict::Lifts {
                    return Err(LiftError::Construction(format!(
                        "{}: obstruction solver rejects an explicit lift",
                        g.label()
                    )));
                }
                lifts.push(VerifiedLift { block_size: w.m, rep: rep.to_json(), lift: lift.to_json() });
            }
            Ok(VerdictRow {
                group: g.label(),
                order: g.order(),
                p,
                verdict: TableVerdict::LiftableWitnessed,
                expected,
                witness: RowWitness::Lifts { lifts },
            })
        }
        (2, _) => {
            let (a, b) = (q(0).trailing_zeros(), q(1).trailing_zeros());
            let w = two_powers_rep(a, b)?;
            let rep = on_factors(&g, w.field(), w.dim(), &sylow[..2], w.generator_images())?;
            let desc = format!("two_powers_rep({a},{b}) on the factors Z{} x Z{}", q(0), q(1));
            obstructed_row(&g, p, expected, desc, &rep)
        }
        (_, 1) => {
            let n = (q(0) as f64).log(p as f64).round() as u32;
            let w = jordan_block_rep(p, n, &fp)?;
            let rep = on_factors(&g, &fp, w.dim(), &sylow[..1], w.generator_images())?;
            let desc = format!("Jordan block of size {} on the factor Z{}", w.dim(), q(0));
            obstructed_row(&g, p, expected, desc, &rep)
        }
        _ => {
            // two factors of order p suffice: every group here has p^2 || Sylow
            let (i, j) = (sylow[sylow.len() - 2], sylow[sylow.len() - 1]);
            if factors[i] != p || factors[j] != p {
                return Err(LiftError::InvalidParameters(format!(
                    "no Z/{p} x Z/{p} direct factor in {}",
                    g.label()
                )));
            }
            let w = p_times_p_rep(p)?;
            let rep = on_factors(&g, w.field(), 2, &[i, j], w.generator_images())?;
            let desc = format!("p_times_p_rep({p}) on the factors Z{p} x Z{p}");
            obstructed_row(&g, p, expected, desc, &rep)
        }
    }
}

/// Induces `p_times_p_rep(2)` from the Klein subgroup `<r^{n/2}, s>` of the
/// dihedral group `D_n`.
fn dihedral_row(name: &str) -> Result<VerdictRow, LiftError> {
    let g = Arc::new(named_group(name)?);
    let (r, s) = (g.generators()[0], g.generators()[1]);
    let half = g.element_order(r) as u64 / 2;
    let z = g.pow(r, half);
    let h = g.generated_subgroup(&[z, s]);
    let (hg, emb) = g.subgroup_as_group(&h);
    let serre = p_times_p_rep(2)?;
    let f = serre.field().clone();
    let (a, b) = (&serre.generator_images()[0], &serre.generator_images()[1]);
    let zs = g.mul(z, s);
    let image = |x: usize| {
        let mut m = f.mat_identity(2);
        if x == z || x == zs {
            m = f.mat_mul(&m, a);
        }
        if x == s || x == zs {
            m = f.mat_mul(&m, b);
        }
        m
    };
    let images = hg.generators().iter().map(|&x| image(emb[x])).collect();
    let rho = Representation::new(Arc::new(hg), f, images)?;
    let ind = induce_rep(&g, &h, &rho)?;
    let desc = format!("p_times_p_rep(2) on the Klein subgroup, induced to {name} (dim {})", ind.dim());
    obstructed_row(&g, 2, TableVerdict::NotLiftableWitnessed, desc, &ind)
}

/// Quaternion rows: no verdict, with the certified status of the coset
/// permutation representations as evidence.
fn quaternion_row(name: &str) -> Result<VerdictRow, LiftError> {
    let g = Arc::new(named_group(name)?);
    let f = Fq::prime(2)?;
    let mut evidence = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for h in g.small_subgroups() {
        let dim = g.order() / h.order();
        if dim < 2 || dim > OPEN_EVIDENCE_MAX_DIM || !seen.insert(h.elements().to_vec()) {
            continue;
        }
        let rep = coset_permutation_rep(&g, &h, &f)?;
        let cert = certify(&rep)?;
        evidence.push(OpenEvidence {
            description: format!("permutation rep on cosets of a subgroup of order {}", h.order()),
            verdict: cert.verdict,
        });
    }
    Ok(VerdictRow {
        group: g.label(),
        order: g.order(),
        p: 2,
        verdict: TableVerdict::Open,
        expected: TableVerdict::Open,
        witness: RowWitness::Open {
            note: "liftability at p = 2 is unknown; per-representation verdicts only, no claim for the group".into(),
            evidence,
        },
    })
}

/// Verdicts for every abelian group of order at most `max_order` and each
/// prime dividing the order, plus the dihedral and quaternion 2-groups in
/// that range. Rows are sorted by (order, name, p).
pub fn abelian_verdict_table(max_order: usize) -> Result<Vec<VerdictRow>, LiftError> {
    if max_order > MAX_TABLE_ORDER {
        return Err(LiftError::InvalidParameters(format!("max_order {max_order} > {MAX_TABLE_ORDER}")));
    }
    enum Job {
        Abelian(Vec<u32>, u32),
        Dihedral(&'static str),
        Quaternion(&'static str),
    }
    let mut jobs = Vec::new();
    for n in 2..=max_order as u32 {
        for t in abelian_types(n) {
            for p in crate::groups::cyclic_group(n)?.prime_divisors() {
                jobs.push(Job::Abelian(t.clone(), p));
            }
        }
    }
    for (name, order) in [("D4", 8), ("Q8", 8), ("D8", 16), ("Q16", 16)] {
        if order <= max_order {
            jobs.push(if name.starts_with('D') { Job::Dihedral(name) } else { Job::Quaternion(name) });
        }
    }
    let mut rows = jobs
        .into_par_iter()
        .map(|job| match job {
            Job::Abelian(t, p) => abelian_row(&t, p),
            Job::Dihedral(name) => dihedral_row(name),
            Job::Quaternion(name) => quaternion_row(name),
        })
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| (a.order, &a.group, a.p).cmp(&(b.order, &b.group, b.p)));
    Ok(rows)
}
