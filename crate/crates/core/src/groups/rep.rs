use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{FiniteGroup, Subgroup, FULL_CHECK_ORDER};
use crate::algebra::{nullspace, FiniteRing, Fq, JsonRing, Matrix, MatrixOps, Ring, RingMatrix, RingTag};
use crate::error::{AlgebraError, GroupError};

/// A matrix representation: one invertible matrix per generator, with the
/// images of all group elements expanded on first use.
pub struct Representation<R: Ring> {
    group: Arc<FiniteGroup>,
    ring: R,
    n: usize,
    gens: Vec<Matrix<R::Elem>>,
    images: OnceLock<Vec<Matrix<R::Elem>>>,
}

impl<R: Ring> Clone for Representation<R> {
    fn clone(&self) -> Self {
        Representation {
            group: self.group.clone(),
            ring: self.ring.clone(),
            n: self.n,
            gens: self.gens.clone(),
            images: self.images.clone(),
        }
    }
}

impl<R: Ring + std::fmt::Debug> std::fmt::Debug for Representation<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representation")
            .field("group", &self.group.label())
            .field("ring", &self.ring.tag())
            .field("n", &self.n)
            .field("gens", &self.gens)
            .finish()
    }
}

/// Outcome of a conjugacy test between two representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence<E> {
    /// `P` with `P a(g) P^-1 = b(g)` for every generator.
    Conjugate(Matrix<E>),
    NotConjugate,
    /// The intertwiner space was too large to search exhaustively and no
    /// invertible intertwiner was found among the sampled ones.
    Undecided,
}

impl<R: Ring> Representation<R> {
    /// Builds and validates a representation: generator images must be
    /// invertible, satisfy the group's relators and extend to a
    /// homomorphism. The extension is checked on every Cayley-graph edge
    /// (which is sufficient), and on all pairs for groups of order at most
    /// [`FULL_CHECK_ORDER`].
    pub fn new(
        group: Arc<FiniteGroup>,
        ring: R,
        gens: Vec<Matrix<R::Elem>>,
    ) -> Result<Representation<R>, GroupError> {
        let rep = Representation::new_relators_only(group, ring, gens)?;
        rep.verify_homomorphism()?;
        Ok(rep)
    }

    /// Validates dimensions, invertibility and relators only.
    pub fn new_relators_only(
        group: Arc<FiniteGroup>,
        ring: R,
        gens: Vec<Matrix<R::Elem>>,
    ) -> Result<Representation<R>, GroupError> {
        if gens.len() != group.generators().len() {
            return Err(GroupError::NotHomomorphism(format!(
                "{} images for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let n = match gens.first() {
            Some(m) => m.n,
            None => 1,
        };
        if n == 0 || gens.iter().any(|m| m.n != n || m.data.len() != n * n) {
            return Err(AlgebraError::Dimension("generator images must share one size".into()).into());
        }
        for m in &gens {
            ring.mat_inverse(m)?;
        }
        let rep = Representation { group, ring, n, gens, images: OnceLock::new() };
        for (index, r) in rep.group.relators().iter().enumerate() {
            if !rep.ring.mat_is_identity(&rep.eval_word(r)) {
                return Err(GroupError::RelatorViolation { index });
            }
        }
        Ok(rep)
    }

    /// Trivial `n`-dimensional representation.
    pub fn trivial(group: Arc<FiniteGroup>, ring: R, n: usize) -> Representation<R> {
        let gens = vec![ring.mat_identity(n); group.generators().len()];
        Representation { group, ring, n, gens, images: OnceLock::new() }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generator_images(&self) -> &[Matrix<R::Elem>] {
        &self.gens
    }

    pub fn eval_word(&self, w: &[i32]) -> Matrix<R::Elem> {
        let mut acc = self.ring.mat_identity(self.n);
        for &l in w {
            let m = &self.gens[l.unsigned_abs() as usize - 1];
            let m = if l > 0 {
                m.clone()
            } else {
                self.ring.mat_inverse(m).expect("generator images are invertible")
            };
            acc = self.ring.mat_mul(&acc, &m);
        }
        acc
    }

    /// Images of all elements, indexed like the group.
    pub fn images(&self) -> &[Matrix<R::Elem>] {
        self.images.get_or_init(|| {
            let g = &self.group;
            let mut out = vec![self.ring.mat_identity(self.n); g.order()];
            for &x in g.bfs_order() {
                if let Some((parent, j)) = g.tree_parent(x) {
                    out[x] = self.ring.mat_mul(&out[parent], &self.gens[j]);
                }
            }
            out
        })
    }

    pub fn image(&self, g: usize) -> &Matrix<R::Elem> {
        &self.images()[g]
    }

    pub fn verify_homomorphism(&self) -> Result<(), GroupError> {
        let g = &self.group;
        let imgs = self.images();
        for x in 0..g.order() {
            for (j, &s) in g.generators().iter().enumerate() {
                if self.ring.mat_mul(&imgs[x], &self.gens[j]) != imgs[g.mul(x, s)] {
                    return Err(GroupError::NotHomomorphism(format!(
                        "f({x})f({s}) != f({x}*{s})"
                    )));
                }
            }
        }
        if g.order() <= FULL_CHECK_ORDER {
            for x in 0..g.order() {
                for y in 0..g.order() {
                    if self.ring.mat_mul(&imgs[x], &imgs[y]) != imgs[g.mul(x, y)] {
                        return Err(GroupError::NotHomomorphism(format!(
                            "f({x})f({y}) != f({x}{y})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Restriction to a subgroup, as a representation of
    /// [`FiniteGroup::subgroup_as_group`]. Returns the embedding too.
    pub fn restrict(&self, h: &Subgroup) -> (Representation<R>, Vec<usize>) {
        let (hg, emb) = self.group.subgroup_as_group(h);
        let gens = hg.generators().iter().map(|&x| self.image(emb[x]).clone()).collect();
        let rep = Representation {
            group: Arc::new(hg),
            ring: self.ring.clone(),
            n: self.n,
            gens,
            images: OnceLock::new(),
        };
        (rep, emb)
    }

    /// Pullback along a homomorphism `other -> self.group`, given by the
    /// images of `other`'s generators.
    pub fn pullback(
        &self,
        other: Arc<FiniteGroup>,
        gen_images: &[usize],
    ) -> Result<Representation<R>, GroupError> {
        let gens = gen_images.iter().map(|&x| self.image(x).clone()).collect();
        Representation::new(other, self.ring.clone(), gens)
    }

    /// Same group, same generator images.
    pub fn strict_eq(&self, other: &Representation<R>) -> bool
    where
        R: PartialEq,
    {
        self.group == other.group && self.ring == other.ring && self.gens == other.gens
    }
}

impl<R: FiniteRing> Representation<R> {
    /// Conjugacy test over a field: solves `P a(s) = b(s) P` for all
    /// generators and searches the solution space for an invertible `P`
    /// (exhaustively when it has at most `2^16` elements).
    pub fn equivalence(&self, other: &Representation<R>) -> Equivalence<R::Elem> {
        if self.group != other.group || self.n != other.n {
            return Equivalence::NotConjugate;
        }
        let n = self.n;
        let r = &self.ring;
        let mut rows = Vec::new();
        for (a, b) in self.gens.iter().zip(&other.gens) {
            // (P a - b P)_{ij} = sum_k P_ik a_kj - b_ik P_kj
            for i in 0..n {
                for j in 0..n {
                    let mut row = vec![r.zero(); n * n];
                    for k in 0..n {
                        row[i * n + k] = r.add(row[i * n + k], a.get(k, j));
                        row[k * n + j] = r.sub(row[k * n + j], b.get(i, k));
                    }
                    rows.push(row);
                }
            }
        }
        let basis = nullspace(r, &rows, n * n);
        if basis.is_empty() {
            return Equivalence::NotConjugate;
        }
        let els = r.elements();
        let q = els.len() as u64;
        let combine = |coeffs: &[R::Elem]| {
            let mut v = vec![r.zero(); n * n];
            for (c, b) in coeffs.iter().zip(&basis) {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = r.add(*x, r.mul(*c, y));
                }
            }
            Matrix { n, data: v }
        };
        let exhaustive = (basis.len() as u32) * (64 - q.leading_zeros()) <= 16;
        let total = if exhaustive { q.pow(basis.len() as u32) } else { 4096 };
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
        for idx in 0..total {
            let coeffs: Vec<R::Elem> = (0..basis.len())
                .map(|i| {
                    if exhaustive {
                        els[((idx / q.pow(i as u32)) % q) as usize]
                    } else {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        els[(state % q) as usize]
                    }
                })
                .collect();
            let p = combine(&coeffs);
            if r.mat_inverse(&p).is_ok() {
                return Equivalence::Conjugate(p);
            }
        }
        if exhaustive {
            Equivalence::NotConjugate
        } else {
            Equivalence::Undecided
        }
    }
}

impl<R: JsonRing> Representation<R> {
    pub fn to_json(&self) -> RepJson {
        RepJson {
            group: (*self.group).clone(),
            ring: self.ring.tag(),
            n: self.n,
            generator_images: self.gens.iter().map(|m| self.ring.wrap(m.clone())).collect(),
        }
    }

    pub fn from_json(j: RepJson) -> Result<Representation<R>, GroupError> {
        let mut ring = None;
        let mut gens = Vec::new();
        for (i, m) in j.generator_images.iter().enumerate() {
            let (r, x) = R::unwrap(m).ok_or_else(|| {
                GroupError::Malformed(format!("generator image {i} is over {}", m.tag().describe()))
            })?;
            if x.n != j.n {
                return Err(AlgebraError::Dimension(format!("image {i} has size {}", x.n)).into());
            }
            let declared_zp = j.ring == RingTag::Zmod { p: j.ring.characteristic_prime(), k: 1 }
                && r.tag() == RingTag::Fq { p: j.ring.characteristic_prime(), m: 1 };
            if r.tag() != j.ring && !declared_zp {
                return Err(GroupError::Malformed(format!(
                    "image {i} over {} but representation declares {}",
                    r.tag().describe(),
                    j.ring.describe()
                )));
            }
            ring.get_or_insert(r);
            gens.push(x);
        }
        let ring = match ring {
            Some(r) => r,
            None => R::from_tag(&j.ring)?,
        };
        if gens.is_empty() {
            return Ok(Representation::trivial(Arc::new(j.group), ring, j.n));
        }
        Representation::new(Arc::new(j.group), ring, gens)
    }
}

impl Representation<Fq> {
    pub fn field(&self) -> &Fq {
        &self.ring
    }
}

/// Representation JSON: `{"group":…, "ring":…, "n":…, "generator_images":[…]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub group: FiniteGroup,
    pub ring: RingTag,
    pub n: usize,
    pub generator_images: Vec<RingMatrix>,
}

impl RepJson {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("representations always serialize")
    }
}
