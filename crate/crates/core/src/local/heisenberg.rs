//! Unitriangular representations of the one-relator pro-`p` group
//! `<g_1, ..., g_d | g_1^{p^s} [g_1, g_2] ... [g_{d-1}, g_d]>`, whose
//! commutator pairing is the Gram form of [`LocalModel`].

use serde::{Deserialize, Serialize};

use super::model::{cup, lift_orthogonal_pair, KummerClass, LocalModel};
use crate::algebra::{Matrix, MatrixOps, Zmod};
use crate::error::LocalError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergRep {
    pub model: LocalModel,
    pub level: u32,
    /// One `3 x 3` matrix over `Z/p^level` per generator.
    pub images: Vec<Matrix<u32>>,
}

fn ring(model: &LocalModel, level: u32) -> Zmod {
    Zmod::new(model.p, level).expect("odd prime modulus")
}

/// `g_1^{p^s} [g_1, g_2] ... [g_{d-1}, g_d]` evaluated on `images`.
pub fn relation_image(model: &LocalModel, level: u32, images: &[Matrix<u32>]) -> Result<Matrix<u32>, LocalError> {
    let r = ring(model, level);
    let n = images.first().map_or(1, |m| m.n);
    let mut acc = r.mat_pow(&images[0], (model.p as u64).pow(model.s));
    for pair in images.chunks(2) {
        let c = r
            .mat_commutator(&pair[0], &pair[1])
            .map_err(|_| LocalError::InvalidRep("image is not invertible".into()))?;
        acc = r.mat_mul(&acc, &c);
    }
    debug_assert_eq!(acc.n, n);
    Ok(acc)
}

fn unitriangular(a: u32, b: u32, c: u32) -> Matrix<u32> {
    Matrix { n: 3, data: vec![1, a, c, 0, 1, b, 0, 0, 1] }
}

impl HeisenbergRep {
    /// Checks level, shape, unitriangularity and that the relation maps to `I`.
    pub fn validate(&self) -> Result<(), LocalError> {
        let q = self.model.modulus(self.level);
        if self.images.len() != self.model.d {
            return Err(LocalError::InvalidRep(format!("{} images for {} generators", self.images.len(), self.model.d)));
        }
        for (j, m) in self.images.iter().enumerate() {
            let shape = m.n == 3
                && m.data.len() == 9
                && m.data.iter().all(|&x| x < q)
                && [m.get(0, 0), m.get(1, 1), m.get(2, 2)] == [1, 1, 1]
                && [m.get(1, 0), m.get(2, 0), m.get(2, 1)] == [0, 0, 0];
            if !shape {
                return Err(LocalError::InvalidRep(format!("image of g{} is not unitriangular mod {q}", j + 1)));
            }
        }
        let r = relation_image(&self.model, self.level, &self.images)?;
        if !ring(&self.model, self.level).mat_is_identity(&r) {
            return Err(LocalError::InvalidRep("the defining relation does not map to I".into()));
        }
        Ok(())
    }

    fn entry_class(&self, i: usize, j: usize) -> KummerClass {
        KummerClass { model: self.model, level: self.level, coords: self.images.iter().map(|m| m.get(i, j)).collect() }
    }

    /// Character in position `(1, 2)`.
    pub fn x1(&self) -> KummerClass {
        self.entry_class(0, 1)
    }

    /// Character in position `(2, 3)`.
    pub fn x2(&self) -> KummerClass {
        self.entry_class(1, 2)
    }

    /// Corner entries `phi(g_j)`.
    pub fn corner(&self) -> KummerClass {
        self.entry_class(0, 2)
    }

    /// Entrywise reduction to level 1.
    pub fn reduce(&self) -> HeisenbergRep {
        let p = self.model.p;
        HeisenbergRep { model: self.model, level: 1, images: self.images.iter().map(|m| m.map(|x| x % p)).collect() }
    }
}

/// Generator images with characters `x1`, `x2` and corner entries solved so
/// that the relation maps to `I`, starting from `corner`. The corner of the
/// relation's image is affine in the corner entries; when its linear part
/// vanishes the constant term must already be zero.
fn solve_corners(
    x1: &KummerClass,
    x2: &KummerClass,
    corner: &KummerClass,
) -> Result<HeisenbergRep, LocalError> {
    let model = x1.model;
    let level = x1.level;
    let r = ring(&model, level);
    let q = model.modulus(level);
    let build = |c: &[u32]| -> Vec<Matrix<u32>> {
        (0..model.d).map(|j| unitriangular(x1.coords[j], x2.coords[j], c[j])).collect()
    };
    let mut c = corner.coords.clone();
    let base = relation_image(&model, level, &build(&c))?;
    let off_corner = [base.get(0, 1), base.get(1, 2)];
    if off_corner != [0, 0] {
        return Err(LocalError::InvalidRep(format!("relation has superdiagonal {off_corner:?}; characters do not kill it")));
    }
    let constant = base.get(0, 2);
    if constant != 0 {
        let slopes: Vec<u32> = (0..model.d)
            .map(|j| {
                let mut cj = c.clone();
                cj[j] = (cj[j] + 1) % q;
                let moved = relation_image(&model, level, &build(&cj)).expect("unitriangular images");
                (moved.get(0, 2) + q - constant) % q
            })
            .collect();
        let Some(j) = slopes.iter().position(|&s| s % model.p != 0) else {
            return Err(LocalError::CupObstruction(cup(&x1.pi(), &x2.pi())?.value));
        };
        let inv = (1..q).find(|&v| (v as u64 * slopes[j] as u64) % q as u64 == 1).expect("unit slope");
        let shift = ((q - constant) as u64 * inv as u64 % q as u64) as u32;
        c[j] = (c[j] + shift) % q;
    }
    let rep = HeisenbergRep { model, level, images: build(&c) };
    debug_assert!(r.mat_is_identity(&relation_image(&model, level, &rep.images)?));
    rep.validate()?;
    Ok(rep)
}

/// Mod-`p` Heisenberg representation with superdiagonal characters `x1`,
/// `x2` and corner entries `twist` (adjusted if the relation requires it).
/// Reps with the same characters are in bijection with the twists.
pub fn heisenberg_build(
    x1: &KummerClass,
    x2: &KummerClass,
    twist: &KummerClass,
) -> Result<HeisenbergRep, LocalError> {
    for c in [x2, twist] {
        if c.model != x1.model {
            return Err(LocalError::ModelMismatch);
        }
    }
    for c in [x1, x2, twist] {
        if c.level != 1 {
            return Err(LocalError::LevelMismatch(c.level, 1));
        }
    }
    let obstruction = cup(x1, x2)?.value;
    if obstruction != 0 {
        return Err(LocalError::CupObstruction(obstruction));
    }
    solve_corners(x1, x2, twist)
}

/// Mod-`p^2` Heisenberg representation reducing to `rhobar`: orthogonal
/// level-2 lifts of the characters, corners solved mod `p^2`, then the
/// corner character shifted by a lift of the remaining mod-`p` difference.
pub fn heisenberg_lift(rhobar: &HeisenbergRep) -> Result<HeisenbergRep, LocalError> {
    if rhobar.level != 1 {
        return Err(LocalError::LevelMismatch(rhobar.level, 1));
    }
    rhobar.validate()?;
    let (t1, t2) = lift_orthogonal_pair(&rhobar.x1(), &rhobar.x2())?;
    let first = solve_corners(&t1, &t2, &rhobar.model.zero(2))?;
    let diff = rhobar.corner().sub(&first.corner().pi())?;
    let lifted = solve_corners(&t1, &t2, &first.corner().add(&diff.digit_lift())?)?;
    if lifted.reduce() != *rhobar {
        return Err(LocalError::InvalidRep("lift does not reduce to the input".into()));
    }
    Ok(lifted)
}

/// A character as a `2 x 2` unitriangular representation at levels 1 and 2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Unipotent2Lift {
    pub level1: Vec<Matrix<u32>>,
    pub level2: Vec<Matrix<u32>>,
}

/// Lift of `g_j -> (1 x_j; 0 1)` to `Z/p^2` through the digit lift of `x`.
pub fn lift_unipotent2(x: &KummerClass) -> Result<Unipotent2Lift, LocalError> {
    if x.level != 1 {
        return Err(LocalError::LevelMismatch(x.level, 1));
    }
    let model = x.model;
    let lift = x.digit_lift();
    let images = |c: &KummerClass| -> Vec<Matrix<u32>> {
        c.coords.iter().map(|&v| Matrix { n: 2, data: vec![1, v, 0, 1] }).collect()
    };
    let out = Unipotent2Lift { level1: images(x), level2: images(&lift) };
    for (level, imgs) in [(1, &out.level1), (2, &out.level2)] {
        if !ring(&model, level).mat_is_identity(&relation_image(&model, level, imgs)?) {
            return Err(LocalError::InvalidRep(format!("relation fails at level {level}")));
        }
    }
    if out.level2.iter().map(|m| m.map(|v| v % model.p)).ne(out.level1.iter().cloned()) {
        return Err(LocalError::InvalidRep("level-2 images do not reduce to level 1".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m() -> LocalModel {
        LocalModel::new(3, 4, 2).unwrap()
    }

    #[test]
    fn build_examples() {
        let m = m();
        let rep = heisenberg_build(&m.basis(1, 0), &m.basis(1, 2), &m.zero(1)).unwrap();
        assert_eq!(rep.images[0], unitriangular(1, 0, 0));
        assert_eq!(rep.images[2], unitriangular(0, 1, 0));
        assert_eq!(rep.images[1], unitriangular(0, 0, 0));
        let err = heisenberg_build(&m.basis(1, 0), &m.basis(1, 1), &m.zero(1));
        assert!(matches!(err, Err(LocalError::CupObstruction(1))));
        let z = m.class(1, &[1, 2, 0, 1]).unwrap();
        let abelian = heisenberg_build(&m.zero(1), &m.zero(1), &z).unwrap();
        assert_eq!(abelian.corner(), z);
    }

    #[test]
    fn lift_examples() {
        let m = m();
        let z = m.class(1, &[1, 2, 0, 1]).unwrap();
        let abelian = heisenberg_build(&m.zero(1), &m.zero(1), &z).unwrap();
        let lift = heisenberg_lift(&abelian).unwrap();
        assert_eq!(lift.corner().pi(), z);
        let rep = heisenberg_build(&m.basis(1, 0), &m.basis(1, 2), &m.zero(1)).unwrap();
        let lift = heisenberg_lift(&rep).unwrap();
        lift.validate().unwrap();
        assert_eq!(lift.reduce(), rep);
    }

    #[test]
    fn p_power_term_vanishes() {
        let m = m();
        let r = ring(&m, 2);
        let g = unitriangular(1, 1, 0);
        assert!(r.mat_is_identity(&r.mat_pow(&g, 9)));
        let m1 = LocalModel { s: 1, ..m };
        let r = ring(&m1, 2);
        assert!(!r.mat_is_identity(&r.mat_pow(&g, 3)));
    }

    #[test]
    fn unipotent2_examples() {
        let m = m();
        let out = lift_unipotent2(&m.zero(1)).unwrap();
        assert!(out.level2.iter().all(|x| x.data == vec![1, 0, 0, 1]));
        let out = lift_unipotent2(&m.basis(1, 0)).unwrap();
        assert_eq!(out.level2[0].data, vec![1, 1, 0, 1]);
    }
}
