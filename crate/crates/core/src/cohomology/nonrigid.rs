//! A lift of the `Z/4 x Z/2` representation over `F_4` to the 64-element
//! ring `W_2(F_4)[t]/(t^2 - 2, 2t)`, where `t` plays `sqrt 2`. The
//! representation does not lift to `W_2(F_4)`, so it is not strongly rigid
//! in the strict sense even though the obstruction class is nonzero.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{JsonRing, Matrix, MatrixOps, QElem, QuotientRing, Ring, RingMatrix};
use crate::error::LiftError;
use crate::groups::{abelian_group, two_powers_rep, Representation};
use crate::witnesses::lift_power_of_two;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonrigidCheck {
    pub name: String,
    pub passed: bool,
}

/// Every matrix in the construction plus the outcome of each check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonrigidReport {
    /// `X` with `(I + X)^4 = I`, from the companion matrix of `(u^2+1)(u+1)(u-1)`.
    pub x: RingMatrix,
    /// `X^4`, which equals `2 X^2`.
    pub x4: RingMatrix,
    /// `Y = t X + [w] X^2`.
    pub y: RingMatrix,
    pub i_plus_y_squared: RingMatrix,
    pub commutator: RingMatrix,
    /// Reductions of `I + X` and `I + Y` to `F_4`.
    pub reduction: Vec<RingMatrix>,
    pub checks: Vec<NonrigidCheck>,
}

impl NonrigidReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Recomputes the order, commutator and reduction checks from the
    /// stored `X` and `Y`.
    pub fn recheck(&self) -> Result<(), String> {
        let (RingMatrix::Quotient(r, x), RingMatrix::Quotient(_, y)) = (&self.x, &self.y) else {
            return Err("X and Y must be over the 64-element ring".into());
        };
        if x.n != 4 || y.n != 4 {
            return Err("X and Y must be 4 x 4".into());
        }
        let id = r.mat_identity(4);
        let a = r.mat_add(&id, x);
        let b = r.mat_add(&id, y);
        if !r.mat_is_identity(&r.mat_pow(&a, 4)) || r.mat_is_identity(&r.mat_pow(&a, 2)) {
            return Err("I + X does not have order 4".into());
        }
        if !r.mat_is_identity(&r.mat_pow(&b, 2)) {
            return Err("(I + Y)^2 != I".into());
        }
        let c = r.mat_commutator(&a, &b).map_err(|e| e.to_string())?;
        if !r.mat_is_identity(&c) {
            return Err("I + X and I + Y do not commute".into());
        }
        let target = two_powers_rep(2, 1).map_err(|e| e.to_string())?;
        for (m, t) in [&a, &b].into_iter().zip(target.generator_images()) {
            if m.map(|e| r.residue(e)) != *t {
                return Err("reduction is not two_powers_rep(2, 1)".into());
            }
        }
        Ok(())
    }
}

fn residue(r: &QuotientRing, m: &Matrix<QElem>) -> RingMatrix {
    RingMatrix::Fq(r.field().clone(), m.map(|e| r.residue(e)))
}

/// Builds `X` and `Y` and checks `(I+X)^4 = I`, `(I+Y)^2 = I`,
/// `[I+X, I+Y] = I`, `X^4 = 2X^2`, and that `I+X`, `I+Y` reduce to the
/// generator images of `two_powers_rep(2, 1)`.
pub fn nonrigid_lift_check() -> Result<NonrigidReport, LiftError> {
    let r = QuotientRing::new();
    let witness = lift_power_of_two(2, 4)?;
    let z4 = witness
        .lift_matrix()
        .ok_or_else(|| LiftError::Construction("power-of-two lift is not over Z/4".into()))?;
    let id = r.mat_identity(4);
    let x = r.mat_sub(&z4.map(|v| r.from_int(v as i64)), &id);
    let target = two_powers_rep(2, 1)?;
    let w = r.teich(target.field().basis(1));
    let x2 = r.mat_mul(&x, &x);
    let x4 = r.mat_mul(&x2, &x2);
    let y = r.mat_add(&r.mat_scale(r.t(), &x), &r.mat_scale(w, &x2));
    let a = r.mat_add(&id, &x);
    let b = r.mat_add(&id, &y);
    let b2 = r.mat_mul(&b, &b);
    let commutator = r.mat_commutator(&a, &b)?;

    let residues: Vec<RingMatrix> = [&a, &b].iter().map(|m| residue(&r, m)).collect();
    let reduces = residues
        .iter()
        .zip(target.generator_images())
        .all(|(m, t)| matches!(m, RingMatrix::Fq(_, red) if red == t));
    let omega_x2 = {
        let f = target.field();
        let xbar = crate::groups::nilpotent_shift(f, 4);
        f.mat_scale(f.basis(1), &f.mat_mul(&xbar, &xbar))
    };
    let y_reduces = matches!(residue(&r, &y), RingMatrix::Fq(_, red) if red == omega_x2);
    let group = Arc::new(abelian_group(&[4, 2])?);
    let is_hom = Representation::new(group, r.clone(), vec![a.clone(), b.clone()]).is_ok();

    let check = |name: &str, passed: bool| NonrigidCheck { name: name.into(), passed };
    let checks = vec![
        check("(I+X)^4 = I", r.mat_is_identity(&r.mat_pow(&a, 4))),
        check("X^4 = 2X^2", x4 == r.mat_scale(r.from_int(2), &x2)),
        check("Y reduces to w x^2", y_reduces),
        check("(I+Y)^2 = I", r.mat_is_identity(&b2)),
        check("[I+X, I+Y] = I", r.mat_is_identity(&commutator)),
        check("reduction is two_powers_rep(2, 1)", reduces),
        check("Z/4 x Z/2 -> GL_4(R) is a homomorphism", is_hom),
    ];
    Ok(NonrigidReport {
        x: r.wrap(x),
        x4: r.wrap(x4),
        y: r.wrap(y),
        i_plus_y_squared: r.wrap(b2),
        commutator: r.wrap(commutator),
        reduction: residues,
        checks,
    })
}
