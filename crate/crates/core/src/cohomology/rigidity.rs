//! Strong rigidity: the representation does not lift and `H^1(G, Ad) = 0`.

use serde::{Deserialize, Serialize};

use super::coboundary::{certify, ObstructionCertificate, Verdict};
use super::h1::{h1_dimension, H1Mode};
use super::module::FpModule;
use crate::algebra::Fq;
use crate::error::GroupError;
use crate::groups::Representation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rigidity {
    StronglyRigid,
    NotStronglyRigid,
}

/// Both sub-verdicts of the rigidity criterion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RigidityReport {
    pub verdict: Rigidity,
    pub obstructed: bool,
    /// `dim_k H^1(G, Ad)`.
    pub h1: usize,
    pub certificate: ObstructionCertificate,
}

pub fn is_strongly_rigid(rep: &Representation<Fq>, mode: H1Mode) -> Result<RigidityReport, GroupError> {
    let certificate = certify(rep)?;
    let obstructed = certificate.verdict == Verdict::Obstructed;
    let h1 = h1_dimension(&FpModule::adjoint(rep), mode);
    let verdict = if obstructed && h1 == 0 { Rigidity::StronglyRigid } else { Rigidity::NotStronglyRigid };
    Ok(RigidityReport { verdict, obstructed, h1, certificate })
}
