use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Fq, FqElem, FqValue, Matrix, QElem, QuotientRing, Witt2, WittElem, WittValue, Zmod};
use crate::error::AlgebraError;

/// Identifies a coefficient ring in JSON and reports.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingTag {
    Fq { p: u32, m: u32 },
    Witt { p: u32, m: u32 },
    Zmod { p: u32, k: u32 },
    Quotient64,
}

impl RingTag {
    pub fn describe(&self) -> String {
        match self {
            RingTag::Fq { p, m } if *m == 1 => format!("F_{p}"),
            RingTag::Fq { p, m } => format!("F_{}", p.pow(*m)),
            RingTag::Witt { p, m } => format!("W_2(F_{})", p.pow(*m)),
            RingTag::Zmod { p, k } => format!("Z/{}", p.pow(*k)),
            RingTag::Quotient64 => "W_2(F_4)[t]/(t^2-2,2t)".into(),
        }
    }

    pub fn characteristic_prime(&self) -> u32 {
        match *self {
            RingTag::Fq { p, .. } | RingTag::Witt { p, .. } | RingTag::Zmod { p, .. } => p,
            RingTag::Quotient64 => 2,
        }
    }
}

/// A square matrix over one of the supported rings, with its ring attached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RingMatrix {
    Fq(Fq, Matrix<FqElem>),
    Witt(Witt2, Matrix<WittElem>),
    Zmod(Zmod, Matrix<u32>),
    Quotient(QuotientRing, Matrix<QElem>),
}

#[derive(Serialize, Deserialize)]
struct RingMatrixJson {
    ring: RingTag,
    n: usize,
    entries: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
struct QuotientJson {
    base: WittValue,
    t_coeff: FqValue,
}

fn malformed(e: impl std::fmt::Display) -> AlgebraError {
    AlgebraError::Malformed(e.to_string())
}

fn check_field(expected: &Fq, got: &Fq) -> Result<(), AlgebraError> {
    if expected != got {
        return Err(AlgebraError::FieldMismatch(expected.describe(), got.describe()));
    }
    Ok(())
}

impl RingMatrix {
    pub fn tag(&self) -> RingTag {
        use super::Ring;
        match self {
            RingMatrix::Fq(r, _) => r.tag(),
            RingMatrix::Witt(r, _) => r.tag(),
            RingMatrix::Zmod(r, _) => r.tag(),
            RingMatrix::Quotient(r, _) => r.tag(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            RingMatrix::Fq(_, m) => m.n,
            RingMatrix::Witt(_, m) => m.n,
            RingMatrix::Zmod(_, m) => m.n,
            RingMatrix::Quotient(_, m) => m.n,
        }
    }

    fn to_json(&self) -> RingMatrixJson {
        let entries = match self {
            RingMatrix::Fq(f, m) => m.data.iter().map(|&e| json(f.value(e))).collect(),
            RingMatrix::Witt(w, m) => m.data.iter().map(|&e| json(w.value(e))).collect(),
            RingMatrix::Zmod(_, m) => m.data.iter().map(|&e| Value::from(e)).collect(),
            RingMatrix::Quotient(q, m) => m
                .data
                .iter()
                .map(|&e| {
                    json(QuotientJson {
                        base: q.witt().value(e.base),
                        t_coeff: q.field().value(e.t_coeff),
                    })
                })
                .collect(),
        };
        RingMatrixJson { ring: self.tag(), n: self.dim(), entries }
    }

    fn from_json(j: RingMatrixJson) -> Result<RingMatrix, AlgebraError> {
        if j.n == 0 || j.entries.len() != j.n * j.n {
            return Err(AlgebraError::Dimension(format!(
                "{} entries for dimension {}",
                j.entries.len(),
                j.n
            )));
        }
        let n = j.n;
        Ok(match j.ring {
            RingTag::Fq { p, m } => {
                let f = Fq::new(p, m)?;
                let data = j
                    .entries
                    .into_iter()
                    .map(|v| {
                        let x: FqValue = serde_json::from_value(v).map_err(malformed)?;
                        check_field(&f, &x.field)?;
                        Ok(x.elem)
                    })
                    .collect::<Result<_, AlgebraError>>()?;
                RingMatrix::Fq(f, Matrix { n, data })
            }
            RingTag::Witt { p, m } => {
                let w = Witt2::over(p, m)?;
                let data = j
                    .entries
                    .into_iter()
                    .map(|v| {
                        let x: WittValue = serde_json::from_value(v).map_err(malformed)?;
                        check_field(w.field(), &x.a0.field)?;
                        check_field(w.field(), &x.a1.field)?;
                        Ok(x.elem())
                    })
                    .collect::<Result<_, AlgebraError>>()?;
                RingMatrix::Witt(w, Matrix { n, data })
            }
            RingTag::Zmod { p, k } => {
                let z = Zmod::new(p, k)?;
                let data = j
                    .entries
                    .into_iter()
                    .map(|v| {
                        let x = v.as_i64().ok_or_else(|| malformed("expected integer entry"))?;
                        Ok(z.reduce(x))
                    })
                    .collect::<Result<_, AlgebraError>>()?;
                RingMatrix::Zmod(z, Matrix { n, data })
            }
            RingTag::Quotient64 => {
                let q = QuotientRing::new();
                let data = j
                    .entries
                    .into_iter()
                    .map(|v| {
                        let x: QuotientJson = serde_json::from_value(v).map_err(malformed)?;
                        check_field(q.field(), &x.base.a0.field)?;
                        check_field(q.field(), &x.base.a1.field)?;
                        check_field(q.field(), &x.t_coeff.field)?;
                        Ok(QElem { base: x.base.elem(), t_coeff: x.t_coeff.elem })
                    })
                    .collect::<Result<_, AlgebraError>>()?;
                RingMatrix::Quotient(q, Matrix { n, data })
            }
        })
    }

    /// Reduction of a matrix over a length-2 lift to the residue field:
    /// first Witt coordinate, residue mod `p`, or residue mod `t`.
    pub fn reduce_mod_p(&self) -> Result<RingMatrix, AlgebraError> {
        match self {
            RingMatrix::Witt(w, m) => Ok(RingMatrix::Fq(w.field().clone(), m.map(|e| e.a0))),
            RingMatrix::Zmod(z, m) if z.exponent() == 2 => {
                let f = Fq::prime(z.prime())?;
                let p = z.prime();
                Ok(RingMatrix::Fq(f, m.map(|e| FqElem(e % p))))
            }
            RingMatrix::Quotient(q, m) => Ok(RingMatrix::Fq(q.field().clone(), m.map(|e| q.residue(e)))),
            _ => Err(AlgebraError::Unsupported(format!(
                "reduction is defined for length-2 lifts, not {}",
                self.tag().describe()
            ))),
        }
    }
}

/// Rings whose matrices convert to and from [`RingMatrix`].
pub trait JsonRing: super::Ring + Sized {
    fn wrap(&self, m: Matrix<Self::Elem>) -> RingMatrix;
    /// Extracts a matrix over this ring; `Z/p` matrices are accepted as `F_p`.
    fn unwrap(m: &RingMatrix) -> Option<(Self, Matrix<Self::Elem>)>;
    fn from_tag(tag: &RingTag) -> Result<Self, AlgebraError>;
}

fn tag_mismatch(tag: &RingTag) -> AlgebraError {
    AlgebraError::Malformed(format!("unexpected ring {}", tag.describe()))
}

impl JsonRing for Fq {
    fn wrap(&self, m: Matrix<FqElem>) -> RingMatrix {
        RingMatrix::Fq(self.clone(), m)
    }
    fn unwrap(m: &RingMatrix) -> Option<(Fq, Matrix<FqElem>)> {
        match m {
            RingMatrix::Fq(f, x) => Some((f.clone(), x.clone())),
            RingMatrix::Zmod(z, x) if z.exponent() == 1 => {
                Some((Fq::prime(z.prime()).ok()?, x.map(FqElem)))
            }
            _ => None,
        }
    }
    fn from_tag(tag: &RingTag) -> Result<Fq, AlgebraError> {
        match *tag {
            RingTag::Fq { p, m } => Fq::new(p, m),
            RingTag::Zmod { p, k: 1 } => Fq::prime(p),
            _ => Err(tag_mismatch(tag)),
        }
    }
}

impl JsonRing for Witt2 {
    fn wrap(&self, m: Matrix<WittElem>) -> RingMatrix {
        RingMatrix::Witt(self.clone(), m)
    }
    fn unwrap(m: &RingMatrix) -> Option<(Witt2, Matrix<WittElem>)> {
        match m {
            RingMatrix::Witt(w, x) => Some((w.clone(), x.clone())),
            _ => None,
        }
    }
    fn from_tag(tag: &RingTag) -> Result<Witt2, AlgebraError> {
        match *tag {
            RingTag::Witt { p, m } => Witt2::over(p, m),
            _ => Err(tag_mismatch(tag)),
        }
    }
}

impl JsonRing for Zmod {
    fn wrap(&self, m: Matrix<u32>) -> RingMatrix {
        RingMatrix::Zmod(*self, m)
    }
    fn unwrap(m: &RingMatrix) -> Option<(Zmod, Matrix<u32>)> {
        match m {
            RingMatrix::Zmod(z, x) => Some((*z, x.clone())),
            _ => None,
        }
    }
    fn from_tag(tag: &RingTag) -> Result<Zmod, AlgebraError> {
        match *tag {
            RingTag::Zmod { p, k } => Zmod::new(p, k),
            _ => Err(tag_mismatch(tag)),
        }
    }
}

impl JsonRing for QuotientRing {
    fn wrap(&self, m: Matrix<QElem>) -> RingMatrix {
        RingMatrix::Quotient(self.clone(), m)
    }
    fn unwrap(m: &RingMatrix) -> Option<(QuotientRing, Matrix<QElem>)> {
        match m {
            RingMatrix::Quotient(q, x) => Some((q.clone(), x.clone())),
            _ => None,
        }
    }
    fn from_tag(tag: &RingTag) -> Result<QuotientRing, AlgebraError> {
        match *tag {
            RingTag::Quotient64 => Ok(QuotientRing::new()),
            _ => Err(tag_mismatch(tag)),
        }
    }
}

fn json<T: Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("ring values always serialize")
}

impl Serialize for RingMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = RingMatrixJson::deserialize(d)?;
        RingMatrix::from_json(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteRing, MatrixOps, Ring};

    #[test]
    fn zmod_reduction_example() {
        let z = Zmod::new(2, 2).unwrap();
        let m = RingMatrix::Zmod(z, Matrix::from_rows(vec![vec![3, 1], vec![0, 1]]).unwrap());
        let RingMatrix::Fq(f, r) = m.reduce_mod_p().unwrap() else { panic!() };
        assert_eq!(f.order(), 2);
        assert_eq!(r.data, vec![FqElem(1), FqElem(1), FqElem(0), FqElem(1)]);
    }

    #[test]
    fn json_roundtrip_all_rings() {
        let w = Witt2::over(3, 2).unwrap();
        let e = w.elements();
        let mats = vec![
            RingMatrix::Witt(w.clone(), Matrix { n: 2, data: vec![e[5], e[17], e[40], e[80]] }),
            RingMatrix::Fq(Fq::new(2, 2).unwrap(), Matrix { n: 1, data: vec![FqElem(3)] }),
            RingMatrix::Zmod(Zmod::new(5, 2).unwrap(), Matrix { n: 1, data: vec![24] }),
            RingMatrix::Quotient(QuotientRing::new(), {
                let q = QuotientRing::new();
                Matrix { n: 1, data: vec![q.add(q.t(), q.one())] }
            }),
        ];
        for m in mats {
            let s = serde_json::to_string(&m).unwrap();
            let back: RingMatrix = serde_json::from_str(&s).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn json_shape_and_validation() {
        let f = Fq::new(2, 2).unwrap();
        let m = RingMatrix::Fq(f.clone(), f.mat_identity(1));
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["ring"]["kind"], "fq");
        assert_eq!(v["n"], 1);
        assert_eq!(v["entries"][0]["coords"], serde_json::json!([1, 0]));
        let bad = r#"{"ring":{"kind":"fq","p":2,"m":2},"n":2,"entries":[]}"#;
        assert!(serde_json::from_str::<RingMatrix>(bad).is_err());
        let mixed = r#"{"ring":{"kind":"fq","p":2,"m":2},"n":1,"entries":[{"p":2,"m":1,"coords":[1]}]}"#;
        assert!(serde_json::from_str::<RingMatrix>(mixed).is_err());
    }
}
