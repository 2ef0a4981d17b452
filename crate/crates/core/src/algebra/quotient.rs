use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FiniteRing, Fq, FqElem, Ring, RingTag, Witt2, WittElem};

/// `a + b t` in `W_2(F_4)[t]/(t^2 - 2, 2t)`; `b` lives in `F_4` since `2t = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct QElem {
    pub base: WittElem,
    pub t_coeff: FqElem,
}

impl fmt::Debug for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}+{:?}t", self.base, self.t_coeff)
    }
}

/// The 64-element ring `W_2(F_4)[t]/(t^2 - 2, 2t)`.
///
/// Structure constants: `a (d t) = a0 d t`, `(b t)(d t) = 2 [b d]`, and
/// `2 [c] = (0, c^2)` in `W_2(F_4)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientRing {
    witt: Witt2,
}

impl Default for QuotientRing {
    fn default() -> Self {
        Self::new()
    }
}

impl QuotientRing {
    pub fn new() -> QuotientRing {
        let witt = Witt2::over(2, 2).expect("W_2(F_4) is always constructible");
        QuotientRing { witt }
    }

    pub fn witt(&self) -> &Witt2 {
        &self.witt
    }

    pub fn field(&self) -> &Fq {
        self.witt.field()
    }

    pub fn t(&self) -> QElem {
        QElem { base: self.witt.zero(), t_coeff: self.field().one() }
    }

    pub fn embed(&self, a: WittElem) -> QElem {
        QElem { base: a, t_coeff: self.field().zero() }
    }

    /// Teichmüller image of an `F_4` element.
    pub fn teich(&self, c: FqElem) -> QElem {
        self.embed(self.witt.teichmuller(c))
    }

    /// Reduction modulo the maximal ideal `(t)`: `a + b t -> a0`.
    pub fn residue(&self, x: QElem) -> FqElem {
        x.base.a0
    }
}

impl Ring for QuotientRing {
    type Elem = QElem;

    fn zero(&self) -> QElem {
        QElem { base: self.witt.zero(), t_coeff: self.field().zero() }
    }
    fn one(&self) -> QElem {
        QElem { base: self.witt.one(), t_coeff: self.field().zero() }
    }
    fn add(&self, x: QElem, y: QElem) -> QElem {
        QElem {
            base: self.witt.add(x.base, y.base),
            t_coeff: self.field().add(x.t_coeff, y.t_coeff),
        }
    }
    fn neg(&self, x: QElem) -> QElem {
        QElem { base: self.witt.neg(x.base), t_coeff: x.t_coeff }
    }
    fn mul(&self, x: QElem, y: QElem) -> QElem {
        let f = self.field();
        let bd = f.mul(x.t_coeff, y.t_coeff);
        let base = self.witt.add(self.witt.mul(x.base, y.base), self.witt.p_times(bd));
        let t_coeff = f.add(f.mul(x.base.a0, y.t_coeff), f.mul(y.base.a0, x.t_coeff));
        QElem { base, t_coeff }
    }
    fn inv(&self, x: QElem) -> Option<QElem> {
        if x.base.a0 == self.field().zero() {
            return None;
        }
        let one = self.one();
        self.elements().into_iter().find(|&y| self.mul(x, y) == one)
    }
    fn tag(&self) -> RingTag {
        RingTag::Quotient64
    }
}

impl FiniteRing for QuotientRing {
    fn elements(&self) -> Vec<QElem> {
        let ws = self.witt.elements();
        let fs = self.field().elements();
        ws.iter()
            .flat_map(|&base| fs.iter().map(move |&t_coeff| QElem { base, t_coeff }))
            .collect()
    }
}
