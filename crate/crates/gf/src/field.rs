use crate::ext::{ExtElem, ExtField};
use crate::tower::{Fq, Tower};
use std::fmt::Debug;
use std::hash::Hash;

/// Field arithmetic shared by the Zech tower and the large polynomial-basis fields, so
/// series and matrix code can be written once.
pub trait FieldOps: Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, c: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// `a^{q^i}`.
    fn frob(&self, a: &Self::Elem, i: i64) -> Self::Elem;
}

impl FieldOps for Tower {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq::ZERO
    }
    fn one(&self) -> Fq {
        Fq::ONE
    }
    fn from_i64(&self, c: i64) -> Fq {
        Tower::from_i64(self, c)
    }
    fn is_zero(&self, a: &Fq) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Tower::add(self, *a, *b)
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        Tower::sub(self, *a, *b)
    }
    fn neg(&self, a: &Fq) -> Fq {
        Tower::neg(self, *a)
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        Tower::mul(self, *a, *b)
    }
    fn inv(&self, a: &Fq) -> Option<Fq> {
        Tower::inv(self, *a)
    }
    fn frob(&self, a: &Fq, i: i64) -> Fq {
        Tower::frob(self, *a, i)
    }
}

impl FieldOps for ExtField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtField::zero(self)
    }
    fn one(&self) -> ExtElem {
        ExtField::one(self)
    }
    fn from_i64(&self, c: i64) -> ExtElem {
        ExtField::from_u64(self, c.rem_euclid(self.p() as i64) as u64)
    }
    fn is_zero(&self, a: &ExtElem) -> bool {
        ExtField::is_zero(self, a)
    }
    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtField::add(self, a, b)
    }
    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtField::sub(self, a, b)
    }
    fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtField::neg(self, a)
    }
    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtField::mul(self, a, b)
    }
    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        ExtField::inv(self, a)
    }
    fn frob(&self, a: &ExtElem, i: i64) -> ExtElem {
        ExtField::frob(self, a, i)
    }
}
