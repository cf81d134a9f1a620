//! Dual numbers `F[ε]/(ε²)`.

use crate::ring::{Field, FiniteRing, Ring};

/// `a + bε`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Dual<E> {
    pub a: E,
    pub b: E,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualRing<F> {
    pub base: F,
}

impl<F: Field> DualRing<F> {
    pub fn new(base: F) -> Self {
        DualRing { base }
    }

    pub fn make(&self, a: F::Elem, b: F::Elem) -> Dual<F::Elem> {
        Dual { a, b }
    }

    /// Constant lift of a residue.
    pub fn lift(&self, a: &F::Elem) -> Dual<F::Elem> {
        Dual { a: a.clone(), b: self.base.zero() }
    }

    pub fn epsilon(&self) -> Dual<F::Elem> {
        Dual { a: self.base.zero(), b: self.base.one() }
    }

    pub fn is_unit(&self, x: &Dual<F::Elem>) -> bool {
        !self.base.is_zero(&x.a)
    }

    /// `(a + bε)^{-1} = a^{-1} - b a^{-2} ε`.
    pub fn inv(&self, x: &Dual<F::Elem>) -> Option<Dual<F::Elem>> {
        let ai = self.base.inv(&x.a)?;
        let b = self.base.neg(&self.base.mul(&x.b, &self.base.mul(&ai, &ai)));
        Some(Dual { a: ai, b })
    }
}

impl<F: Field> Ring for DualRing<F> {
    type Elem = Dual<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Dual { a: self.base.zero(), b: self.base.zero() }
    }

    fn one(&self) -> Self::Elem {
        Dual { a: self.base.one(), b: self.base.zero() }
    }

    #[inline]
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        Dual { a: self.base.add(&x.a, &y.a), b: self.base.add(&x.b, &y.b) }
    }

    #[inline]
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        Dual { a: self.base.sub(&x.a, &y.a), b: self.base.sub(&x.b, &y.b) }
    }

    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        Dual { a: self.base.neg(&x.a), b: self.base.neg(&x.b) }
    }

    #[inline]
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let b = self.base.add(&self.base.mul(&x.a, &y.b), &self.base.mul(&x.b, &y.a));
        Dual { a: self.base.mul(&x.a, &y.a), b }
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.base.is_zero(&x.a) && self.base.is_zero(&x.b)
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        Dual { a: self.base.from_i64(n), b: self.base.zero() }
    }

    fn characteristic(&self) -> u32 {
        self.base.characteristic()
    }
}

impl<F: FiniteRing> DualRing<F> {
    pub fn order(&self) -> u64 {
        self.base.order() * self.base.order()
    }

    /// Element number `i` in `0..q²`, residue varying fastest.
    pub fn elem(&self, i: u64) -> Dual<F::Elem> {
        let q = self.base.order();
        Dual { a: self.base.elem(i % q), b: self.base.elem(i / q) }
    }
}
