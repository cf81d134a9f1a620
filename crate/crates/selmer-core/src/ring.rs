//! Ring objects.
//!
//! Elements are plain values and all arithmetic goes through a ring value,
//! so a single element type can live in rings with different moduli.

use core::fmt::Debug;

/// A commutative ring with identity.
pub trait Ring: Clone {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Image of an integer under the canonical map Z -> R.
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u32;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `a + b * c`
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }
}

/// A field.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Number of elements.
    fn order(&self) -> u64;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// An integral domain with exact division, as needed by fraction-free elimination.
pub trait ExactDiv: Ring {
    /// `a / b` when `b` divides `a`, otherwise `None`.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
}

/// A finite field whose elements can be listed.
pub trait FiniteRing: Field {
    /// The element with index `i` in `0..order()`.
    fn elem(&self, i: u64) -> Self::Elem;
    fn index(&self, a: &Self::Elem) -> u64;
    fn elements(&self) -> ElemIter<'_, Self> {
        ElemIter { ring: self, next: 0 }
    }
}

pub struct ElemIter<'a, F: FiniteRing + ?Sized> {
    ring: &'a F,
    next: u64,
}

impl<F: FiniteRing> Iterator for ElemIter<'_, F> {
    type Item = F::Elem;
    fn next(&mut self) -> Option<F::Elem> {
        if self.next >= self.ring.order() {
            return None;
        }
        let e = self.ring.elem(self.next);
        self.next += 1;
        Some(e)
    }
}
