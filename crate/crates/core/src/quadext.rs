//! A single quadratic layer `K(√r)` over an ordered field `K`.
//!
//! Elements are pairs `a + b√r`. The radicand must be positive at the
//! designated place of `K` (so `√r` is real, taken positive) and must not be
//! a square in `K`; callers certify the latter.

use crate::error::{Error, Result};
use crate::field::{AlgebraicField, Field, OrderedField, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem<E> {
    pub a: E,
    pub b: E,
}

#[derive(Clone, Debug)]
pub struct QuadraticExtension<K: Field> {
    base: K,
    radicand: K::Elem,
}

impl<K: OrderedField> QuadraticExtension<K> {
    /// `r` must be positive at the designated place and a non-square in `K`.
    pub fn new(base: K, radicand: K::Elem) -> Result<Self> {
        if base.sign(&radicand) <= 0 {
            return Err(Error::InvalidPeriod(
                "radicand of the quadratic layer must be positive".into(),
            ));
        }
        Ok(QuadraticExtension { base, radicand })
    }
}

impl<K: Field> QuadraticExtension<K> {
    pub fn base(&self) -> &K {
        &self.base
    }

    pub fn radicand(&self) -> &K::Elem {
        &self.radicand
    }

    pub fn lift(&self, a: &K::Elem) -> QuadElem<K::Elem> {
        QuadElem {
            a: a.clone(),
            b: self.base.zero(),
        }
    }

    /// `√r`.
    pub fn sqrt_radicand(&self) -> QuadElem<K::Elem> {
        QuadElem {
            a: self.base.zero(),
            b: self.base.one(),
        }
    }

    pub fn conjugate(&self, x: &QuadElem<K::Elem>) -> QuadElem<K::Elem> {
        QuadElem {
            a: x.a.clone(),
            b: self.base.neg(&x.b),
        }
    }

    /// `a² - r b²`.
    pub fn relative_norm(&self, x: &QuadElem<K::Elem>) -> K::Elem {
        let k = &self.base;
        k.sub(&k.mul(&x.a, &x.a), &k.mul(&self.radicand, &k.mul(&x.b, &x.b)))
    }
}

impl<K: Field> Field for QuadraticExtension<K> {
    type Elem = QuadElem<K::Elem>;

    fn zero(&self) -> Self::Elem {
        self.lift(&self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.lift(&self.base.one())
    }
    fn from_rational(&self, q: &Q) -> Self::Elem {
        self.lift(&self.base.from_rational(q))
    }
    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.base.is_zero(&x.a) && self.base.is_zero(&x.b)
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        QuadElem {
            a: self.base.add(&x.a, &y.a),
            b: self.base.add(&x.b, &y.b),
        }
    }
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        QuadElem {
            a: self.base.sub(&x.a, &y.a),
            b: self.base.sub(&x.b, &y.b),
        }
    }
    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        QuadElem {
            a: self.base.neg(&x.a),
            b: self.base.neg(&x.b),
        }
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        let bb = k.mul(&x.b, &y.b);
        QuadElem {
            a: k.add(&k.mul(&x.a, &y.a), &k.mul(&self.radicand, &bb)),
            b: k.add(&k.mul(&x.a, &y.b), &k.mul(&x.b, &y.a)),
        }
    }
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem> {
        let n = self.relative_norm(x);
        let ni = self.base.inv(&n)?;
        let c = self.conjugate(x);
        Some(QuadElem {
            a: self.base.mul(&c.a, &ni),
            b: self.base.mul(&c.b, &ni),
        })
    }
    fn height(&self, x: &Self::Elem) -> u64 {
        self.base.height(&x.a) + self.base.height(&x.b)
    }
}

impl<K: OrderedField> OrderedField for QuadraticExtension<K> {
    fn sign(&self, x: &Self::Elem) -> i8 {
        let k = &self.base;
        let sa = k.sign(&x.a);
        let sb = k.sign(&x.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // opposite signs: compare a² with r b²
        let d = k.sign(&self.relative_norm(x));
        sa * d
    }
}

impl<K: AlgebraicField> AlgebraicField for QuadraticExtension<K> {
    fn degree(&self) -> usize {
        2 * self.base.degree()
    }
    fn rational_coords(&self, x: &Self::Elem) -> Vec<Q> {
        let mut c = self.base.rational_coords(&x.a);
        c.extend(self.base.rational_coords(&x.b));
        c
    }
    fn from_rational_coords(&self, coords: &[Q]) -> Self::Elem {
        let n = self.base.degree();
        QuadElem {
            a: self.base.from_rational_coords(&coords[..n]),
            b: self.base.from_rational_coords(&coords[n..]),
        }
    }
}
