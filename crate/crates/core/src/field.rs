//! Coefficient fields.
//!
//! Algorithms in this crate are written against a field *context*: the
//! context owns whatever data arithmetic needs (a minimal polynomial, a
//! radicand) and elements are plain values. `Rationals` is the trivial
//! context; number fields, real embeddings and quadratic extensions live in
//! [`crate::numfield`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Q = BigRational;

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, q: &Q) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&Q::from_integer(n.into()))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Rough size of an element in bits, used to pick small pivots.
    fn height(&self, _a: &Self::Elem) -> u64 {
        0
    }
}

/// A field with a designated ordering (a real place).
pub trait OrderedField: Field {
    /// Sign of the element at the designated real place: -1, 0 or +1.
    fn sign(&self, a: &Self::Elem) -> i8;
}

/// A field that is a finite-dimensional Q-vector space with a fixed basis.
pub trait AlgebraicField: Field {
    fn degree(&self) -> usize;
    fn rational_coords(&self, a: &Self::Elem) -> Vec<Q>;
    fn from_rational_coords(&self, coords: &[Q]) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn from_rational(&self, q: &Q) -> Q {
        q.clone()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn inv(&self, a: &Q) -> Option<Q> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn height(&self, a: &Q) -> u64 {
        rational_height(a)
    }
}

impl OrderedField for Rationals {
    fn sign(&self, a: &Q) -> i8 {
        rational_sign(a)
    }
}

impl AlgebraicField for Rationals {
    fn degree(&self) -> usize {
        1
    }
    fn rational_coords(&self, a: &Q) -> Vec<Q> {
        vec![a.clone()]
    }
    fn from_rational_coords(&self, coords: &[Q]) -> Q {
        coords[0].clone()
    }
}

pub fn rational_sign(a: &Q) -> i8 {
    if a.is_zero() {
        0
    } else if a.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rational_height(a: &Q) -> u64 {
    a.numer().bits() + a.denom().bits()
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `"num/den"` with a positive denominator.
pub fn format_rational(a: &Q) -> String {
    format!("{}/{}", a.numer(), a.denom())
}

/// Parses `"num/den"` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Q::from_integer(n))
        }
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Decimal approximation, only for human-facing output.
pub fn approx_f64(a: &Q) -> f64 {
    use num_traits::ToPrimitive;
    a.to_f64().unwrap_or(f64::NAN)
}
