//! Univariate polynomials over Q, Sturm sequences and real root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{rational_sign, Q};

/// Polynomial with rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients; otherwise the leading one is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// `X`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            let c = &rem[i] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &c * dc;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(Q::one()), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::constant(Q::one()));
        while !r1.is_zero() {
            let (qt, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&qt.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&qt.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            Some(l) => {
                let li = l.recip();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
            None => (r0, s0, t0),
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Integer multiple of `self` with coprime integer coefficients.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Interval enclosure of `self` over `[lo, hi]`.
    pub fn eval_interval(&self, lo: &Q, hi: &Q) -> (Q, Q) {
        let mut acc = (Q::zero(), Q::zero());
        for c in self.coeffs.iter().rev() {
            let prods = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let mn = prods.iter().min().unwrap().clone();
            let mx = prods.iter().max().unwrap().clone();
            acc = (mn + c, mx + c);
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while let Some(last) = seq.last() {
        if last.is_zero() {
            seq.pop();
            break;
        }
        let prev = &seq[seq.len() - 2];
        let r = prev.rem(last).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

/// Number of sign changes of the sequence evaluated at `x`, zeros dropped.
pub fn sign_variations(seq: &[Poly], x: &Q) -> usize {
    count_variations(seq.iter().map(|p| rational_sign(&p.eval(x))))
}

fn variations_at_infinity(seq: &[Poly], positive: bool) -> usize {
    count_variations(seq.iter().map(|p| {
        let s = rational_sign(p.leading().unwrap());
        let odd = p.degree().unwrap() % 2 == 1;
        if positive || !odd {
            s
        } else {
            -s
        }
    }))
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn count_real_roots(p: &Poly) -> usize {
    let seq = sturm_sequence(p);
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Number of roots in the half-open interval `(lo, hi]`.
pub fn count_roots_in(seq: &[Poly], lo: &Q, hi: &Q) -> usize {
    sign_variations(seq, lo) - sign_variations(seq, hi)
}

/// Closed interval with rational endpoints; `lo == hi` marks an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootInterval {
    pub lo: Q,
    pub hi: Q,
}

impl RootInterval {
    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Integer `B` such that every real root lies in `(-B, B)`.
fn cauchy_bound(p: &Poly) -> BigInt {
    let lead = p.leading().unwrap().abs();
    let m = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Q::zero);
    (m + Q::one()).ceil().to_integer() + BigInt::one()
}

/// Isolates the real roots of a squarefree polynomial.
///
/// Intervals are returned in increasing order. Splitting is done on integer
/// points first, so every irrational root ends up in a unit interval
/// `[k, k+1]` unless two roots share one, and integer roots come back exact.
pub fn isolate_real_roots(p: &Poly) -> Result<Vec<RootInterval>> {
    if p.degree().is_none_or(|d| d == 0) {
        return Err(Error::NotMonic);
    }
    if !p.is_squarefree() {
        return Err(Error::NonSquarefree {
            gcd: p.gcd(&p.derivative()).to_string(),
        });
    }
    let seq = sturm_sequence(p);
    let b = Q::from_integer(cauchy_bound(p));
    let lo = -b.clone();
    let mut out = Vec::new();
    let total = count_roots_in(&seq, &lo, &b);
    isolate_in(p, &seq, lo, b, total, &mut out);
    Ok(out)
}

/// Isolates the `count` roots in the open interval `(lo, hi)`; `p(lo), p(hi) != 0`
/// or the endpoint roots were already recorded.
fn isolate_in(p: &Poly, seq: &[Poly], lo: Q, hi: Q, count: usize, out: &mut Vec<RootInterval>) {
    if count == 0 {
        return;
    }
    let width = &hi - &lo;
    if count == 1 && width <= Q::one() && !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() {
        out.push(RootInterval { lo, hi });
        return;
    }
    let mid = if width > Q::one() {
        ((&lo + &hi) / Q::from_integer(2.into())).floor()
    } else {
        (&lo + &hi) / Q::from_integer(2.into())
    };
    let mid = if mid <= lo || mid >= hi {
        (&lo + &hi) / Q::from_integer(2.into())
    } else {
        mid
    };
    let at_mid = p.eval(&mid).is_zero();
    let left = count_roots_in(seq, &lo, &mid) - usize::from(at_mid);
    let right = count - left - usize::from(at_mid);
    isolate_in(p, seq, lo, mid.clone(), left, out);
    if at_mid {
        out.push(RootInterval {
            lo: mid.clone(),
            hi: mid.clone(),
        });
    }
    isolate_in(p, seq, mid, hi, right, out);
}

/// Halves an isolating interval, keeping the half containing the root.
pub fn bisect_root(p: &Poly, iv: &RootInterval) -> RootInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let mid = (&iv.lo + &iv.hi) / Q::from_integer(2.into());
    let sm = rational_sign(&p.eval(&mid));
    if sm == 0 {
        return RootInterval {
            lo: mid.clone(),
            hi: mid,
        };
    }
    let slo = rational_sign(&p.eval(&iv.lo));
    // An endpoint may itself be a root only for exact intervals, handled above.
    if slo != 0 && slo != sm {
        RootInterval {
            lo: iv.lo.clone(),
            hi: mid,
        }
    } else {
        RootInterval {
            lo: mid,
            hi: iv.hi.clone(),
        }
    }
}

/// Checks that `iv` contains exactly one root of `p` (counted on the closed interval).
pub fn is_isolating(p: &Poly, iv: &RootInterval) -> bool {
    if iv.lo > iv.hi {
        return false;
    }
    if iv.is_exact() {
        return p.eval(&iv.lo).is_zero();
    }
    let seq = sturm_sequence(p);
    let at_lo = usize::from(p.eval(&iv.lo).is_zero());
    count_roots_in(&seq, &iv.lo, &iv.hi) + at_lo == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{q, q_frac};

    fn iv(lo: i64, hi: i64) -> RootInterval {
        RootInterval { lo: q(lo), hi: q(hi) }
    }

    #[test]
    fn isolate_x2_minus_5() {
        let p = Poly::from_ints(&[-5, 0, 1]);
        assert_eq!(isolate_real_roots(&p).unwrap(), vec![iv(-3, -2), iv(2, 3)]);
    }

    #[test]
    fn isolate_linear_and_no_real_roots() {
        assert_eq!(isolate_real_roots(&Poly::from_ints(&[-1, 1])).unwrap(), vec![iv(1, 1)]);
        assert!(isolate_real_roots(&Poly::from_ints(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn isolate_rejects_repeated_roots() {
        let p = Poly::from_ints(&[1, -2, 1]);
        assert!(matches!(isolate_real_roots(&p), Err(Error::NonSquarefree { .. })));
    }

    #[test]
    fn isolate_close_roots() {
        // (x - 1/3)(x - 1/2)(x + 7)
        let p = Poly::new(vec![q_frac(-1, 3), q(1)])
            .mul(&Poly::new(vec![q_frac(-1, 2), q(1)]))
            .mul(&Poly::from_ints(&[7, 1]));
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0], iv(-7, -7));
        for r in &roots {
            assert!(is_isolating(&p, r));
        }
        assert!(roots[1].hi <= roots[2].lo);
    }

    #[test]
    fn cyclic_cubic_has_three_roots() {
        let p = Poly::from_ints(&[1, -3, 0, 1]);
        assert_eq!(count_real_roots(&p), 3);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(is_isolating(&p, r));
            let mut cur = r.clone();
            for _ in 0..20 {
                cur = bisect_root(&p, &cur);
                assert!(is_isolating(&p, &cur));
            }
        }
    }

    #[test]
    fn xgcd_identity() {
        let a = Poly::from_ints(&[-2, 0, 1]);
        let b = Poly::from_ints(&[1, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, Poly::from_ints(&[1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
