//! Number fields `Q[X]/(p)` with isolated real roots.
//!
//! Elements are coordinate vectors in the power basis `1, α, …, α^{n-1}` of
//! the root `α` of the minimal polynomial. A real embedding is a choice of
//! isolating interval; signs are decided by refining that interval until the
//! interval image of the element excludes zero.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{rational_height, rational_sign, AlgebraicField, Field, OrderedField, Q};
use crate::matrix::{self, Matrix};
use crate::poly::{bisect_root, is_isolating, isolate_real_roots, Poly, RootInterval};
use crate::field::Rationals;

/// Doublings of precision allowed in [`sign_at`] before giving up.
pub const SIGN_REFINEMENT_CAP: usize = 256;

/// Default trial-division bound for [`square_class`].
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

#[derive(Debug)]
struct FieldData {
    min_poly: Poly,
    degree: usize,
    real_roots: Vec<RootInterval>,
    /// The same intervals refined to width at most 2^-48.
    refined_roots: Vec<RootInterval>,
    /// Coordinates of `α^k` for `k = n, …, 2n-2`.
    high_powers: Vec<Vec<Q>>,
    /// `tr(α^k)` for `k = 0, …, 2n-2`.
    power_traces: Vec<Q>,
    attested: bool,
}

/// A number field; cheap to clone.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<Q>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.0.min_poly)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.min_poly == other.0.min_poly
    }
}

impl NumberField {
    /// Builds `Q[X]/(p)` for monic squarefree `p`. Irreducibility is proven for
    /// degree at most 3; higher degrees need [`NumberField::new_attested`].
    pub fn new(min_poly: Poly) -> Result<Self> {
        Self::build(min_poly, false)
    }

    /// Like [`NumberField::new`] but trusts the caller that `p` is irreducible
    /// when the degree is 4 or more. Rational roots are still excluded.
    pub fn new_attested(min_poly: Poly) -> Result<Self> {
        Self::build(min_poly, true)
    }

    /// `Q` itself, presented as `Q[X]/(X)`.
    pub fn rationals() -> Self {
        Self::new(Poly::x()).expect("X is irreducible")
    }

    /// `Q(√d)` via `X² - d`.
    pub fn quadratic(d: i64) -> Result<Self> {
        Self::new(Poly::from_ints(&[-d, 0, 1]))
    }

    fn build(min_poly: Poly, attested: bool) -> Result<Self> {
        let degree = match min_poly.degree() {
            Some(d) if d >= 1 && min_poly.is_monic() => d,
            _ => return Err(Error::NotMonic),
        };
        let real_roots = isolate_real_roots(&min_poly)?;
        if degree > 1 {
            if let Some(r) = rational_root(&min_poly, &real_roots) {
                return Err(Error::Reducible {
                    reason: format!("rational root {r}"),
                });
            }
            if degree > 3 && !attested {
                return Err(Error::IrreducibilityUnchecked { degree });
            }
        }
        Ok(Self::assemble(min_poly, degree, real_roots, attested))
    }

    /// Rebuilds a field from stored root intervals, validating each one.
    pub fn with_roots(min_poly: Poly, roots: Vec<RootInterval>, attested: bool) -> Result<Self> {
        let field = Self::build(min_poly, attested)?;
        if roots.len() != field.0.real_roots.len() {
            return Err(Error::BadRootInterval {
                index: roots.len(),
                reason: format!("expected {} real roots", field.0.real_roots.len()),
            });
        }
        for (i, iv) in roots.iter().enumerate() {
            if !is_isolating(&field.0.min_poly, iv) {
                return Err(Error::BadRootInterval {
                    index: i,
                    reason: "does not contain exactly one root".into(),
                });
            }
            if i > 0 && roots[i - 1].hi > iv.lo {
                return Err(Error::BadRootInterval {
                    index: i,
                    reason: "intervals overlap or are out of order".into(),
                });
            }
        }
        let FieldData { min_poly, degree, .. } = &*field.0;
        Ok(Self::assemble(min_poly.clone(), *degree, roots, attested))
    }

    fn assemble(min_poly: Poly, degree: usize, real_roots: Vec<RootInterval>, attested: bool) -> Self {
        let n = degree;
        // α^n = -(c_0 + … + c_{n-1} α^{n-1})
        let mut high_powers: Vec<Vec<Q>> = Vec::new();
        let mut cur: Vec<Q> = (0..n).map(|i| -min_poly.coeff(i)).collect();
        for _ in n..(2 * n).saturating_sub(1) {
            high_powers.push(cur.clone());
            // multiply by α
            let top = cur[n - 1].clone();
            let mut next = vec![Q::zero(); n];
            for i in (1..n).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..n {
                next[i] -= &top * min_poly.coeff(i);
            }
            cur = next;
        }
        let eps = Q::new(BigInt::one(), BigInt::one() << 48);
        let refined_roots = real_roots
            .iter()
            .map(|iv| {
                let mut iv = iv.clone();
                while !iv.is_exact() && iv.width() > eps {
                    iv = bisect_root(&min_poly, &iv);
                }
                iv
            })
            .collect();
        let mut data = FieldData {
            min_poly,
            degree,
            real_roots,
            refined_roots,
            high_powers,
            power_traces: Vec::new(),
            attested,
        };
        let tmp = NumberField(Arc::new(FieldData {
            min_poly: data.min_poly.clone(),
            degree,
            real_roots: Vec::new(),
            refined_roots: Vec::new(),
            high_powers: data.high_powers.clone(),
            power_traces: Vec::new(),
            attested,
        }));
        let alpha = tmp.generator();
        let mut p = tmp.one();
        for _ in 0..(2 * n - 1) {
            let m = tmp.mult_matrix(&p);
            data.power_traces
                .push((0..n).map(|i| m[(i, i)].clone()).sum());
            p = tmp.mul(&p, &alpha);
        }
        NumberField(Arc::new(data))
    }

    pub fn min_poly(&self) -> &Poly {
        &self.0.min_poly
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn real_roots(&self) -> &[RootInterval] {
        &self.0.real_roots
    }

    pub fn is_attested(&self) -> bool {
        self.0.attested
    }

    pub fn is_totally_real(&self) -> bool {
        self.0.real_roots.len() == self.0.degree
    }

    pub fn element(&self, coeffs: &[Q]) -> FieldElement {
        let n = self.degree();
        assert!(coeffs.len() <= n, "too many coordinates for degree {n}");
        let mut c = coeffs.to_vec();
        c.resize(n, Q::zero());
        FieldElement { coeffs: c }
    }

    pub fn element_from_ints(&self, coeffs: &[i64]) -> FieldElement {
        self.element(&coeffs.iter().map(|&c| Q::from_integer(c.into())).collect::<Vec<_>>())
    }

    /// Reduces an arbitrary rational polynomial modulo the minimal polynomial.
    pub fn from_poly(&self, p: &Poly) -> FieldElement {
        let r = p.rem(&self.0.min_poly);
        self.element(r.coeffs())
    }

    /// The power-basis generator `α`.
    pub fn generator(&self) -> FieldElement {
        if self.degree() == 1 {
            // α is the root of X - c.
            return self.element(&[-self.0.min_poly.coeff(0)]);
        }
        self.element_from_ints(&[0, 1])
    }

    /// `α^i` for `i = 0..n`.
    pub fn power_basis(&self) -> Vec<FieldElement> {
        (0..self.degree())
            .map(|i| {
                let mut c = vec![Q::zero(); self.degree()];
                if self.degree() == 1 {
                    c[0] = Q::one();
                } else {
                    c[i] = Q::one();
                }
                FieldElement { coeffs: c }
            })
            .collect()
    }

    pub fn pow(&self, a: &FieldElement, e: usize) -> FieldElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Matrix of `x ↦ a·x` on the power basis (column `j` holds `a·α^j`).
    pub fn mult_matrix(&self, a: &FieldElement) -> Matrix<Q> {
        let cols: Vec<Vec<Q>> = self
            .power_basis()
            .iter()
            .map(|b| self.mul(a, b).coeffs)
            .collect();
        Matrix::from_cols(&cols)
    }

    pub fn trace(&self, a: &FieldElement) -> Q {
        a.coeffs
            .iter()
            .zip(&self.0.power_traces)
            .map(|(c, t)| c * t)
            .sum()
    }

    pub fn norm(&self, a: &FieldElement) -> Q {
        matrix::det(&Rationals, &self.mult_matrix(a))
    }

    /// Trace form Gram matrix `tr(α^{i+j})` on the power basis.
    pub fn trace_gram(&self) -> Matrix<Q> {
        let n = self.degree();
        let mut m = Matrix::filled(n, n, Q::zero());
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = if n == 1 {
                    Q::one()
                } else {
                    self.0.power_traces[i + j].clone()
                };
            }
        }
        m
    }

    /// All real embeddings, in increasing order of the root.
    pub fn embeddings(&self) -> Vec<Embedding> {
        (0..self.0.real_roots.len())
            .map(|i| Embedding::new(self, i).expect("index in range"))
            .collect()
    }

    pub fn embedding(&self, index: usize) -> Result<Embedding> {
        Embedding::new(self, index)
    }

    /// `true` iff every real embedding sends `a` to a positive number.
    pub fn is_totally_positive(&self, a: &FieldElement) -> Result<bool> {
        if !self.is_totally_real() {
            return Err(Error::NotTotallyReal);
        }
        Ok(self.embeddings().iter().all(|e| e.sign_at(a) == 1))
    }

    /// Signs of `a` under all real embeddings.
    pub fn sign_vector(&self, a: &FieldElement) -> Vec<i8> {
        self.embeddings().iter().map(|e| e.sign_at(a)).collect()
    }

    /// Conjugate of `a` under the nontrivial automorphism of a quadratic field.
    pub fn quadratic_conjugate(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.degree() != 2 {
            return Err(Error::NotQuadratic);
        }
        // α ↦ -b - α for X² + bX + c
        let b = self.0.min_poly.coeff(1);
        let c0 = &a.coeffs[0] - &a.coeffs[1] * &b;
        Ok(self.element(&[c0, -a.coeffs[1].clone()]))
    }

    /// Squarefree `d` such that the field is `Q(√d)`, for quadratic fields.
    pub fn quadratic_radicand(&self) -> Result<BigInt> {
        if self.degree() != 2 {
            return Err(Error::NotQuadratic);
        }
        let b = self.0.min_poly.coeff(1);
        let c = self.0.min_poly.coeff(0);
        let disc = &b * &b - Q::from_integer(4.into()) * c;
        square_class(&disc)
    }
}

impl Field for NumberField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![Q::zero(); self.degree()],
        }
    }

    fn one(&self) -> FieldElement {
        let mut c = vec![Q::zero(); self.degree()];
        c[0] = Q::one();
        FieldElement { coeffs: c }
    }

    fn from_rational(&self, q: &Q) -> FieldElement {
        let mut c = vec![Q::zero(); self.degree()];
        c[0] = q.clone();
        FieldElement { coeffs: c }
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(Zero::is_zero)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let n = self.degree();
        let mut prod = vec![Q::zero(); 2 * n - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let (low, high) = prod.split_at_mut(n);
        for (k, c) in high.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.0.high_powers[k].iter().enumerate() {
                low[i] += c * r;
            }
        }
        FieldElement {
            coeffs: low.to_vec(),
        }
    }

    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return None;
        }
        let (g, s, _) = a.as_poly().xgcd(&self.0.min_poly);
        if g.degree() != Some(0) {
            // zero divisor; only possible if the minimal polynomial was misattested
            return None;
        }
        Some(self.from_poly(&s))
    }

    fn height(&self, a: &FieldElement) -> u64 {
        a.coeffs.iter().map(rational_height).sum()
    }
}

impl AlgebraicField for NumberField {
    fn degree(&self) -> usize {
        self.0.degree
    }
    fn rational_coords(&self, a: &FieldElement) -> Vec<Q> {
        a.coeffs.clone()
    }
    fn from_rational_coords(&self, coords: &[Q]) -> FieldElement {
        self.element(coords)
    }
}

/// A real embedding `σ: F → R`, given by the index of an isolating interval.
/// It is also a field context: arithmetic is that of `F`, signs are read at `σ`.
#[derive(Clone, Debug)]
pub struct Embedding {
    field: NumberField,
    index: usize,
    /// Pre-refined isolating interval.
    interval: RootInterval,
}

impl PartialEq for Embedding {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.index == other.index
    }
}

impl Embedding {
    pub fn new(field: &NumberField, index: usize) -> Result<Self> {
        let roots = &field.0.refined_roots;
        let Some(iv) = roots.get(index) else {
            return Err(Error::NoSuchEmbedding {
                index,
                count: roots.len(),
            });
        };
        Ok(Embedding {
            field: field.clone(),
            index,
            interval: iv.clone(),
        })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn root_index(&self) -> usize {
        self.index
    }

    /// The isolating interval as stored in the field.
    pub fn root_interval(&self) -> &RootInterval {
        &self.field.real_roots()[self.index]
    }

    /// Exact sign of `σ(a)`.
    pub fn sign_at(&self, a: &FieldElement) -> i8 {
        sign_at(a, self)
    }

    /// Decimal approximation of `σ(a)`; for display only.
    pub fn approx(&self, a: &FieldElement) -> f64 {
        let p = a.as_poly();
        let mid = (&self.interval.lo + &self.interval.hi) / Q::from_integer(2.into());
        p.eval(&mid).to_f64().unwrap_or(f64::NAN)
    }

    /// Approximation of the root itself.
    pub fn approx_root(&self) -> f64 {
        let mid = (&self.interval.lo + &self.interval.hi) / Q::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact sign of `σ(a)` by interval refinement of the root of `σ`.
pub fn sign_at(a: &FieldElement, sigma: &Embedding) -> i8 {
    let p = a.as_poly();
    if p.is_zero() {
        return 0;
    }
    let min_poly = sigma.field.min_poly();
    let mut iv = sigma.interval.clone();
    if iv.is_exact() {
        return rational_sign(&p.eval(&iv.lo));
    }
    let g = p.gcd(min_poly);
    let shares_root = g.degree().is_some_and(|d| d > 0) && is_isolating(&g, &iv);
    if shares_root {
        return 0;
    }
    for _ in 0..SIGN_REFINEMENT_CAP {
        let (lo, hi) = p.eval_interval(&iv.lo, &iv.hi);
        if lo.is_positive() {
            return 1;
        }
        if hi.is_negative() {
            return -1;
        }
        iv = bisect_root(min_poly, &iv);
        if iv.is_exact() {
            return rational_sign(&p.eval(&iv.lo));
        }
    }
    panic!("sign refinement exceeded {SIGN_REFINEMENT_CAP} doublings for {p} at root {}", sigma.index);
}

impl Field for Embedding {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        self.field.zero()
    }
    fn one(&self) -> FieldElement {
        self.field.one()
    }
    fn from_rational(&self, q: &Q) -> FieldElement {
        self.field.from_rational(q)
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        self.field.is_zero(a)
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.field.add(a, b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.field.sub(a, b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.field.mul(a, b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.field.neg(a)
    }
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        self.field.inv(a)
    }
    fn height(&self, a: &FieldElement) -> u64 {
        self.field.height(a)
    }
}

impl OrderedField for Embedding {
    fn sign(&self, a: &FieldElement) -> i8 {
        self.sign_at(a)
    }
}

impl AlgebraicField for Embedding {
    fn degree(&self) -> usize {
        self.field.degree()
    }
    fn rational_coords(&self, a: &FieldElement) -> Vec<Q> {
        a.coeffs.clone()
    }
    fn from_rational_coords(&self, coords: &[Q]) -> FieldElement {
        self.field.element(coords)
    }
}

/// Finds a rational root of `p` among its isolated real roots, if any.
fn rational_root(p: &Poly, roots: &[RootInterval]) -> Option<Q> {
    let ints = p.primitive_integer();
    let lead = ints.last().unwrap().abs();
    if ints[0].is_zero() {
        return Some(Q::zero());
    }
    // A rational root u/v in lowest terms has v | lead, so it is k/lead for an integer k.
    let lead_q = Q::from_integer(lead.clone());
    let bound = Q::new(BigInt::one(), lead.clone());
    for iv in roots {
        if iv.is_exact() {
            return Some(iv.lo.clone());
        }
        let mut cur = iv.clone();
        while cur.width() >= bound {
            cur = bisect_root(p, &cur);
            if cur.is_exact() {
                return Some(cur.lo.clone());
            }
        }
        let k_lo = (&cur.lo * &lead_q).floor().to_integer();
        let k_hi = (&cur.hi * &lead_q).ceil().to_integer();
        let mut k = k_lo;
        while k <= k_hi {
            let cand = Q::new(k.clone(), lead.clone());
            if p.eval(&cand).is_zero() {
                return Some(cand);
            }
            k += 1;
        }
    }
    None
}

/// `det(tr(e_i e_j))` for a Q-basis of the field, together with its square class.
pub fn field_discriminant(field: &NumberField, basis: &[FieldElement]) -> Result<(Q, BigInt)> {
    let n = field.degree();
    let singular = Error::SingularBasis {
        given: basis.len(),
        degree: n,
    };
    if basis.len() != n {
        return Err(singular);
    }
    let coords = Matrix::from_rows(basis.iter().map(|b| b.coeffs.clone()).collect());
    if matrix::rank(&Rationals, &coords) < n {
        return Err(singular);
    }
    let mut gram = Matrix::filled(n, n, Q::zero());
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = field.trace(&field.mul(&basis[i], &basis[j]));
        }
    }
    let d = matrix::det(&Rationals, &gram);
    let class = square_class(&d)?;
    Ok((d, class))
}

/// Discriminant of the power basis.
pub fn power_basis_discriminant(field: &NumberField) -> Result<(Q, BigInt)> {
    field_discriminant(field, &field.power_basis())
}

/// Squarefree integer representing `q` in `Q*/(Q*)²`, default trial bound.
pub fn square_class(q: &Q) -> Result<BigInt> {
    square_class_bounded(q, DEFAULT_TRIAL_BOUND)
}

/// Squarefree integer representing `q` in `Q*/(Q*)²`, trial division up to `bound`.
pub fn square_class_bounded(q: &Q, bound: u64) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::ZeroElement);
    }
    let num = squarefree_part(&q.numer().abs(), bound)?;
    let den = squarefree_part(&q.denom().abs(), bound)?;
    // num and den are squarefree but may share primes
    let s = squarefree_part(&(num * den), bound)?;
    Ok(if q.is_negative() { -s } else { s })
}

fn squarefree_part(n: &BigInt, bound: u64) -> Result<BigInt> {
    let mut rest = n.clone();
    let mut out = BigInt::one();
    let mut p: u64 = 2;
    loop {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        if p > bound {
            return Err(Error::FactorizationLimit {
                bound,
                cofactor: rest.to_string(),
            });
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        out *= rest;
    }
    Ok(out)
}

/// Certified check that `a` is *not* a square in the field.
///
/// Returns `Some(true)` if `a` is provably a non-square, `Some(false)` if an
/// explicit square root was found, `None` if neither could be established.
pub fn certify_nonsquare(field: &NumberField, a: &FieldElement) -> Option<bool> {
    if field.is_zero(a) {
        return Some(false);
    }
    if field.degree() == 1 {
        let v = &a.coeffs[0];
        return Some(rational_sqrt(v).is_none());
    }
    // squares are positive at every real place and have square norm
    if field.sign_vector(a).iter().any(|&s| s < 0) {
        return Some(true);
    }
    if rational_sqrt(&field.norm(a)).is_none() {
        return Some(true);
    }
    if field.degree() == 2 {
        return Some(quadratic_sqrt(field, a).is_none());
    }
    None
}

/// Exact square root of a rational, if it exists.
pub fn rational_sqrt(v: &Q) -> Option<Q> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    if &(&n * &n) == v.numer() && &(&d * &d) == v.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Square root in a quadratic field, if it exists.
pub fn quadratic_sqrt(field: &NumberField, a: &FieldElement) -> Option<FieldElement> {
    if field.degree() != 2 {
        return None;
    }
    // Work in the basis 1, √D with D = b² - 4c, α = (-b + √D)/2.
    let b = field.min_poly().coeff(1);
    let c = field.min_poly().coeff(0);
    let two = Q::from_integer(2.into());
    let disc = &b * &b - Q::from_integer(4.into()) * &c;
    // a = u + v α = (u - v b/2) + (v/2) √D
    let u = &a.coeffs[0] - &a.coeffs[1] * &b / &two;
    let v = &a.coeffs[1] / &two;
    // (x + y√D)² = x² + D y² + 2xy √D
    let nrm = &u * &u - &disc * &v * &v;
    let t = rational_sqrt(&nrm)?;
    for s in [t.clone(), -t] {
        let x2 = (&u + &s) / &two;
        if let Some(x) = rational_sqrt(&x2) {
            let y = if x.is_zero() {
                match rational_sqrt(&(&u / &disc)) {
                    Some(y) => y,
                    None => continue,
                }
            } else {
                &v / (&two * &x)
            };
            // back to the power basis: x + y√D = x + y(2α + b) = (x + y b) + 2y α
            let cand = field.element(&[&x + &y * &b, &y * &two]);
            if field.mul(&cand, &cand) == *a {
                return Some(cand);
            }
        }
    }
    None
}
