//! Clifford algebras `C(ψ)` in the subset basis, the Kuga-Satake complex
//! structure on `C⁺(ψ)` and a verified Riemann form.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{rational_sign, Field, OrderedField, Rationals, Q};
use crate::matrix::{self, Matrix};
use crate::quadform::{self, BilinearForm, QBilinearForm};
use crate::rmhodge::PeriodData;

/// Largest number of generators accepted.
pub const MAX_GENERATORS: usize = 16;
/// Largest number of generators for Riemann-form verification.
pub const MAX_RIEMANN_GENERATORS: usize = 8;

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

type Terms<E> = BTreeMap<u32, E>;

/// `C(g)` over `K` for a symmetric Gram matrix `g`. Cloning shares the cache.
#[derive(Clone, Debug)]
pub struct CliffordAlgebra<K: Field> {
    field: K,
    gram: Matrix<K::Elem>,
    id: u64,
    cache: Arc<RwLock<HashMap<(u32, u32), Arc<Terms<K::Elem>>>>>,
}

/// Sparse element; each subset bitmask appears at most once and no
/// coefficient is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordElement<E> {
    algebra: u64,
    terms: Terms<E>,
}

impl<E> CliffordElement<E> {
    pub fn terms(&self) -> &BTreeMap<u32, E> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Only even-size subsets occur.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|s| s.count_ones() % 2 == 0)
    }
}

impl<K: Field> CliffordAlgebra<K> {
    pub fn new(field: K, gram: Matrix<K::Elem>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::ShapeMismatch(format!("Gram matrix is {}x{}", gram.rows(), gram.cols())));
        }
        if gram.rows() > MAX_GENERATORS {
            return Err(Error::TooLarge { d: gram.rows(), max: MAX_GENERATORS });
        }
        if !matrix::is_symmetric::<K>(&gram) {
            return Err(Error::NotSymmetric);
        }
        Ok(CliffordAlgebra {
            field,
            gram,
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            cache: Arc::default(),
        })
    }

    pub fn from_form(form: &BilinearForm<K>) -> Result<Self> {
        Self::new(form.field().clone(), form.gram().clone())
    }

    /// `C(ψ) ⊗ K` for a rational form.
    pub fn lifted(field: K, psi: &QBilinearForm) -> Result<Self> {
        let gram = matrix::lift(&field, psi.gram());
        Self::new(field, gram)
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn gram(&self) -> &Matrix<K::Elem> {
        &self.gram
    }

    /// Number of generators.
    pub fn generators(&self) -> usize {
        self.gram.rows()
    }

    /// `2^d`.
    pub fn dim(&self) -> usize {
        1 << self.generators()
    }

    /// `2^{d-1}`, or 1 when `d = 0`.
    pub fn even_dim(&self) -> usize {
        self.even_basis().len()
    }

    /// Even subset masks in increasing order.
    pub fn even_basis(&self) -> Vec<u32> {
        (0..self.dim() as u32).filter(|s| s.count_ones() % 2 == 0).collect()
    }

    fn element(&self, terms: Terms<K::Elem>) -> CliffordElement<K::Elem> {
        CliffordElement { algebra: self.id, terms }
    }

    fn check(&self, u: &CliffordElement<K::Elem>) -> Result<()> {
        if u.algebra == self.id {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn zero(&self) -> CliffordElement<K::Elem> {
        self.element(Terms::new())
    }

    pub fn one(&self) -> CliffordElement<K::Elem> {
        self.scalar(self.field.one())
    }

    pub fn scalar(&self, c: K::Elem) -> CliffordElement<K::Elem> {
        self.monomial(0, c)
    }

    pub fn monomial(&self, mask: u32, c: K::Elem) -> CliffordElement<K::Elem> {
        assert!((mask as usize) < self.dim(), "subset out of range");
        let mut t = Terms::new();
        if !self.field.is_zero(&c) {
            t.insert(mask, c);
        }
        self.element(t)
    }

    pub fn generator(&self, i: usize) -> CliffordElement<K::Elem> {
        self.monomial(1 << i, self.field.one())
    }

    /// `Σ v_i e_i`.
    pub fn vector(&self, v: &[K::Elem]) -> Result<CliffordElement<K::Elem>> {
        if v.len() != self.generators() {
            return Err(Error::ShapeMismatch(format!("vector of length {} in C of rank {}", v.len(), self.generators())));
        }
        let t = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| (1u32 << i, c.clone()))
            .collect();
        Ok(self.element(t))
    }

    /// Element from its coordinates in [`Self::even_basis`].
    pub fn from_even_coords(&self, coords: &[K::Elem]) -> CliffordElement<K::Elem> {
        let t = self
            .even_basis()
            .into_iter()
            .zip(coords)
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(s, c)| (s, c.clone()))
            .collect();
        self.element(t)
    }

    pub fn even_coords(&self, u: &CliffordElement<K::Elem>) -> Vec<K::Elem> {
        self.even_basis()
            .into_iter()
            .map(|s| u.terms.get(&s).cloned().unwrap_or_else(|| self.field.zero()))
            .collect()
    }

    fn accumulate(&self, out: &mut Terms<K::Elem>, mask: u32, c: &K::Elem) {
        let k = &self.field;
        let v = match out.remove(&mask) {
            Some(old) => k.add(&old, c),
            None => c.clone(),
        };
        if !k.is_zero(&v) {
            out.insert(mask, v);
        }
    }

    pub fn add(&self, u: &CliffordElement<K::Elem>, v: &CliffordElement<K::Elem>) -> Result<CliffordElement<K::Elem>> {
        self.check(u)?;
        self.check(v)?;
        let mut t = u.terms.clone();
        for (s, c) in &v.terms {
            self.accumulate(&mut t, *s, c);
        }
        Ok(self.element(t))
    }

    pub fn sub(&self, u: &CliffordElement<K::Elem>, v: &CliffordElement<K::Elem>) -> Result<CliffordElement<K::Elem>> {
        self.add(u, &self.neg(v))
    }

    pub fn neg(&self, u: &CliffordElement<K::Elem>) -> CliffordElement<K::Elem> {
        self.scale(&self.field.neg(&self.field.one()), u)
    }

    pub fn scale(&self, c: &K::Elem, u: &CliffordElement<K::Elem>) -> CliffordElement<K::Elem> {
        let k = &self.field;
        let t = u
            .terms
            .iter()
            .map(|(s, x)| (*s, k.mul(c, x)))
            .filter(|(_, x)| !k.is_zero(x))
            .collect();
        CliffordElement { algebra: u.algebra, terms: t }
    }

    /// `e_S · e_j` in normal form, via `e_i e_j = 2g_ij - e_j e_i`.
    fn mono_gen(&self, s: u32, j: usize) -> Terms<K::Elem> {
        let k = &self.field;
        let mut out = Terms::new();
        if s == 0 {
            out.insert(1 << j, k.one());
            return out;
        }
        let i = 31 - s.leading_zeros() as usize;
        if i < j {
            out.insert(s | (1 << j), k.one());
            return out;
        }
        let rest = s & !(1 << i);
        if i == j {
            let g = self.gram[(i, i)].clone();
            if !k.is_zero(&g) {
                out.insert(rest, g);
            }
            return out;
        }
        // e_{S'} e_i e_j = 2 g_ij e_{S'} - (e_{S'} e_j) e_i
        let g = &self.gram[(i, j)];
        if !k.is_zero(g) {
            out.insert(rest, k.add(g, g));
        }
        for (t, c) in self.mono_gen(rest, j) {
            self.accumulate(&mut out, t | (1 << i), &k.neg(&c));
        }
        out
    }

    /// `e_S · e_T`, cached.
    fn mono_mul(&self, s: u32, t: u32) -> Arc<Terms<K::Elem>> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(&(s, t)) {
            return hit.clone();
        }
        let k = &self.field;
        let mut acc: Terms<K::Elem> = Terms::new();
        acc.insert(s, k.one());
        for j in 0..self.generators() {
            if t & (1 << j) == 0 {
                continue;
            }
            let mut next = Terms::new();
            for (m, c) in &acc {
                for (r, x) in self.mono_gen(*m, j) {
                    self.accumulate(&mut next, r, &k.mul(c, &x));
                }
            }
            acc = next;
        }
        let acc = Arc::new(acc);
        self.cache.write().expect("cache lock").insert((s, t), acc.clone());
        acc
    }

    pub fn mul(&self, u: &CliffordElement<K::Elem>, v: &CliffordElement<K::Elem>) -> Result<CliffordElement<K::Elem>> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    fn mul_unchecked(&self, u: &CliffordElement<K::Elem>, v: &CliffordElement<K::Elem>) -> CliffordElement<K::Elem> {
        let k = &self.field;
        let mut out = Terms::new();
        for (s, a) in &u.terms {
            for (t, b) in &v.terms {
                let ab = k.mul(a, b);
                for (r, c) in self.mono_mul(*s, *t).iter() {
                    self.accumulate(&mut out, *r, &k.mul(&ab, c));
                }
            }
        }
        self.element(out)
    }

    /// The reversal anti-automorphism `e_{i₁}⋯e_{i_k} ↦ e_{i_k}⋯e_{i₁}`.
    pub fn reversal(&self, u: &CliffordElement<K::Elem>) -> Result<CliffordElement<K::Elem>> {
        self.check(u)?;
        let mut out = self.zero();
        for (s, c) in &u.terms {
            let mut r = self.one();
            for i in (0..self.generators()).rev() {
                if s & (1 << i) != 0 {
                    r = self.mul_unchecked(&r, &self.generator(i));
                }
            }
            out = self.add(&out, &self.scale(c, &r))?;
        }
        Ok(out)
    }

    /// Matrix of `c ↦ u·c` on `C⁺` in the even basis.
    pub fn left_mult_even(&self, u: &CliffordElement<K::Elem>) -> Result<Matrix<K::Elem>> {
        self.check(u)?;
        if !u.is_even() {
            return Err(Error::ShapeMismatch("left multiplication on C⁺ needs an even element".into()));
        }
        let basis = self.even_basis();
        let n = basis.len();
        let index: HashMap<u32, usize> = basis.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut m = matrix::zeros(&self.field, n, n);
        for (col, t) in basis.iter().enumerate() {
            let prod = self.mul_unchecked(u, &self.monomial(*t, self.field.one()));
            for (r, c) in prod.terms {
                m[(index[&r], col)] = c;
            }
        }
        Ok(m)
    }

    /// Trace of left multiplication on `C⁺`.
    pub fn even_trace(&self, u: &CliffordElement<K::Elem>) -> Result<K::Elem> {
        let m = self.left_mult_even(u)?;
        let k = &self.field;
        Ok((0..m.rows()).fold(k.zero(), |acc, i| k.add(&acc, &m[(i, i)])))
    }
}

/// Kuga-Satake data for a period over `K`.
#[derive(Clone, Debug)]
pub struct KSStructure<K: Field> {
    pub psi: QBilinearForm,
    pub algebra: CliffordAlgebra<K>,
    pub period: PeriodData<K>,
    pub j: CliffordElement<K::Elem>,
}

/// `J = x·y/(-s)`, which squares to `-1` because `x ⊥ y` and `x² = y² = s`.
pub fn kuga_satake_j<K: OrderedField>(
    algebra: &CliffordAlgebra<K>,
    p: &PeriodData<K>,
) -> Result<CliffordElement<K::Elem>> {
    let k = algebra.field();
    let g = algebra.gram();
    let xx = matrix::bilinear(k, g, &p.x, &p.x);
    let yy = matrix::bilinear(k, g, &p.y, &p.y);
    let xy = matrix::bilinear(k, g, &p.x, &p.y);
    if xx != p.s || yy != p.s || !k.is_zero(&xy) || k.sign(&p.s) >= 0 {
        return Err(Error::InvalidPeriod("period does not satisfy the plane relations".into()));
    }
    let x = algebra.vector(&p.x)?;
    let y = algebra.vector(&p.y)?;
    let inv = k.inv(&k.neg(&p.s)).expect("s ≠ 0");
    Ok(algebra.scale(&inv, &algebra.mul(&x, &y)?))
}

impl<K: OrderedField> KSStructure<K> {
    pub fn new(psi: &QBilinearForm, period: PeriodData<K>) -> Result<Self> {
        let algebra = CliffordAlgebra::lifted(period.field.clone(), psi)?;
        let j = kuga_satake_j(&algebra, &period)?;
        Ok(KSStructure { psi: psi.clone(), algebra, period, j })
    }

    /// `J·J = -1`.
    pub fn j_squared_is_minus_one(&self) -> bool {
        let a = &self.algebra;
        let jj = a.mul(&self.j, &self.j).expect("same algebra");
        jj == a.neg(&a.one())
    }

    /// Matrix of `L_J` on `C⁺`.
    pub fn left_j(&self) -> Matrix<K::Elem> {
        self.algebra.left_mult_even(&self.j).expect("J is even")
    }

    /// Multiplicities of `±i` as eigenvalues of `L_J` on `C⁺ ⊗ C`.
    ///
    /// Since `L_J² = -1` these are `(N ± t)/2` where `i·t` is the trace of `L_J`;
    /// a real `L_J` has real trace, so `t = 0` unless the trace is nonzero,
    /// which would contradict `L_J² = -1` and is reported as a failure.
    pub fn eigen_multiplicities(&self) -> Result<(usize, usize)> {
        let lj = self.left_j();
        let k = &self.algebra.field;
        let sq = matrix::mul(k, &lj, &lj);
        let n = lj.rows();
        let minus = matrix::scale(k, &k.from_int(-1), &matrix::identity(k, n));
        if sq != minus {
            return Err(Error::VerificationFailed("L_J² ≠ -1".into()));
        }
        let tr = (0..n).fold(k.zero(), |acc, i| k.add(&acc, &lj[(i, i)]));
        if !k.is_zero(&tr) {
            return Err(Error::VerificationFailed("L_J has nonzero trace".into()));
        }
        Ok((n / 2, n / 2))
    }
}

/// `c ↦ a·c + b·J·c` on `C⁺` for `a² + b² = 1`.
pub fn weight_one_action<K: OrderedField>(ks: &KSStructure<K>, a: &Q, b: &Q) -> Result<Matrix<K::Elem>> {
    if a * a + b * b != Q::from_integer(1.into()) {
        return Err(Error::NotOnCircle(a.to_string(), b.to_string()));
    }
    let k = &ks.algebra.field;
    let lj = ks.left_j();
    let n = lj.rows();
    Ok(matrix::add(
        k,
        &matrix::scale(k, &k.from_rational(a), &matrix::identity(k, n)),
        &matrix::scale(k, &k.from_rational(b), &lj),
    ))
}

/// A verified Riemann form on `C⁺`, Gram matrix in the even basis.
#[derive(Clone, Debug)]
pub struct RiemannForm {
    pub sign: i8,
    pub gram: Matrix<Q>,
}

/// Outcome of the three Riemann-form checks for one sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RiemannChecks {
    pub alternating: bool,
    pub j_invariant: bool,
    pub positive: bool,
}

impl RiemannChecks {
    pub fn all(&self) -> bool {
        self.alternating && self.j_invariant && self.positive
    }
}

/// Gram of `(u, v) ↦ τ(a·ι(u)·v)` on `C⁺(ψ)` with `a = e₁e₂`, `τ` the trace
/// of left multiplication on `C⁺`.
pub fn trace_pairing(psi: &QBilinearForm, e1: &[Q], e2: &[Q]) -> Result<Matrix<Q>> {
    let alg = CliffordAlgebra::lifted(Rationals, psi)?;
    let a = alg.mul(&alg.vector(e1)?, &alg.vector(e2)?)?;
    let basis = alg.even_basis();
    let n = basis.len();
    // τ on monomials, then extend linearly
    let tau: HashMap<u32, Q> = basis
        .iter()
        .map(|s| {
            let t = alg.even_trace(&alg.monomial(*s, Q::from_integer(1.into()))).expect("even");
            (*s, t)
        })
        .collect();
    let tau_of = |u: &CliffordElement<Q>| -> Q {
        u.terms.iter().fold(Q::zero(), |acc, (s, c)| acc + c * &tau[s])
    };
    let rev: Vec<CliffordElement<Q>> = basis
        .iter()
        .map(|s| {
            let m = alg.monomial(*s, Q::from_integer(1.into()));
            alg.mul(&a, &alg.reversal(&m).expect("same algebra")).expect("same algebra")
        })
        .collect();
    let mut g = Matrix::filled(n, n, Q::zero());
    for i in 0..n {
        for (j, t) in basis.iter().enumerate() {
            let prod = alg.mul(&rev[i], &alg.monomial(*t, Q::from_integer(1.into())))?;
            g[(i, j)] = tau_of(&prod);
        }
    }
    Ok(g)
}

/// Runs the three checks on a candidate Gram matrix `e`.
pub fn check_riemann<K: OrderedField>(ks: &KSStructure<K>, e: &Matrix<Q>) -> RiemannChecks {
    let q = &Rationals;
    let alternating = matrix::add(q, e, &e.transpose()) == matrix::zeros(q, e.rows(), e.cols());
    let k = &ks.algebra.field;
    let ek = matrix::lift(k, e);
    let lj = ks.left_j();
    let j_invariant = matrix::congruence(k, &lj, &ek) == ek;
    let h = matrix::mul(k, &ek, &lj);
    let positive = matrix::is_symmetric::<K>(&h)
        && BilinearForm::new(k.clone(), h)
            .ok()
            .and_then(|f| quadform::signature(&f).ok())
            == Some((e.rows(), 0));
    RiemannChecks { alternating, j_invariant, positive }
}

/// Riemann form `E = sign·τ(e₁e₂·ι(u)·v)` after exact verification.
///
/// With `sign = None` both signs are tried. The seed must be an orthogonal
/// pair on which `ψ` has the same sign as on the period plane:
/// `ψ(e₁,e₁) < 0`, `ψ(e₂,e₂) < 0`, `ψ(e₁,e₂) = 0`. Seeds with `ψ > 0` never
/// pass the positivity check under this sign convention for `ψ`.
pub fn riemann_form<K: OrderedField>(
    ks: &KSStructure<K>,
    e1: &[Q],
    e2: &[Q],
    sign: Option<i8>,
) -> Result<RiemannForm> {
    let d = ks.psi.dim();
    if d > MAX_RIEMANN_GENERATORS {
        return Err(Error::TooLarge { d, max: MAX_RIEMANN_GENERATORS });
    }
    check_seed(&ks.psi, e1, e2)?;
    let base = trace_pairing(&ks.psi, e1, e2)?;
    let signs: Vec<i8> = match sign {
        Some(s) if s == 1 || s == -1 => vec![s],
        Some(_) => return Err(Error::BadSeed("sign must be +1 or -1".into())),
        None => vec![1, -1],
    };
    for s in signs {
        let gram = if s == 1 { base.clone() } else { base.map(|x| -x) };
        if check_riemann(ks, &gram).all() {
            return Ok(RiemannForm { sign: s, gram });
        }
    }
    Err(Error::NoValidSign)
}

fn check_seed(psi: &QBilinearForm, e1: &[Q], e2: &[Q]) -> Result<()> {
    let d = psi.dim();
    if e1.len() != d || e2.len() != d {
        return Err(Error::BadSeed(format!("seed vectors must have length {d}")));
    }
    if rational_sign(&psi.eval(e1, e1)) >= 0 || rational_sign(&psi.eval(e2, e2)) >= 0 {
        return Err(Error::BadSeed("ψ(e₁,e₁) and ψ(e₂,e₂) must be negative".into()));
    }
    if !psi.eval(e1, e2).is_zero() {
        return Err(Error::BadSeed("ψ(e₁,e₂) must vanish".into()));
    }
    Ok(())
}

/// First pair of orthogonal negative vectors from a diagonalization of `ψ`.
pub fn default_seed(psi: &QBilinearForm) -> Result<(Vec<Q>, Vec<Q>)> {
    let diag = quadform::diagonalize(psi);
    let pos: Vec<usize> = (0..psi.dim()).filter(|&i| rational_sign(&diag.entries[i]) < 0).collect();
    if pos.len() < 2 {
        return Err(Error::BadSeed("ψ has fewer than two negative directions".into()));
    }
    Ok((diag.basis.col(pos[0]), diag.basis.col(pos[1])))
}
