//! K3 type Hodge structures with real multiplication by a totally real field.
//!
//! Vectors of `V = F^m ≅ Q^{nm}` use the layout where coordinate `k·n + i`
//! is the coefficient of `α^i e_k`, `α` the power-basis generator of `F`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{q, AlgebraicField, Field, OrderedField, Rationals, Q};
use crate::matrix::{self, Matrix};
use crate::numfield::{
    certify_nonsquare, power_basis_discriminant, square_class, Embedding, FieldElement, NumberField,
};
use crate::quadext::{QuadElem, QuadraticExtension};
use crate::quadform::{self, BilinearForm, KBilinearForm, QBilinearForm};

/// A rational Hodge-theoretic skeleton: `F` acting on `(Q^d, ψ)`.
#[derive(Clone, Debug)]
pub struct RMStructure {
    field: NumberField,
    m: usize,
    action: Vec<Matrix<Q>>,
    psi: QBilinearForm,
}

impl RMStructure {
    /// `action[i]` is the matrix of `α^i`. Checks the ring action,
    /// self-adjointness and the signature `(d-2, 2)`.
    pub fn new(field: NumberField, m: usize, action: Vec<Matrix<Q>>, psi: QBilinearForm) -> Result<Self> {
        let n = field.degree();
        let d = psi.dim();
        if d != n * m {
            return Err(Error::ShapeMismatch(format!("dim V = {d}, expected n·m = {}", n * m)));
        }
        if action.len() != n || action.iter().any(|a| a.rows() != d || a.cols() != d) {
            return Err(Error::ShapeMismatch(format!(
                "expected {n} action matrices of size {d}x{d}"
            )));
        }
        let s = RMStructure { field, m, action, psi };
        s.check_action()?;
        let sig = quadform::signature(&s.psi)?;
        if sig != (d - 2, 2) {
            return Err(Error::BadAction(format!(
                "ψ has signature {sig:?}, expected ({}, 2)",
                d - 2
            )));
        }
        Ok(s)
    }

    /// Builds the action from the matrix of the generator alone.
    pub fn with_generator_action(field: NumberField, m: usize, a: Matrix<Q>, psi: QBilinearForm) -> Result<Self> {
        let d = psi.dim();
        if a.rows() != d || a.cols() != d {
            return Err(Error::ShapeMismatch(format!("generator action is {}x{}", a.rows(), a.cols())));
        }
        let mut action = vec![matrix::identity(&Rationals, d)];
        for i in 1..field.degree() {
            action.push(matrix::mul(&Rationals, &action[i - 1], &a));
        }
        if field.degree() == 1 {
            // α = 0 for Q = Q[X]/(X)
            if !matrix::is_zero_matrix(&Rationals, &a) {
                return Err(Error::BadAction("generator of Q must act by 0".into()));
            }
        }
        let s = Self::new(field, m, action, psi)?;
        if s.generator_action() != a {
            return Err(Error::BadAction("generator action does not satisfy the minimal polynomial".into()));
        }
        Ok(s)
    }

    fn check_action(&self) -> Result<()> {
        let k = &Rationals;
        let d = self.dim();
        if self.action[0] != matrix::identity(k, d) {
            return Err(Error::BadAction("α^0 must act as the identity".into()));
        }
        let a = self.generator_action();
        for i in 2..self.n() {
            if matrix::mul(k, &self.action[i - 1], &a) != self.action[i] {
                return Err(Error::BadAction(format!("action of α^{i} is not a power of α")));
            }
        }
        // p(A) = 0
        let p = self.field.min_poly();
        let mut acc = matrix::zeros(k, d, d);
        let mut pow = matrix::identity(k, d);
        for c in p.coeffs() {
            acc = matrix::add(k, &acc, &matrix::scale(k, c, &pow));
            pow = matrix::mul(k, &pow, &a);
        }
        if !matrix::is_zero_matrix(k, &acc) {
            return Err(Error::BadAction("minimal polynomial does not annihilate the action".into()));
        }
        let g = self.psi.gram();
        let lhs = matrix::mul(k, &a.transpose(), g);
        let rhs = matrix::mul(k, g, &a);
        if lhs != rhs {
            return Err(Error::BadAction("F does not act self-adjointly for ψ".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// `dim_F V`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `[F:Q]`.
    pub fn n(&self) -> usize {
        self.field.degree()
    }

    /// `dim_Q V`.
    pub fn dim(&self) -> usize {
        self.psi.dim()
    }

    pub fn action(&self) -> &[Matrix<Q>] {
        &self.action
    }

    pub fn psi(&self) -> &QBilinearForm {
        &self.psi
    }

    /// Matrix of the generator `α`.
    pub fn generator_action(&self) -> Matrix<Q> {
        if self.n() == 1 {
            return matrix::zeros(&Rationals, self.dim(), self.dim());
        }
        self.action[1].clone()
    }

    /// Matrix of `a ∈ F`.
    pub fn rho(&self, a: &FieldElement) -> Matrix<Q> {
        let k = &Rationals;
        let d = self.dim();
        let mut out = matrix::zeros(k, d, d);
        for (c, m) in a.coeffs().iter().zip(&self.action) {
            if !c.is_zero() {
                out = matrix::add(k, &out, &matrix::scale(k, c, m));
            }
        }
        out
    }

    /// The same structure in the basis given by the columns of `b`:
    /// `ρ ↦ b⁻¹ρb`, `ψ ↦ bᵀψb`.
    pub fn change_basis(&self, b: &Matrix<Q>) -> Result<Self> {
        let k = &Rationals;
        let binv = matrix::inverse(k, b).ok_or(Error::Degenerate)?;
        let action = self.action.iter().map(|a| matrix::mul(k, &binv, &matrix::mul(k, a, b))).collect();
        Self::new(self.field.clone(), self.m, action, self.psi.transform(b))
    }
}

/// Checks the sign pattern: two negatives at `eps`, positive elsewhere.
pub fn check_sign_pattern(field: &NumberField, a: &[FieldElement], eps: &Embedding) -> Result<()> {
    let mut negatives = 0;
    for (k, ak) in a.iter().enumerate() {
        if field.is_zero(ak) {
            return Err(Error::ZeroElement);
        }
        for sigma in field.embeddings() {
            let s = sigma.sign_at(ak);
            if sigma.root_index() == eps.root_index() {
                if s < 0 {
                    negatives += 1;
                    if negatives > 2 {
                        return Err(Error::BadSignPattern { k, embedding: sigma.root_index(), sign: s });
                    }
                }
            } else if s < 0 {
                return Err(Error::BadSignPattern { k, embedding: sigma.root_index(), sign: s });
            }
        }
    }
    if negatives < 2 {
        // report the first entry that would have to turn negative
        let k = a.iter().position(|ak| eps.sign_at(ak) > 0).unwrap_or(0);
        return Err(Error::BadSignPattern { k, embedding: eps.root_index(), sign: 1 });
    }
    Ok(())
}

/// `V = F^m` with `Φ = diag(a_1, …, a_m)` and `ψ = tr ∘ Φ`.
pub fn construct_rm_structure(
    field: &NumberField,
    m: usize,
    a: &[FieldElement],
    eps: &Embedding,
) -> Result<RMStructure> {
    if m < 3 {
        return Err(Error::RankTooSmall { m });
    }
    if a.len() != m {
        return Err(Error::ShapeMismatch(format!("{} coefficients for m = {m}", a.len())));
    }
    if eps.field() != field {
        return Err(Error::NoSuchEmbedding { index: eps.root_index(), count: field.degree() });
    }
    check_sign_pattern(field, a, eps)?;
    let phi = matrix::diagonal(field, a);
    let psi = trace_form(field, &phi, None);
    let blocks: Vec<Matrix<Q>> = (0..m).map(|_| field.mult_matrix(&field.generator())).collect();
    let gen = if field.degree() == 1 {
        matrix::zeros(&Rationals, m, m)
    } else {
        matrix::block_diagonal(&Rationals, &blocks)
    };
    RMStructure::with_generator_action(field.clone(), m, gen, psi)
}

/// `ψ(v, w) = tr Φ(v, w)` as a rational Gram matrix.
///
/// Without a frame the layout basis `α^i e_k` is used. A frame `P` has the
/// layout vectors as columns and the result is expressed in standard
/// coordinates, i.e. `P^{-T} T(Φ) P^{-1}`.
pub fn trace_form(field: &NumberField, phi: &Matrix<FieldElement>, frame: Option<&Matrix<Q>>) -> QBilinearForm {
    let n = field.degree();
    let m = phi.rows();
    let basis = field.power_basis();
    let mut pairs = vec![vec![field.zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            pairs[i][j] = field.mul(&basis[i], &basis[j]);
        }
    }
    let mut t = Matrix::filled(n * m, n * m, Q::zero());
    for k in 0..m {
        for l in 0..m {
            let f = &phi[(k, l)];
            for i in 0..n {
                for j in 0..n {
                    t[(k * n + i, l * n + j)] = field.trace(&field.mul(&pairs[i][j], f));
                }
            }
        }
    }
    let g = match frame {
        None => t,
        Some(p) => {
            let pinv = matrix::inverse(&Rationals, p).expect("frame is invertible");
            matrix::congruence(&Rationals, &pinv, &t)
        }
    };
    QBilinearForm::new(Rationals, g).expect("trace form of a symmetric Φ is symmetric")
}

/// An F-bilinear form together with the Q-basis it is laid out in.
#[derive(Clone, Debug)]
pub struct FForm {
    pub phi: Matrix<FieldElement>,
    /// Columns `ρ(α^i) f_k` at position `k·n + i`.
    pub frame: Matrix<Q>,
}

impl FForm {
    pub fn as_form(&self, sigma: &Embedding) -> KBilinearForm {
        BilinearForm::new(sigma.clone(), self.phi.clone()).expect("Φ is symmetric")
    }
}

/// A Q-basis of `V` of the form `ρ(α^i) f_k`, with `f_k` picked greedily
/// from the standard basis.
pub fn f_frame(s: &RMStructure) -> Result<Matrix<Q>> {
    let k = &Rationals;
    let d = s.dim();
    let mut cols: Vec<Vec<Q>> = Vec::with_capacity(d);
    for j in 0..d {
        if cols.len() == d {
            break;
        }
        let mut e = vec![Q::zero(); d];
        e[j] = Q::one();
        let block: Vec<Vec<Q>> = s.action.iter().map(|a| matrix::mul_vec(k, a, &e)).collect();
        let mut trial = cols.clone();
        trial.extend(block.iter().cloned());
        if matrix::rank(k, &Matrix::from_cols(&trial)) == trial.len() {
            cols = trial;
        }
    }
    if cols.len() != d {
        return Err(Error::BadAction("V is not free over F".into()));
    }
    Ok(Matrix::from_cols(&cols))
}

/// The unique F-bilinear `Φ` with `tr(c·Φ(v,w)) = ψ(cv, w)`.
pub fn recover_f_bilinear(s: &RMStructure) -> Result<FForm> {
    let k = &Rationals;
    let field = &s.field;
    let n = s.n();
    let m = s.m;
    let frame = f_frame(s)?;
    let tinv = matrix::inverse(k, &field.trace_gram()).ok_or(Error::DegenerateTraceForm)?;
    let g = s.psi.gram();
    let f: Vec<Vec<Q>> = (0..m).map(|kk| frame.col(kk * n)).collect();
    let mut phi = Matrix::filled(m, m, field.zero());
    for a in 0..m {
        let moved: Vec<Vec<Q>> = s.action.iter().map(|r| matrix::mul_vec(k, r, &f[a])).collect();
        for b in 0..m {
            let t: Vec<Q> = moved.iter().map(|v| matrix::bilinear(k, g, v, &f[b])).collect();
            phi[(a, b)] = field.element(&matrix::mul_vec(k, &tinv, &t));
        }
    }
    Ok(FForm { phi, frame })
}

/// Basis over `F` of `{v ∈ F^d : ρ(α) v = α v}`.
pub fn eigenspace(s: &RMStructure) -> Vec<Vec<FieldElement>> {
    let f = &s.field;
    let a = matrix::lift(f, &s.generator_action());
    let shifted = matrix::sub(f, &a, &matrix::scale(f, &f.generator(), &matrix::identity(f, s.dim())));
    matrix::kernel(f, &shifted)
}

/// Gram matrix of the F-bilinear extension of `ψ` on the eigenspace.
fn eigenspace_gram(s: &RMStructure, basis: &[Vec<FieldElement>]) -> Matrix<FieldElement> {
    let f = &s.field;
    let g = matrix::lift(f, s.psi.gram());
    let m = basis.len();
    let mut out = Matrix::filled(m, m, f.zero());
    for i in 0..m {
        for j in 0..m {
            out[(i, j)] = matrix::bilinear(f, &g, &basis[i], &basis[j]);
        }
    }
    out
}

/// Signature of `ψ` on the real eigenspace `V_σ`.
pub fn eigenspace_signature(s: &RMStructure, sigma: &Embedding) -> Result<(usize, usize)> {
    let basis = eigenspace(s);
    let form = BilinearForm::new(sigma.clone(), eigenspace_gram(s, &basis))?;
    quadform::signature(&form)
}

/// Eigenspace signatures at every real embedding, in root order.
pub fn embedding_signatures(s: &RMStructure) -> Result<Vec<(usize, usize)>> {
    s.field.embeddings().iter().map(|e| eigenspace_signature(s, e)).collect()
}

/// Square classes of `det ψ` and of `D_F^m · N(det Φ)`; they agree.
pub fn det_class_identity(s: &RMStructure) -> Result<(BigInt, BigInt)> {
    let lhs = quadform::det_square_class(&s.psi)?;
    let phi = recover_f_bilinear(s)?;
    let (disc, _) = power_basis_discriminant(&s.field)?;
    let ndet = s.field.norm(&matrix::det(&s.field, &phi.phi));
    let rhs = square_class(&(num_traits::pow(disc, s.m) * ndet))?;
    Ok((lhs, rhs))
}

/// Square classes of `det ψ_a` and of `N(a)^m · det ψ`; they agree.
pub fn twist_det_identity(s: &RMStructure, a: &FieldElement) -> Result<(BigInt, BigInt)> {
    let tw = twist_polarization(s, a)?;
    let lhs = quadform::det_square_class(&tw.form)?;
    let rhs = square_class(&(num_traits::pow(s.field.norm(a), s.m) * s.psi.det()))?;
    Ok((lhs, rhs))
}

/// `ψ_a(v, w) = ψ(av, w)`.
#[derive(Clone, Debug)]
pub struct Twist {
    pub form: QBilinearForm,
    /// `a` is totally positive.
    pub polarization: bool,
}

pub fn twist_polarization(s: &RMStructure, a: &FieldElement) -> Result<Twist> {
    if s.field.is_zero(a) {
        return Err(Error::ZeroElement);
    }
    let k = &Rationals;
    let gram = matrix::mul(k, &s.rho(a).transpose(), s.psi.gram());
    let form = QBilinearForm::new(Rationals, gram)?;
    Ok(Twist {
        form,
        polarization: s.field.is_totally_positive(a)?,
    })
}

/// `A_{e,c} = [[e, c·r], [c, -e]]`, which squares to `(e² + r c²)·I`.
pub fn a_block(e: i64, c: i64, r: i64) -> Matrix<Q> {
    Matrix::from_rows(vec![vec![q(e), q(c * r)], vec![q(c), q(-e)]])
}

/// Smallest `e ≥ 1` with `d = e² + c²`, `c ≥ 1`.
pub fn sum_of_two_squares(d: i64) -> Option<(i64, i64)> {
    (1..).take_while(|e| e * e < d).find_map(|e| {
        let c2 = d - e * e;
        let c = (c2 as f64).sqrt().round() as i64;
        (c >= 1 && c * c == c2).then_some((e, c))
    })
}

/// The example on `Q^6` with `ψ = Q₁ ⊕ Q₂ ⊕ Q₃`, `Q_i = diag(1, r_i)`,
/// `r = (-1, -1, 1)`, and `√d` acting by `A_{d'+1,d'} ⊕ A_{d'+1,d'} ⊕ A_{e,c}`.
pub fn build_double_cover_example(d: i64) -> Result<RMStructure> {
    if d <= 1 || d % 2 == 0 || square_class(&q(d))? != BigInt::from(d) {
        return Err(Error::NotSquarefree { d });
    }
    let (e, c) = sum_of_two_squares(d).ok_or(Error::NotSumOfTwoSquares { d })?;
    double_cover_with(d, e, c)
}

/// As [`build_double_cover_example`] with a supplied decomposition `d = e² + c²`.
pub fn double_cover_with(d: i64, e: i64, c: i64) -> Result<RMStructure> {
    if e * e + c * c != d {
        return Err(Error::NotSumOfTwoSquares { d });
    }
    let dp = (d - 1) / 2;
    let k = &Rationals;
    let a = matrix::block_diagonal(
        k,
        &[a_block(dp + 1, dp, -1), a_block(dp + 1, dp, -1), a_block(e, c, 1)],
    );
    let psi = quadform::qform_diagonal(&[1, -1, 1, -1, 1, 1]);
    let field = NumberField::quadratic(d)?;
    // the generator of Q(√d) is √d itself for squarefree d ≢ 1 mod 4 only;
    // express √d in the power basis and invert to get the action of α
    let sqrt_d = field_sqrt(&field, d)?;
    let gen = generator_action_from(&field, &sqrt_d, &a)?;
    RMStructure::with_generator_action(field, 3, gen, psi)
}

/// `√d` as an element of `Q(√d)`.
fn field_sqrt(field: &NumberField, d: i64) -> Result<FieldElement> {
    crate::numfield::quadratic_sqrt(field, &field.from_int(d))
        .map(|r| if field.embeddings()[1].sign_at(&r) > 0 { r } else { field.neg(&r) })
        .ok_or(Error::NotSquarefree { d })
}

/// Given the action `a` of `t = u + vα`, returns the action of `α`.
fn generator_action_from(field: &NumberField, t: &FieldElement, a: &Matrix<Q>) -> Result<Matrix<Q>> {
    let k = &Rationals;
    let c = t.coeffs();
    let v = c.get(1).cloned().unwrap_or_else(Q::zero);
    if v.is_zero() || field.degree() != 2 {
        return Err(Error::NotQuadratic);
    }
    let shifted = matrix::sub(k, a, &matrix::scale(k, &c[0], &matrix::identity(k, a.rows())));
    Ok(matrix::scale(k, &(Q::one() / v), &shifted))
}

/// A period `ω = x + iy` with coordinates in the real field `K`.
#[derive(Clone, Debug)]
pub struct PeriodData<K: Field> {
    pub field: K,
    pub x: Vec<K::Elem>,
    pub y: Vec<K::Elem>,
    /// `ψ(x, x) = ψ(y, y)`.
    pub s: K::Elem,
}

impl<K: OrderedField> PeriodData<K> {
    /// Validates `ψ(x,x) = ψ(y,y) = s < 0`, `ψ(x,y) = 0` and independence.
    pub fn new(field: K, psi: &QBilinearForm, x: Vec<K::Elem>, y: Vec<K::Elem>) -> Result<Self> {
        let d = psi.dim();
        if x.len() != d || y.len() != d {
            return Err(Error::ShapeMismatch(format!("period vectors of length {}, {}", x.len(), y.len())));
        }
        let g = matrix::lift(&field, psi.gram());
        let xx = matrix::bilinear(&field, &g, &x, &x);
        let yy = matrix::bilinear(&field, &g, &y, &y);
        let xy = matrix::bilinear(&field, &g, &x, &y);
        if xx != yy {
            return Err(Error::InvalidPeriod("ψ(x,x) ≠ ψ(y,y)".into()));
        }
        if !field.is_zero(&xy) {
            return Err(Error::InvalidPeriod("ψ(x,y) ≠ 0".into()));
        }
        if field.sign(&xx) >= 0 {
            return Err(Error::InvalidPeriod("ψ(x,x) is not negative".into()));
        }
        if matrix::rank(&field, &Matrix::from_cols(&[x.clone(), y.clone()])) != 2 {
            return Err(Error::InvalidPeriod("x and y are dependent".into()));
        }
        Ok(PeriodData { field, x, y, s: xx })
    }
}

/// Period field used by [`construct_period`]: `F(√p)` over the place `ε`.
pub type PeriodField = QuadraticExtension<Embedding>;

/// Eigenspace diagonal data at `ε`: entries and vectors over `F`.
fn diagonal_eigenbasis(s: &RMStructure, eps: &Embedding) -> Result<(Vec<FieldElement>, Vec<Vec<FieldElement>>)> {
    let f = &s.field;
    let basis = eigenspace(s);
    let form = BilinearForm::new(eps.clone(), eigenspace_gram(s, &basis))?;
    if quadform::signature(&form)? != (s.m - 2, 2) {
        return Err(Error::NoNegativePlane);
    }
    let diag = quadform::diagonalize(&form);
    let d = s.dim();
    let vectors = (0..s.m)
        .map(|c| {
            let mut v = vec![f.zero(); d];
            for (r, b) in basis.iter().enumerate() {
                let coef = &diag.basis[(r, c)];
                if f.is_zero(coef) {
                    continue;
                }
                for i in 0..d {
                    v[i] = f.add(&v[i], &f.mul(coef, &b[i]));
                }
            }
            v
        })
        .collect();
    Ok((diag.entries, vectors))
}

/// Small positive rationals ordered by height.
fn small_rationals() -> Vec<Q> {
    let mut out: Vec<Q> = Vec::new();
    for h in 1..=9i64 {
        for num in 1..=h {
            for den in 1..=h {
                if num.max(den) == h && num_integer::gcd(num, den) == 1 {
                    out.push(Q::new(num.into(), den.into()));
                }
            }
        }
    }
    out
}

/// Period in the `ε`-eigenspace over `F(√p)`.
///
/// With `c_1, c_2 < 0 < c_3, c_4` the diagonal entries of `ψ` on the
/// eigenspace along `w_1, …, w_4`:
/// for `m = 3`, `x = √p·w_1 + w_3`, `y = γ·w_2` and `p = (γ² c_2 - c_3)/c_1`;
/// for `m ≥ 4`, `x = √p·w_1 + w_3`, `y = η√p·w_2 + ζ·w_4` and
/// `p = (c_3 - ζ² c_4)/(η² c_2 - c_1)`. The free rationals are searched until
/// `p` is a certified non-square. Mixing an irrational layer into both vectors
/// is what makes the period simple for `m ≤ 4`.
pub fn construct_period(s: &RMStructure, eps: &Embedding) -> Result<PeriodData<PeriodField>> {
    let f = &s.field;
    let (c, w) = diagonal_eigenbasis(s, eps)?;
    let neg: Vec<usize> = (0..s.m).filter(|&i| eps.sign_at(&c[i]) < 0).collect();
    let pos: Vec<usize> = (0..s.m).filter(|&i| eps.sign_at(&c[i]) > 0).collect();
    let (i1, i2, i3) = (neg[0], neg[1], pos[0]);
    let nonsquare = |p: &FieldElement| eps.sign_at(p) > 0 && certify_nonsquare(f, p) == Some(true);
    let candidates = small_rationals();
    let build = |p: FieldElement, xa: Vec<(usize, FieldElement, bool)>, ya: Vec<(usize, FieldElement, bool)>| {
        let k = QuadraticExtension::new(eps.clone(), p)?;
        let combine = |terms: &[(usize, FieldElement, bool)]| -> Vec<QuadElem<FieldElement>> {
            let mut v = vec![k.zero(); s.dim()];
            for (idx, coef, irrational) in terms {
                for (slot, wi) in v.iter_mut().zip(&w[*idx]) {
                    let t = f.mul(coef, wi);
                    let add = if *irrational {
                        QuadElem { a: f.zero(), b: t }
                    } else {
                        QuadElem { a: t, b: f.zero() }
                    };
                    *slot = k.add(slot, &add);
                }
            }
            v
        };
        let x = combine(&xa);
        let y = combine(&ya);
        PeriodData::new(k, &s.psi, x, y)
    };
    if s.m == 3 {
        for g in &candidates {
            let g2 = f.from_rational(&(g * g));
            let p = f.div(&f.sub(&f.mul(&g2, &c[i2]), &c[i3]), &c[i1]).expect("c_1 ≠ 0");
            if nonsquare(&p) {
                let gk = f.from_rational(g);
                return build(
                    p,
                    vec![(i1, f.one(), true), (i3, f.one(), false)],
                    vec![(i2, gk, false)],
                );
            }
        }
    } else {
        let i4 = pos[1];
        for eta in &candidates {
            for zeta in &candidates {
                let e2 = f.from_rational(&(eta * eta));
                let z2 = f.from_rational(&(zeta * zeta));
                let num = f.sub(&c[i3], &f.mul(&z2, &c[i4]));
                let den = f.sub(&f.mul(&e2, &c[i2]), &c[i1]);
                let Some(p) = f.div(&num, &den) else { continue };
                // s = p c_1 + c_3 must be negative at ε
                let s_val = f.add(&f.mul(&p, &c[i1]), &c[i3]);
                if eps.sign_at(&s_val) >= 0 || !nonsquare(&p) {
                    continue;
                }
                return build(
                    p,
                    vec![(i1, f.one(), true), (i3, f.one(), false)],
                    vec![(i2, f.from_rational(eta), true), (i4, f.from_rational(zeta), false)],
                );
            }
        }
    }
    Err(Error::InvalidPeriod("no certified non-square radicand in the search range".into()))
}

/// Period spanned by the two negative directions of the `ε`-eigenspace,
/// rescaled to equal norm. Needs `c_1/c_2` to be a square in `F`.
pub fn negative_plane_period(s: &RMStructure, eps: &Embedding) -> Result<PeriodData<Embedding>> {
    let f = &s.field;
    let (c, w) = diagonal_eigenbasis(s, eps)?;
    let neg: Vec<usize> = (0..s.m).filter(|&i| eps.sign_at(&c[i]) < 0).collect();
    let ratio = f.div(&c[neg[0]], &c[neg[1]]).expect("nonzero");
    let lambda = if f.is_one(&ratio) {
        f.one()
    } else if f.degree() == 1 {
        f.from_rational(
            &crate::numfield::rational_sqrt(&ratio.coeffs()[0])
                .ok_or_else(|| Error::InvalidPeriod("negative directions have unequal norms".into()))?,
        )
    } else {
        crate::numfield::quadratic_sqrt(f, &ratio)
            .ok_or_else(|| Error::InvalidPeriod("negative directions have unequal norms".into()))?
    };
    let y: Vec<FieldElement> = w[neg[1]].iter().map(|e| f.mul(&lambda, e)).collect();
    PeriodData::new(eps.clone(), &s.psi, w[neg[0]].clone(), y)
}

/// Outcome of the simplicity test.
#[derive(Clone, Debug, PartialEq)]
pub enum Simplicity {
    Simple,
    /// Rational vectors `v` with `ψ(ω, v) = 0`.
    KernelBasis(Vec<Vec<Q>>),
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }
}

/// Rational solutions of `ψ(x, v) = ψ(y, v) = 0`, each `K`-valued equation
/// expanded into `[K:Q]` rational ones.
pub fn simplicity_check<K: AlgebraicField>(psi: &QBilinearForm, p: &PeriodData<K>) -> Simplicity {
    let k = &p.field;
    let g = matrix::lift(k, psi.gram());
    let d = psi.dim();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for v in [&p.x, &p.y] {
        let lin: Vec<K::Elem> = (0..d)
            .map(|j| (0..d).fold(k.zero(), |acc, i| k.add(&acc, &k.mul(&v[i], &g[(i, j)]))))
            .collect();
        let coords: Vec<Vec<Q>> = lin.iter().map(|e| k.rational_coords(e)).collect();
        for c in 0..k.degree() {
            rows.push(coords.iter().map(|cs| cs[c].clone()).collect());
        }
    }
    let kern = matrix::kernel(&Rationals, &Matrix::from_rows(rows));
    if kern.is_empty() {
        Simplicity::Simple
    } else {
        Simplicity::KernelBasis(kern)
    }
}

/// Checks that `ψ'` polarizes the Hodge structure of `P`.
///
/// `ψ'` must be F-self-adjoint and invariant under the circle action:
/// `ψ'(x,x) = ψ'(y,y)`, `ψ'(x,y) = 0`, and `x, y` orthogonal under `ψ'` to
/// the `ψ`-complement `W` of `span(x,y)`; otherwise `NotCompatible`.
/// Returns whether `ψ'` is negative definite on `span(x,y)` and positive
/// definite on `W` at the designated place.
pub fn is_polarization<K: OrderedField>(psi2: &QBilinearForm, s: &RMStructure, p: &PeriodData<K>) -> Result<bool> {
    let d = s.dim();
    if psi2.dim() != d {
        return Err(Error::ShapeMismatch(format!("form of rank {} on V of dim {d}", psi2.dim())));
    }
    let q = &Rationals;
    let a = s.generator_action();
    if matrix::mul(q, &a.transpose(), psi2.gram()) != matrix::mul(q, psi2.gram(), &a) {
        return Err(Error::NotCompatible("form is not F-self-adjoint".into()));
    }
    let k = &p.field;
    let g = matrix::lift(k, s.psi.gram());
    let g2 = matrix::lift(k, psi2.gram());
    let row = |gm: &Matrix<K::Elem>, v: &[K::Elem]| -> Vec<K::Elem> {
        (0..d)
            .map(|j| (0..d).fold(k.zero(), |acc, i| k.add(&acc, &k.mul(&v[i], &gm[(i, j)]))))
            .collect()
    };
    let xx = matrix::bilinear(k, &g2, &p.x, &p.x);
    let yy = matrix::bilinear(k, &g2, &p.y, &p.y);
    let xy = matrix::bilinear(k, &g2, &p.x, &p.y);
    if xx != yy || !k.is_zero(&xy) {
        return Err(Error::NotCompatible("form is not circle-invariant on span(x, y)".into()));
    }
    // ψ'(x, W) = ψ'(y, W) = 0 for W = span(x, y)^⊥ iff ψ'x, ψ'y lie in span(ψx, ψy)
    let rows = vec![row(&g, &p.x), row(&g, &p.y), row(&g2, &p.x), row(&g2, &p.y)];
    if matrix::rank(k, &Matrix::from_rows(rows)) != 2 {
        return Err(Error::NotCompatible("span(x, y) is not orthogonal to its complement".into()));
    }
    if k.sign(&xx) >= 0 {
        return Ok(false);
    }
    // ψ' splits as (negative plane) ⊕ ψ'|W, so ψ'|W is definite iff ψ' has signature (d-2, 2)
    Ok(matches!(quadform::signature(psi2), Ok(sig) if sig == (d - 2, 2)))
}

/// Element of small height with prescribed signs at the real embeddings.
pub fn element_with_signs(field: &NumberField, signs: &[i8]) -> Result<FieldElement> {
    let n = field.degree();
    if signs.len() != field.real_roots().len() {
        return Err(Error::ShapeMismatch(format!("{} signs for {} embeddings", signs.len(), n)));
    }
    for bound in 1..=6i64 {
        let width = (2 * bound + 1) as usize;
        let total = width.pow(n as u32);
        for idx in 0..total {
            let mut t = idx;
            let coeffs: Vec<i64> = (0..n)
                .map(|_| {
                    let c = (t % width) as i64 - bound;
                    t /= width;
                    c
                })
                .collect();
            if coeffs.iter().map(|c| c.abs()).max() != Some(bound) {
                continue;
            }
            let a = field.element_from_ints(&coeffs);
            if field.sign_vector(&a) == signs {
                return Ok(a);
            }
        }
    }
    Err(Error::VerificationFailed("no element with the requested signs in the search box".into()))
}

/// `(u, u, 1, …, 1)` with `u` negative at `ε` and positive elsewhere.
pub fn default_coefficients(field: &NumberField, m: usize, eps: &Embedding) -> Result<Vec<FieldElement>> {
    let signs: Vec<i8> = field
        .embeddings()
        .iter()
        .map(|e| if e.root_index() == eps.root_index() { -1 } else { 1 })
        .collect();
    let u = element_with_signs(field, &signs)?;
    let mut a = vec![u.clone(), u];
    a.extend((2..m).map(|_| field.one()));
    Ok(a)
}
