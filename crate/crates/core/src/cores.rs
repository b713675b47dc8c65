//! Corestriction of algebras over a real quadratic field `F = Q(√d)` and the
//! embedding of `cores_{F/Q} C⁺_F(Φ)` into `C⁺(ψ)`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cliffordks::CliffordAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals, Q};
use crate::matrix::{self, Matrix};
use crate::numfield::{quadratic_sqrt, FieldElement, NumberField};
use crate::rmhodge::{recover_f_bilinear, RMStructure};

/// Largest `dim_F R` accepted.
pub const MAX_ALGEBRA_DIM: usize = 8;

/// Elements of `F ⊗_Q F`, stored as the coefficients of `α^i ⊗ α^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFF(pub Matrix<Q>);

fn check_quadratic(field: &NumberField) -> Result<()> {
    if field.degree() != 2 {
        return Err(Error::NotQuadratic);
    }
    Ok(())
}

/// `a ⊗ b`.
pub fn pure_tensor(field: &NumberField, a: &FieldElement, b: &FieldElement) -> TensorFF {
    let n = field.degree();
    let mut m = Matrix::filled(n, n, Q::zero());
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = &a.coeffs()[i] * &b.coeffs()[j];
        }
    }
    TensorFF(m)
}

impl TensorFF {
    pub fn add(&self, other: &Self) -> Self {
        TensorFF(matrix::add(&Rationals, &self.0, &other.0))
    }

    pub fn scale(&self, c: &Q) -> Self {
        TensorFF(self.0.map(|x| x * c))
    }

    pub fn mul(&self, other: &Self, field: &NumberField) -> Self {
        let n = field.degree();
        let basis = field.power_basis();
        let mut out = Matrix::filled(n, n, Q::zero());
        for i in 0..n {
            for j in 0..n {
                if self.0[(i, j)].is_zero() {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        let c = &self.0[(i, j)] * &other.0[(k, l)];
                        if c.is_zero() {
                            continue;
                        }
                        let left = field.mul(&basis[i], &basis[k]);
                        let right = field.mul(&basis[j], &basis[l]);
                        let t = pure_tensor(field, &left, &right).scale(&c);
                        out = matrix::add(&Rationals, &out, &t.0);
                    }
                }
            }
        }
        TensorFF(out)
    }
}

/// `√d` with `d` the squarefree radicand, positive at the larger root.
pub fn sqrt_radicand(field: &NumberField) -> Result<(FieldElement, Q)> {
    check_quadratic(field)?;
    let d = Q::from_integer(field.quadratic_radicand()?);
    let s = quadratic_sqrt(field, &field.from_rational(&d)).ok_or(Error::NotQuadratic)?;
    let s = if field.embeddings()[1].sign_at(&s) > 0 { s } else { field.neg(&s) };
    Ok((s, d))
}

/// `π_± = (1⊗1 ± (√d⊗√d)/d)/2`; `π_e = π_+` is the one sent to 1 by multiplication.
pub fn splitting_idempotents(field: &NumberField) -> Result<(TensorFF, TensorFF)> {
    let (s, d) = sqrt_radicand(field)?;
    let one = pure_tensor(field, &field.one(), &field.one());
    let ss = pure_tensor(field, &s, &s).scale(&(Q::one() / &d));
    let half = Q::new(1.into(), 2.into());
    let plus = one.add(&ss).scale(&half);
    let minus = one.add(&ss.scale(&-Q::one())).scale(&half);
    Ok((plus, minus))
}

/// An associative unital algebra over `F` given by structure constants:
/// `b_i b_j = Σ_k consts[i][j][k] b_k`.
#[derive(Clone, Debug)]
pub struct FAlgebra {
    pub field: NumberField,
    pub consts: Vec<Vec<Vec<FieldElement>>>,
    pub unit: Vec<FieldElement>,
}

impl FAlgebra {
    pub fn new(field: NumberField, consts: Vec<Vec<Vec<FieldElement>>>, unit: Vec<FieldElement>) -> Result<Self> {
        let r = unit.len();
        if consts.len() != r || consts.iter().any(|row| row.len() != r || row.iter().any(|v| v.len() != r)) {
            return Err(Error::ShapeMismatch(format!("structure constants for dimension {r}")));
        }
        if r > MAX_ALGEBRA_DIM {
            return Err(Error::TooLarge { d: r, max: MAX_ALGEBRA_DIM });
        }
        let a = FAlgebra { field, consts, unit };
        a.check()?;
        Ok(a)
    }

    fn check(&self) -> Result<()> {
        let r = self.dim();
        let e = |i: usize| -> Vec<FieldElement> {
            (0..r).map(|k| if k == i { self.field.one() } else { self.field.zero() }).collect()
        };
        for i in 0..r {
            let bi = e(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(Error::NoUnit);
            }
            for j in 0..r {
                let bij = self.mul(&bi, &e(j));
                for k in 0..r {
                    let bk = e(k);
                    if self.mul(&bij, &bk) != self.mul(&bi, &self.mul(&e(j), &bk)) {
                        return Err(Error::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// `dim_F R`.
    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.field;
        let r = self.dim();
        let mut out = vec![f.zero(); r];
        for i in 0..r {
            if f.is_zero(&x[i]) {
                continue;
            }
            for j in 0..r {
                if f.is_zero(&y[j]) {
                    continue;
                }
                let c = f.mul(&x[i], &y[j]);
                for k in 0..r {
                    out[k] = f.add(&out[k], &f.mul(&c, &self.consts[i][j][k]));
                }
            }
        }
        out
    }

    /// `F` as a one-dimensional algebra over itself.
    pub fn scalars(field: &NumberField) -> Self {
        FAlgebra {
            field: field.clone(),
            consts: vec![vec![vec![field.one()]]],
            unit: vec![field.one()],
        }
    }

    /// `M_k(F)` with basis `E_{ab}` at index `a·k + b`.
    pub fn matrix_algebra(field: &NumberField, k: usize) -> Result<Self> {
        let r = k * k;
        let mut consts = vec![vec![vec![field.zero(); r]; r]; r];
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    consts[a * k + b][b * k + c][a * k + c] = field.one();
                }
            }
        }
        let unit = (0..r).map(|i| if i / k == i % k { field.one() } else { field.zero() }).collect();
        Self::new(field.clone(), consts, unit)
    }

    /// `C⁺` of a Clifford algebra over `F`, in its even basis.
    pub fn even_clifford(alg: &CliffordAlgebra<NumberField>) -> Result<Self> {
        let f = alg.field().clone();
        let basis = alg.even_basis();
        let r = basis.len();
        let mut consts = vec![vec![vec![f.zero(); r]; r]; r];
        for (i, s) in basis.iter().enumerate() {
            for (j, t) in basis.iter().enumerate() {
                let p = alg.mul(&alg.monomial(*s, f.one()), &alg.monomial(*t, f.one()))?;
                consts[i][j] = alg.even_coords(&p);
            }
        }
        let mut unit = vec![f.zero(); r];
        unit[0] = f.one();
        Self::new(f, consts, unit)
    }
}

/// `Z = R ⊗_F R_g` with the semilinear involution `θ(c·b_i⊗b_j) = g(c)·b_j⊗b_i`.
///
/// `R_g` is `R` with `F` acting through `g`, so its structure constants are
/// the conjugates of those of `R`. Elements are `F`-coordinate vectors
/// indexed by `i·r + j`.
#[derive(Clone, Debug)]
pub struct TwistedTensor {
    pub base: FAlgebra,
    conj: Vec<Vec<Vec<FieldElement>>>,
}

impl TwistedTensor {
    pub fn new(base: FAlgebra) -> Result<Self> {
        check_quadratic(&base.field)?;
        let f = &base.field;
        let conj = base
            .consts
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|c| f.quadratic_conjugate(c)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TwistedTensor { base, conj })
    }

    pub fn field(&self) -> &NumberField {
        &self.base.field
    }

    /// `dim_F Z = r²`.
    pub fn dim(&self) -> usize {
        self.base.dim() * self.base.dim()
    }

    pub fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field();
        let r = self.base.dim();
        let mut out = vec![f.zero(); r * r];
        for i in 0..r {
            for j in 0..r {
                let xij = &x[i * r + j];
                if f.is_zero(xij) {
                    continue;
                }
                for k in 0..r {
                    for l in 0..r {
                        let ykl = &y[k * r + l];
                        if f.is_zero(ykl) {
                            continue;
                        }
                        let c = f.mul(xij, ykl);
                        for p in 0..r {
                            let a = &self.base.consts[i][k][p];
                            if f.is_zero(a) {
                                continue;
                            }
                            let ca = f.mul(&c, a);
                            for q in 0..r {
                                let b = &self.conj[j][l][q];
                                if !f.is_zero(b) {
                                    out[p * r + q] = f.add(&out[p * r + q], &f.mul(&ca, b));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn galois_action(&self, z: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field();
        let r = self.base.dim();
        let mut out = vec![f.zero(); r * r];
        for i in 0..r {
            for j in 0..r {
                out[j * r + i] = f.quadratic_conjugate(&z[i * r + j]).expect("quadratic");
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<FieldElement> {
        let f = self.field();
        let u = &self.base.unit;
        let r = u.len();
        let mut out = vec![f.zero(); r * r];
        for i in 0..r {
            for j in 0..r {
                out[i * r + j] = f.mul(&u[i], &f.quadratic_conjugate(&u[j]).expect("quadratic"));
            }
        }
        out
    }

    /// Rational coordinates, `α^t` part of entry `e` at index `2e + t`.
    pub fn to_rational(&self, z: &[FieldElement]) -> Vec<Q> {
        z.iter().flat_map(|c| c.coeffs().to_vec()).collect()
    }

    pub fn from_rational(&self, v: &[Q]) -> Vec<FieldElement> {
        v.chunks(2).map(|c| self.field().element(c)).collect()
    }

    /// `u ⊗ u` for `u ∈ R`, with the second factor read in `R_g`.
    pub fn diagonal(&self, u: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field();
        let r = u.len();
        let mut out = vec![f.zero(); r * r];
        for i in 0..r {
            for j in 0..r {
                out[i * r + j] = f.mul(&u[i], &f.quadratic_conjugate(&u[j]).expect("quadratic"));
            }
        }
        out
    }
}

/// `Z^G` with a Q-basis and structure constants over Q.
#[derive(Clone, Debug)]
pub struct Corestriction {
    pub tensor: TwistedTensor,
    /// Rational coordinates in `Z` of each basis vector.
    pub basis: Vec<Vec<Q>>,
    /// `consts[a][b]` are the coordinates of `basis[a]·basis[b]`.
    pub consts: Vec<Vec<Vec<Q>>>,
    pub unit: Vec<Q>,
    pivots: Vec<usize>,
    pivot_inverse: Matrix<Q>,
}

impl Corestriction {
    /// `dim_Q = (dim_F R)²`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a fixed element of `Z`, or `None` if it is not in `Z^G`.
    pub fn coordinates(&self, z: &[Q]) -> Option<Vec<Q>> {
        let sel: Vec<Q> = self.pivots.iter().map(|&p| z[p].clone()).collect();
        let c = matrix::mul_vec(&Rationals, &self.pivot_inverse, &sel);
        (self.combine(&c) == z).then_some(c)
    }

    /// The element of `Z` with the given coordinates.
    pub fn combine(&self, c: &[Q]) -> Vec<Q> {
        let n = self.basis[0].len();
        let mut out = vec![Q::zero(); n];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += ci * x;
            }
        }
        out
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let r = self.dim();
        let mut out = vec![Q::zero(); r];
        for a in 0..r {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..r {
                if y[b].is_zero() {
                    continue;
                }
                let c = &x[a] * &y[b];
                for (o, k) in out.iter_mut().zip(&self.consts[a][b]) {
                    *o += &c * k;
                }
            }
        }
        out
    }
}

/// `cores_{F/Q}(R) = (R ⊗_F R_g)^G`, the fixed points of `θ`.
pub fn build_corestriction(r: &FAlgebra) -> Result<Corestriction> {
    let tensor = TwistedTensor::new(r.clone())?;
    let q = &Rationals;
    let n = 2 * tensor.dim();
    let mut theta = Matrix::filled(n, n, Q::zero());
    for col in 0..n {
        let mut v = vec![Q::zero(); n];
        v[col] = Q::one();
        let img = tensor.to_rational(&tensor.galois_action(&tensor.from_rational(&v)));
        for (row, x) in img.into_iter().enumerate() {
            theta[(row, col)] = x;
        }
    }
    let shifted = matrix::sub(q, &theta, &matrix::identity(q, n));
    let basis = matrix::kernel(q, &shifted);
    if basis.len() != tensor.dim() {
        return Err(Error::VerificationFailed(format!(
            "fixed space has dimension {}, expected {}",
            basis.len(),
            tensor.dim()
        )));
    }
    let bm = Matrix::from_cols(&basis);
    let (_, pivots) = matrix::rref(q, &bm.transpose());
    let sel = bm.select(&pivots, &(0..basis.len()).collect::<Vec<_>>());
    let pivot_inverse = matrix::inverse(q, &sel).ok_or_else(|| Error::VerificationFailed("fixed basis".into()))?;
    let mut c = Corestriction {
        tensor,
        basis,
        consts: Vec::new(),
        unit: Vec::new(),
        pivots,
        pivot_inverse,
    };
    let zb: Vec<Vec<FieldElement>> = c.basis.iter().map(|b| c.tensor.from_rational(b)).collect();
    let consts: Result<Vec<Vec<Vec<Q>>>> = (0..zb.len())
        .into_par_iter()
        .map(|a| {
            (0..zb.len())
                .map(|b| {
                    let p = c.tensor.to_rational(&c.tensor.mul(&zb[a], &zb[b]));
                    c.coordinates(&p)
                        .ok_or_else(|| Error::VerificationFailed("fixed algebra is not closed".into()))
                })
                .collect()
        })
        .collect();
    c.consts = consts?;
    let unit = c.tensor.to_rational(&c.tensor.unit());
    c.unit = c
        .coordinates(&unit)
        .ok_or_else(|| Error::VerificationFailed("unit is not fixed".into()))?;
    Ok(c)
}

/// A verified algebra map `cores(C⁺_F(Φ)) → C⁺(ψ)`.
#[derive(Clone, Debug)]
pub struct CoresEmbedding {
    pub cores: Corestriction,
    /// Row `a` holds the coordinates of the image of basis vector `a` in
    /// the even basis of `C(ψ)`.
    pub images: Matrix<Q>,
    pub target_dim: usize,
    pub unital: bool,
    pub injective: bool,
    pub homomorphism: bool,
}

impl CoresEmbedding {
    pub fn verified(&self) -> bool {
        self.unital && self.injective && self.homomorphism
    }
}

/// Realizes `V ⊗ F = V_e ⊕ V_g` by the projections `(ρ(√d) ± √d)/(2√d)`,
/// sends `e_S ⊗ e_T` to `u_S·u'_T` with `u`, `u'` the projected F-basis,
/// restricts to `Z^G` and records the exhaustive checks without failing on them.
pub fn build_cores_embedding(s: &RMStructure) -> Result<CoresEmbedding> {
    let f = s.field().clone();
    if f.degree() != 2 {
        return Err(Error::NotQuadratic);
    }
    let q = &Rationals;
    let ff = recover_f_bilinear(s)?;
    let (sq, _) = sqrt_radicand(&f)?;
    let rho_s = s.rho(&sq);
    let inv2s = f.inv(&f.add(&sq, &sq)).expect("√d ≠ 0");
    let d = s.dim();
    let m = s.m();
    let project = |v: &[Q], sign: i64| -> Vec<FieldElement> {
        let rv = matrix::mul_vec(q, &rho_s, v);
        (0..d)
            .map(|i| {
                let a = f.from_rational(&(&rv[i] * Q::from_integer(sign.into())));
                let b = f.mul(&sq, &f.from_rational(&v[i]));
                f.mul(&f.add(&a, &b), &inv2s)
            })
            .collect()
    };
    let fk: Vec<Vec<Q>> = (0..m).map(|k| ff.frame.col(k * 2)).collect();
    let u: Vec<Vec<FieldElement>> = fk.iter().map(|v| project(v, 1)).collect();
    let up: Vec<Vec<FieldElement>> = fk.iter().map(|v| project(v, -1)).collect();

    let big = CliffordAlgebra::lifted(f.clone(), s.psi())?;
    let small = CliffordAlgebra::new(f.clone(), ff.phi.clone())?;
    let r_alg = FAlgebra::even_clifford(&small)?;
    let cores = build_corestriction(&r_alg)?;

    let vec_u: Vec<_> = u.iter().map(|v| big.vector(v)).collect::<Result<_>>()?;
    let vec_up: Vec<_> = up.iter().map(|v| big.vector(v)).collect::<Result<_>>()?;
    let product = |mask: u32, gens: &[crate::cliffordks::CliffordElement<FieldElement>]| {
        (0..m).filter(|k| mask & (1 << k) != 0).fold(big.one(), |acc, k| {
            big.mul(&acc, &gens[k]).expect("same algebra")
        })
    };
    let even = small.even_basis();
    let us: Vec<_> = even.iter().map(|&s| product(s, &vec_u)).collect();
    let ups: Vec<_> = even.iter().map(|&s| product(s, &vec_up)).collect();
    let r = even.len();
    let mut pair_images = HashMap::new();
    for i in 0..r {
        for j in 0..r {
            pair_images.insert((i, j), big.mul(&us[i], &ups[j])?);
        }
    }

    let target = big.even_basis();
    let target_index: HashMap<u32, usize> = target.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let image_of = |zq: &[Q]| -> Result<Vec<Q>> {
        let z = cores.tensor.from_rational(zq);
        let mut acc = big.zero();
        for i in 0..r {
            for j in 0..r {
                let c = &z[i * r + j];
                if f.is_zero(c) {
                    continue;
                }
                acc = big.add(&acc, &big.scale(c, &pair_images[&(i, j)]))?;
            }
        }
        let mut out = vec![Q::zero(); target.len()];
        for (mask, c) in acc.terms() {
            let idx = target_index
                .get(mask)
                .ok_or_else(|| Error::VerificationFailed("image is not even".into()))?;
            if !c.coeffs()[1..].iter().all(Zero::is_zero) {
                return Err(Error::VerificationFailed("image is not rational".into()));
            }
            out[*idx] = c.coeffs()[0].clone();
        }
        Ok(out)
    };
    let rows: Vec<Vec<Q>> = cores.basis.iter().map(|b| image_of(b)).collect::<Result<_>>()?;
    let images = Matrix::from_rows(rows);
    let injective = matrix::rank(q, &images) == cores.dim();

    let qalg = CliffordAlgebra::lifted(Rationals, s.psi())?;
    let as_elem = |row: &[Q]| qalg.from_even_coords(row);
    let map = |c: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); target.len()];
        for (a, ca) in c.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(images.row(a)) {
                *o += ca * x;
            }
        }
        out
    };
    let unital = map(&cores.unit) == qalg.even_coords(&qalg.one());
    let dim = cores.dim();
    let homomorphism = (0..dim * dim).into_par_iter().all(|idx| {
        let (a, b) = (idx / dim, idx % dim);
        let lhs = map(&cores.consts[a][b]);
        let prod = qalg
            .mul(&as_elem(images.row(a)), &as_elem(images.row(b)))
            .expect("same algebra");
        lhs == qalg.even_coords(&prod)
    });
    Ok(CoresEmbedding {
        cores,
        images,
        target_dim: target.len(),
        unital,
        injective,
        homomorphism,
    })
}

/// [`build_cores_embedding`], failing unless the map is a unital injective homomorphism.
pub fn embed_cores_in_clifford(s: &RMStructure) -> Result<CoresEmbedding> {
    let e = build_cores_embedding(s)?;
    for (ok, what) in [(e.unital, "unit"), (e.injective, "injectivity"), (e.homomorphism, "homomorphism")] {
        if !ok {
            return Err(Error::VerificationFailed(format!("cores embedding: {what} check failed")));
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmhodge::construct_rm_structure;

    fn f2() -> NumberField {
        NumberField::quadratic(2).unwrap()
    }

    #[test]
    fn idempotents() {
        let f = f2();
        let (pe, pg) = splitting_idempotents(&f).unwrap();
        assert_eq!(pe.mul(&pe, &f), pe);
        assert_eq!(pg.mul(&pg, &f), pg);
        let zero = TensorFF(Matrix::filled(2, 2, Q::zero()));
        assert_eq!(pe.mul(&pg, &f), zero);
        assert_eq!(pe.add(&pg), pure_tensor(&f, &f.one(), &f.one()));
        let a = f.element_from_ints(&[3, -2]);
        let left = pure_tensor(&f, &a, &f.one()).mul(&pe, &f);
        let right = pure_tensor(&f, &f.one(), &a).mul(&pe, &f);
        assert_eq!(left, right);
        assert_eq!(splitting_idempotents(&NumberField::rationals()).unwrap_err(), Error::NotQuadratic);
    }

    #[test]
    fn corestriction_dimensions() {
        let f = f2();
        assert_eq!(build_corestriction(&FAlgebra::scalars(&f)).unwrap().dim(), 1);
        let m2 = FAlgebra::matrix_algebra(&f, 2).unwrap();
        let c = build_corestriction(&m2).unwrap();
        assert_eq!(c.dim(), 16);
        // unit is the identity of the structure constants
        for a in 0..16 {
            let mut e = vec![Q::zero(); 16];
            e[a] = Q::one();
            assert_eq!(c.mul(&c.unit, &e), e);
        }
    }

    #[test]
    fn galois_action_is_involutive_automorphism() {
        let f = f2();
        let m2 = FAlgebra::matrix_algebra(&f, 2).unwrap();
        let t = TwistedTensor::new(m2).unwrap();
        let x: Vec<FieldElement> = (0..16).map(|i| f.element_from_ints(&[i as i64 - 3, (i % 3) as i64])).collect();
        let y: Vec<FieldElement> = (0..16).map(|i| f.element_from_ints(&[1, i as i64 % 2])).collect();
        assert_eq!(t.galois_action(&t.galois_action(&x)), x);
        assert_eq!(
            t.galois_action(&t.mul(&x, &y)),
            t.mul(&t.galois_action(&x), &t.galois_action(&y))
        );
    }

    #[test]
    fn non_associative_rejected() {
        let f = f2();
        let mut consts = vec![vec![vec![f.zero(); 2]; 2]; 2];
        consts[0][0][0] = f.one();
        consts[0][1][1] = f.one();
        consts[1][0][1] = f.one();
        consts[1][1][0] = f.one();
        consts[1][1][1] = f.one();
        let unit = vec![f.one(), f.zero()];
        assert!(FAlgebra::new(f.clone(), consts.clone(), unit.clone()).is_ok());
        consts[1][1] = vec![f.zero(), f.zero()];
        consts[1][0][1] = f.from_int(2);
        assert!(matches!(FAlgebra::new(f, consts, unit), Err(Error::NoUnit) | Err(Error::NotAssociative(..))));
    }

    #[test]
    fn embedding_for_sqrt2() {
        let f = f2();
        let eps = f.embeddings()[1].clone();
        let u = f.element_from_ints(&[1, -1]);
        let s = construct_rm_structure(&f, 3, &[u.clone(), u, f.one()], &eps).unwrap();
        let emb = embed_cores_in_clifford(&s).unwrap();
        assert_eq!(emb.cores.dim(), 16);
        assert_eq!(emb.target_dim, 32);
        assert!(emb.unital);
        assert!(emb.injective);
        assert!(emb.homomorphism);
    }
}
