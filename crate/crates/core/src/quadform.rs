//! Symmetric bilinear forms over Q or over a number field with a real place.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, OrderedField, Rationals, Q};
use crate::matrix::{self, Matrix};
use crate::numfield::{square_class, Embedding};

/// A symmetric bilinear form given by its Gram matrix over the field `K`.
#[derive(Clone, Debug)]
pub struct BilinearForm<K: Field> {
    field: K,
    gram: Matrix<K::Elem>,
}

/// Form over Q.
pub type QBilinearForm = BilinearForm<Rationals>;
/// Form over a number field, signs read at the designated embedding.
pub type KBilinearForm = BilinearForm<Embedding>;

impl<K: Field> PartialEq for BilinearForm<K> {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl<K: Field> BilinearForm<K> {
    pub fn new(field: K, gram: Matrix<K::Elem>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "Gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if !matrix::is_symmetric::<K>(&gram) {
            return Err(Error::NotSymmetric);
        }
        Ok(BilinearForm { field, gram })
    }

    pub fn diagonal(field: K, entries: &[K::Elem]) -> Self {
        let gram = matrix::diagonal(&field, entries);
        BilinearForm { field, gram }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn gram(&self) -> &Matrix<K::Elem> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &[K::Elem], y: &[K::Elem]) -> K::Elem {
        matrix::bilinear(&self.field, &self.gram, x, y)
    }

    pub fn det(&self) -> K::Elem {
        matrix::det(&self.field, &self.gram)
    }

    pub fn is_degenerate(&self) -> bool {
        self.field.is_zero(&self.det())
    }

    /// The pulled-back form `Bᵀ G B`.
    pub fn transform(&self, b: &Matrix<K::Elem>) -> Self {
        BilinearForm {
            field: self.field.clone(),
            gram: matrix::congruence(&self.field, b, &self.gram),
        }
    }

    /// Restriction to the span of the given vectors.
    pub fn restrict(&self, basis: &[Vec<K::Elem>]) -> Self {
        self.transform(&Matrix::from_cols(basis))
    }

    /// Same Gram matrix read over another context with the same elements.
    pub fn with_field<L: Field<Elem = K::Elem>>(&self, field: L) -> BilinearForm<L> {
        BilinearForm {
            field,
            gram: self.gram.clone(),
        }
    }
}

impl KBilinearForm {
    /// The same form with signs read at another real embedding.
    pub fn at_embedding(&self, sigma: &Embedding) -> KBilinearForm {
        self.with_field(sigma.clone())
    }
}

/// Result of a congruence diagonalization: `Bᵀ G B = diag(entries)`.
#[derive(Clone, Debug)]
pub struct Diagonalization<E> {
    pub entries: Vec<E>,
    pub basis: Matrix<E>,
}

/// Symmetric Gaussian elimination by congruence.
///
/// Pivots on the nonzero diagonal entry of least height; when the remaining
/// diagonal is zero but some coupling `g_ij` is not, replaces `u_i` by
/// `u_i + u_j`, which creates the diagonal entry `2 g_ij`.
pub fn diagonalize<K: Field>(form: &BilinearForm<K>) -> Diagonalization<K::Elem> {
    let k = &form.field;
    let d = form.dim();
    let mut a = form.gram.clone();
    let mut b = matrix::identity(k, d);
    let mut entries = Vec::with_capacity(d);
    for i in 0..d {
        let pivot = (i..d)
            .filter(|&j| !k.is_zero(&a[(j, j)]))
            .min_by_key(|&j| k.height(&a[(j, j)]));
        let p = match pivot {
            Some(p) => p,
            None => {
                let coupling = (i..d)
                    .flat_map(|r| (r + 1..d).map(move |c| (r, c)))
                    .find(|&(r, c)| !k.is_zero(&a[(r, c)]));
                let Some((r, c)) = coupling else {
                    entries.extend((i..d).map(|_| k.zero()));
                    break;
                };
                add_to(k, &mut a, &mut b, r, c);
                r
            }
        };
        a.swap_rows(i, p);
        a.swap_cols(i, p);
        b.swap_cols(i, p);
        let piv = a[(i, i)].clone();
        let inv = k.inv(&piv).expect("pivot is nonzero");
        for j in i + 1..d {
            if k.is_zero(&a[(j, i)]) {
                continue;
            }
            let f = k.mul(&a[(j, i)], &inv);
            for c in 0..d {
                let t = k.mul(&f, &a[(i, c)]);
                a[(j, c)] = k.sub(&a[(j, c)], &t);
            }
            for r in 0..d {
                let t = k.mul(&f, &a[(r, i)]);
                a[(r, j)] = k.sub(&a[(r, j)], &t);
            }
            for r in 0..d {
                let t = k.mul(&f, &b[(r, i)]);
                b[(r, j)] = k.sub(&b[(r, j)], &t);
            }
        }
        entries.push(piv);
    }
    Diagonalization { entries, basis: b }
}

/// Basis change `u_r ← u_r + u_c` applied by congruence.
fn add_to<K: Field>(k: &K, a: &mut Matrix<K::Elem>, b: &mut Matrix<K::Elem>, r: usize, c: usize) {
    let d = a.rows();
    for x in 0..d {
        a[(r, x)] = k.add(&a[(r, x)], &a[(c, x)]);
    }
    for x in 0..d {
        a[(x, r)] = k.add(&a[(x, r)], &a[(x, c)]);
    }
    for x in 0..d {
        b[(x, r)] = k.add(&b[(x, r)], &b[(x, c)]);
    }
}

/// `(p, q)`: numbers of positive and negative squares at the designated place.
pub fn signature<K: OrderedField>(form: &BilinearForm<K>) -> Result<(usize, usize)> {
    let diag = diagonalize(form);
    let mut sig = (0, 0);
    for e in &diag.entries {
        match form.field.sign(e) {
            1 => sig.0 += 1,
            -1 => sig.1 += 1,
            _ => return Err(Error::Degenerate),
        }
    }
    Ok(sig)
}

/// Signature of a number-field form at the embedding `sigma`.
pub fn signature_at(form: &KBilinearForm, sigma: &Embedding) -> Result<(usize, usize)> {
    signature(&form.at_embedding(sigma))
}

/// Square class of the Gram determinant.
pub fn det_square_class(form: &QBilinearForm) -> Result<BigInt> {
    let d = form.det();
    if d == Q::from_integer(0.into()) {
        return Err(Error::Degenerate);
    }
    square_class(&d)
}

/// Orthogonal direct sum (block-diagonal Gram matrix).
pub fn direct_sum<K: Field>(field: &K, forms: &[&BilinearForm<K>]) -> BilinearForm<K> {
    let blocks: Vec<Matrix<K::Elem>> = forms.iter().map(|f| f.gram.clone()).collect();
    BilinearForm {
        field: field.clone(),
        gram: matrix::block_diagonal(field, &blocks),
    }
}

/// `true` iff `Bᵀ G₁ B = G₂` and `B` is invertible.
pub fn verify_isometry<K: Field>(
    f1: &BilinearForm<K>,
    f2: &BilinearForm<K>,
    b: &Matrix<K::Elem>,
) -> Result<bool> {
    let d = f1.dim();
    if f2.dim() != d || b.rows() != d || b.cols() != d {
        return Err(Error::ShapeMismatch(format!(
            "forms of rank {} and {}, witness {}x{}",
            d,
            f2.dim(),
            b.rows(),
            b.cols()
        )));
    }
    let k = &f1.field;
    if k.is_zero(&matrix::det(k, b)) {
        return Ok(false);
    }
    Ok(matrix::congruence(k, b, &f1.gram) == f2.gram)
}

pub fn qform_from_ints(rows: &[&[i64]]) -> QBilinearForm {
    let gram = Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect())
            .collect(),
    );
    QBilinearForm::new(Rationals, gram).expect("symmetric fixture")
}

pub fn qform_diagonal(entries: &[i64]) -> QBilinearForm {
    let e: Vec<Q> = entries.iter().map(|&x| Q::from_integer(x.into())).collect();
    QBilinearForm::diagonal(Rationals, &e)
}

/// Named Gram fixtures: `U`, `U2`, `E8minus`, `LambdaK3`, `minus2`.
pub fn fixture(name: &str) -> Option<QBilinearForm> {
    crate::zlattice::fixture(name).map(|l| l.to_rational_form())
}
