//! Integer lattices: Smith normal form, primitivity, orthogonal complements
//! and the K3 lattice `U³ ⊕ E8(-1)²`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Rationals, Q};
use crate::matrix::Matrix;
use crate::quadform::{self, QBilinearForm};

pub type IntMatrix = Matrix<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    gram: IntMatrix,
}

impl IntegerLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::ShapeMismatch(format!("{}x{} Gram matrix", gram.rows(), gram.cols())));
        }
        let n = gram.rows();
        if !(0..n).all(|i| (0..i).all(|j| gram[(i, j)] == gram[(j, i)])) {
            return Err(Error::NotSymmetric);
        }
        Ok(IntegerLattice { gram })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::new(int_matrix(rows)).expect("symmetric fixture")
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// All diagonal entries even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn scaled(&self, c: i64) -> Self {
        IntegerLattice {
            gram: self.gram.map(|x| x * c),
        }
    }

    pub fn to_rational_form(&self) -> QBilinearForm {
        QBilinearForm::new(Rationals, self.gram.map(|x| Q::from_integer(x.clone())))
            .expect("lattice Gram is symmetric")
    }

    pub fn signature(&self) -> Result<(usize, usize)> {
        quadform::signature(&self.to_rational_form())
    }

    pub fn is_unimodular(&self) -> bool {
        discriminant_group_order(self).is_ok_and(|d| d.is_one())
    }

    /// Gram matrix of the sublattice spanned by the rows of `basis`.
    pub fn sublattice_gram(&self, basis: &IntMatrix) -> IntMatrix {
        int_mul(&int_mul(basis, &self.gram), &basis.transpose())
    }
}

/// Orthogonal direct sum.
pub fn direct_sum(parts: &[&IntegerLattice]) -> IntegerLattice {
    let n: usize = parts.iter().map(|l| l.rank()).sum();
    let mut g = Matrix::filled(n, n, BigInt::zero());
    let mut off = 0;
    for l in parts {
        for i in 0..l.rank() {
            for j in 0..l.rank() {
                g[(off + i, off + j)] = l.gram[(i, j)].clone();
            }
        }
        off += l.rank();
    }
    IntegerLattice { gram: g }
}

pub fn hyperbolic_plane() -> IntegerLattice {
    IntegerLattice::from_ints(&[&[0, 1], &[1, 0]])
}

/// Positive definite E8 (Cartan matrix, Bourbaki labelling).
pub fn e8() -> IntegerLattice {
    let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut g = Matrix::filled(8, 8, BigInt::zero());
    for i in 0..8 {
        g[(i, i)] = BigInt::from(2);
    }
    for (a, b) in edges {
        g[(a, b)] = BigInt::from(-1);
        g[(b, a)] = BigInt::from(-1);
    }
    IntegerLattice { gram: g }
}

/// `U³ ⊕ E8(-1)²`.
pub fn k3_lattice() -> IntegerLattice {
    let u = hyperbolic_plane();
    let e = e8().scaled(-1);
    direct_sum(&[&u, &u, &u, &e, &e])
}

/// Named fixtures: `U`, `U2`, `E8minus`, `LambdaK3`, `minus2`.
pub fn fixture(name: &str) -> Option<IntegerLattice> {
    Some(match name {
        "U" => hyperbolic_plane(),
        "U2" => hyperbolic_plane().scaled(2),
        "E8" => e8(),
        "E8minus" => e8().scaled(-1),
        "LambdaK3" => k3_lattice(),
        "minus2" => IntegerLattice::from_ints(&[&[-2]]),
        _ => return None,
    })
}

pub const FIXTURE_NAMES: [&str; 5] = ["U", "U2", "E8minus", "LambdaK3", "minus2"];

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
}

pub fn int_identity(n: usize) -> IntMatrix {
    let mut m = Matrix::filled(n, n, BigInt::zero());
    for i in 0..n {
        m[(i, i)] = BigInt::one();
    }
    m
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    assert_eq!(a.cols(), b.rows(), "matrix product shape");
    let mut out = Matrix::filled(a.rows(), b.cols(), BigInt::zero());
    for i in 0..a.rows() {
        for l in 0..a.cols() {
            if a[(i, l)].is_zero() {
                continue;
            }
            for j in 0..b.cols() {
                let t = &a[(i, l)] * &b[(l, j)];
                out[(i, j)] += t;
            }
        }
    }
    out
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn int_det(m: &IntMatrix) -> BigInt {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`, `dᵢ ≥ 0`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with transforms; pivots on the entry of least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = int_identity(r);
    let mut v = int_identity(c);
    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| !d[(i, j)].is_zero())
                .min_by(|&a, &b| d[a].abs().cmp(&d[b].abs()))
            else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match bad {
                Some((i, _)) => {
                    // row_t += row_i, then the pivot no longer divides its own row
                    row_axpy(&mut d, t, i, &BigInt::from(-1));
                    row_axpy(&mut u, t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    finish(u, d, v)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix) -> SmithForm {
    SmithForm { u, d, v }
}

/// `row_i -= q · row_src`.
fn row_axpy(m: &mut IntMatrix, i: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let t = q * &m[(src, j)];
        m[(i, j)] -= t;
    }
}

/// `col_j -= q · col_src`.
fn col_axpy(m: &mut IntMatrix, j: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let t = q * &m[(i, src)];
        m[(i, j)] -= t;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        m[(i, j)] = -&m[(i, j)];
    }
}

/// Checks `B·G_L·Bᵀ = G_T` and that the row span of `B` is saturated in `Zʳ`.
///
/// A Gram mismatch is reported as an error so it cannot be confused with a
/// primitivity failure.
pub fn is_primitive_embedding(b: &IntMatrix, ambient: &IntegerLattice, t: &IntegerLattice) -> Result<bool> {
    if b.cols() != ambient.rank() || b.rows() != t.rank() {
        return Err(Error::ShapeMismatch(format!(
            "embedding matrix is {}x{}, expected {}x{}",
            b.rows(),
            b.cols(),
            t.rank(),
            ambient.rank()
        )));
    }
    let g = ambient.sublattice_gram(b);
    if &g != t.gram() {
        return Err(Error::GramMismatch(format!(
            "image Gram {:?} differs from target",
            g.to_rows()
        )));
    }
    let snf = smith_normal_form(b);
    let factors = snf.invariant_factors();
    Ok(factors.len() == b.rows() && factors.iter().all(One::is_one))
}

/// Saturated basis (as rows) of `{v ∈ L : (v, s) = 0 for all rows s of S}`.
pub fn orthogonal_complement(l: &IntegerLattice, s: &IntMatrix) -> IntMatrix {
    if s.rows() == 0 {
        return int_identity(l.rank());
    }
    let m = int_mul(s, l.gram());
    let snf = smith_normal_form(&m);
    let rank = snf.rank();
    let rows: Vec<Vec<BigInt>> = (rank..l.rank()).map(|j| snf.v.col(j)).collect();
    if rows.is_empty() {
        Matrix::filled(0, l.rank(), BigInt::zero())
    } else {
        Matrix::from_rows(rows)
    }
}

/// `|det G|`, computed as the product of the invariant factors.
pub fn discriminant_group_order(l: &IntegerLattice) -> Result<BigInt> {
    let snf = smith_normal_form(l.gram());
    if snf.rank() < l.rank() {
        return Err(Error::Degenerate);
    }
    Ok(snf.invariant_factors().iter().product())
}

/// Invariant factors of the discriminant group `L^∨/L`, dropping trivial ones.
pub fn discriminant_group(l: &IntegerLattice) -> Result<Vec<BigInt>> {
    let snf = smith_normal_form(l.gram());
    if snf.rank() < l.rank() {
        return Err(Error::Degenerate);
    }
    Ok(snf.invariant_factors().into_iter().filter(|x| !x.is_one()).collect())
}

/// Options for the bounded embedding search.
#[derive(Clone, Debug)]
pub struct SearchBox {
    /// Coordinates range over `-bound..=bound`.
    pub bound: i64,
    /// Only the first `support` coordinates of the ambient lattice are used.
    pub support: usize,
}

/// Best-effort search for a primitive embedding `T ↪ L` with coefficients in a box.
///
/// Returns `None` when the box is exhausted; that says nothing about existence.
pub fn search_embedding(t: &IntegerLattice, l: &IntegerLattice, bx: &SearchBox) -> Option<IntMatrix> {
    let support = bx.support.min(l.rank());
    let width = (2 * bx.bound + 1) as usize;
    let total = width.checked_pow(support as u32)?;
    let candidates: Vec<Vec<BigInt>> = (0..total)
        .map(|mut idx| {
            let mut v = vec![BigInt::zero(); l.rank()];
            for slot in v.iter_mut().take(support) {
                *slot = BigInt::from((idx % width) as i64 - bx.bound);
                idx /= width;
            }
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let pair = |x: &[BigInt], y: &[BigInt]| -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..support {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..support {
                acc += &x[i] * &l.gram[(i, j)] * &y[j];
            }
        }
        acc
    };
    let by_norm = |target: &BigInt| -> Vec<&Vec<BigInt>> {
        candidates.iter().filter(|v| &pair(v, v) == target).collect()
    };
    let r = t.rank();
    if r == 0 {
        return Some(Matrix::filled(0, l.rank(), BigInt::zero()));
    }
    let pools: Vec<Vec<&Vec<BigInt>>> = (0..r).map(|i| by_norm(&t.gram[(i, i)])).collect();

    fn extend(
        chosen: &mut Vec<Vec<BigInt>>,
        pools: &[Vec<&Vec<BigInt>>],
        t: &IntegerLattice,
        l: &IntegerLattice,
        pair: &dyn Fn(&[BigInt], &[BigInt]) -> BigInt,
    ) -> Option<IntMatrix> {
        let k = chosen.len();
        if k == pools.len() {
            let b = Matrix::from_rows(chosen.clone());
            return is_primitive_embedding(&b, l, t).ok()?.then_some(b);
        }
        for cand in &pools[k] {
            if (0..k).all(|j| pair(cand, &chosen[j]) == t.gram[(k, j)]) {
                chosen.push((*cand).clone());
                if let Some(b) = extend(chosen, pools, t, l, pair) {
                    return Some(b);
                }
                chosen.pop();
            }
        }
        None
    }

    pools[0].par_iter().find_map_any(|first| {
        let mut chosen = vec![(*first).clone()];
        extend(&mut chosen, &pools, t, l, &pair)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(s: &SmithForm) -> Vec<i64> {
        (0..s.d.rows().min(s.d.cols()))
            .map(|i| i64::try_from(&s.d[(i, i)]).unwrap())
            .collect()
    }

    fn check_snf(m: &IntMatrix, s: &SmithForm) {
        assert_eq!(int_mul(&int_mul(&s.u, m), &s.v), s.d);
        assert!(int_det(&s.u).abs().is_one());
        assert!(int_det(&s.v).abs().is_one());
    }

    #[test]
    fn snf_examples() {
        let m = int_matrix(&[&[0, 2], &[2, 0]]);
        let s = smith_normal_form(&m);
        check_snf(&m, &s);
        assert_eq!(diag_of(&s), vec![2, 2]);
        let id = int_identity(3);
        assert_eq!(smith_normal_form(&id).d, id);
        let e = e8();
        let s = smith_normal_form(e.gram());
        check_snf(e.gram(), &s);
        assert_eq!(s.d, int_identity(8));
    }

    #[test]
    fn snf_divisibility_fix() {
        let m = int_matrix(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&m);
        check_snf(&m, &s);
        assert_eq!(diag_of(&s), vec![1, 6]);
    }

    #[test]
    fn k3_lattice_invariants() {
        let l = k3_lattice();
        assert_eq!(l.rank(), 22);
        assert!(l.is_even());
        assert!(l.is_unimodular());
        assert_eq!(l.signature().unwrap(), (3, 19));
        assert_eq!(int_det(l.gram()), BigInt::from(-1));
    }

    #[test]
    fn primitivity() {
        let u = hyperbolic_plane();
        let u2 = fixture("U2").unwrap();
        let b = int_matrix(&[&[1, 0], &[0, 2]]);
        assert!(!is_primitive_embedding(&b, &u, &u2).unwrap());
        let l = k3_lattice();
        let mut rows = [vec![0i64; 22], vec![0i64; 22]];
        rows[0][2] = 1;
        rows[1][3] = 1;
        let b = int_matrix(&[&rows[0], &rows[1]]);
        assert!(is_primitive_embedding(&b, &l, &u).unwrap());
        assert!(matches!(
            is_primitive_embedding(&b, &l, &u2),
            Err(Error::GramMismatch(_))
        ));
    }

    #[test]
    fn complements() {
        let uu = direct_sum(&[&hyperbolic_plane(), &hyperbolic_plane()]);
        let s = int_matrix(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let c = orthogonal_complement(&uu, &s);
        assert_eq!(c.rows(), 2);
        let g = uu.sublattice_gram(&c);
        assert_eq!(int_det(&g), BigInt::from(-1));
        assert!(is_primitive_embedding(&c, &uu, &IntegerLattice::new(g).unwrap()).unwrap());

        let l = k3_lattice();
        let mut h = vec![0i64; 22];
        h[0] = 1;
        h[1] = 1;
        let c = orthogonal_complement(&l, &int_matrix(&[&h]));
        assert_eq!(c.rows(), 21);
        let t = IntegerLattice::new(l.sublattice_gram(&c)).unwrap();
        assert_eq!(t.signature().unwrap(), (2, 19));
        assert!(is_primitive_embedding(&c, &l, &t).unwrap());

        let empty = Matrix::filled(0, 4, BigInt::zero());
        assert_eq!(orthogonal_complement(&uu, &empty), int_identity(4));
    }

    #[test]
    fn discriminant_orders() {
        let u2 = fixture("U2").unwrap();
        let m2 = fixture("minus2").unwrap();
        let t = direct_sum(&[&u2, &u2, &m2, &m2]);
        assert_eq!(discriminant_group_order(&t).unwrap(), BigInt::from(64));
        assert_eq!(discriminant_group_order(&k3_lattice()).unwrap(), BigInt::one());
        assert_eq!(discriminant_group_order(&m2).unwrap(), BigInt::from(2));
        let degenerate = IntegerLattice::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(discriminant_group_order(&degenerate), Err(Error::Degenerate));
    }

    #[test]
    fn embedding_search_finds_u_in_u_plus_u() {
        let uu = direct_sum(&[&hyperbolic_plane(), &hyperbolic_plane()]);
        let found = search_embedding(&hyperbolic_plane(), &uu, &SearchBox { bound: 1, support: 4 }).unwrap();
        assert!(is_primitive_embedding(&found, &uu, &hyperbolic_plane()).unwrap());
        // e + f has norm 2
        let two = IntegerLattice::from_ints(&[&[2]]);
        assert!(search_embedding(&two, &uu, &SearchBox { bound: 1, support: 4 }).is_some());
        let odd = IntegerLattice::from_ints(&[&[1]]);
        assert!(search_embedding(&odd, &uu, &SearchBox { bound: 2, support: 4 }).is_none());
    }
}
