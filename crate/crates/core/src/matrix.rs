//! Dense matrices and exact linear algebra over a [`Field`] context.

use std::ops::{Index, IndexMut};

use crate::field::{Field, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Sub-matrix of the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

pub fn zeros<K: Field>(k: &K, rows: usize, cols: usize) -> Matrix<K::Elem> {
    Matrix::filled(rows, cols, k.zero())
}

pub fn identity<K: Field>(k: &K, n: usize) -> Matrix<K::Elem> {
    let mut m = zeros(k, n, n);
    for i in 0..n {
        m[(i, i)] = k.one();
    }
    m
}

pub fn diagonal<K: Field>(k: &K, entries: &[K::Elem]) -> Matrix<K::Elem> {
    let mut m = zeros(k, entries.len(), entries.len());
    for (i, e) in entries.iter().enumerate() {
        m[(i, i)] = e.clone();
    }
    m
}

pub fn block_diagonal<K: Field>(k: &K, blocks: &[Matrix<K::Elem>]) -> Matrix<K::Elem> {
    let r: usize = blocks.iter().map(Matrix::rows).sum();
    let c: usize = blocks.iter().map(Matrix::cols).sum();
    let mut m = zeros(k, r, c);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    m
}

/// Entrywise image of a rational matrix in `K`.
pub fn lift<K: Field>(k: &K, a: &Matrix<Q>) -> Matrix<K::Elem> {
    a.map(|x| k.from_rational(x))
}

pub fn mul<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    assert_eq!(a.cols(), b.rows(), "matrix product shape");
    let mut out = zeros(k, a.rows(), b.cols());
    for i in 0..a.rows() {
        for l in 0..a.cols() {
            let ail = &a[(i, l)];
            if k.is_zero(ail) {
                continue;
            }
            for j in 0..b.cols() {
                let blj = &b[(l, j)];
                if k.is_zero(blj) {
                    continue;
                }
                out[(i, j)] = k.add(&out[(i, j)], &k.mul(ail, blj));
            }
        }
    }
    out
}

pub fn add<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    let data = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| k.add(x, y))
        .collect();
    Matrix::from_vec(a.rows(), a.cols(), data)
}

pub fn sub<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    let data = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| k.sub(x, y))
        .collect();
    Matrix::from_vec(a.rows(), a.cols(), data)
}

pub fn scale<K: Field>(k: &K, c: &K::Elem, a: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    a.map(|x| k.mul(c, x))
}

pub fn mul_vec<K: Field>(k: &K, a: &Matrix<K::Elem>, v: &[K::Elem]) -> Vec<K::Elem> {
    assert_eq!(a.cols(), v.len());
    (0..a.rows())
        .map(|i| dot(k, a.row(i), v))
        .collect()
}

pub fn dot<K: Field>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> K::Elem {
    a.iter()
        .zip(b)
        .fold(k.zero(), |acc, (x, y)| k.add(&acc, &k.mul(x, y)))
}

/// `xᵀ G y`.
pub fn bilinear<K: Field>(k: &K, g: &Matrix<K::Elem>, x: &[K::Elem], y: &[K::Elem]) -> K::Elem {
    dot(k, x, &mul_vec(k, g, y))
}

/// `Bᵀ G B`.
pub fn congruence<K: Field>(k: &K, b: &Matrix<K::Elem>, g: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    mul(k, &mul(k, &b.transpose(), g), b)
}

pub fn is_zero_matrix<K: Field>(k: &K, a: &Matrix<K::Elem>) -> bool {
    a.entries().iter().all(|x| k.is_zero(x))
}

pub fn is_symmetric<K: Field>(a: &Matrix<K::Elem>) -> bool {
    a.is_square() && (0..a.rows()).all(|i| (0..i).all(|j| a[(i, j)] == a[(j, i)]))
}

/// Reduced row echelon form. Returns the reduced matrix and the pivot columns.
pub fn rref<K: Field>(k: &K, a: &Matrix<K::Elem>) -> (Matrix<K::Elem>, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows())
            .filter(|&i| !k.is_zero(&m[(i, c)]))
            .min_by_key(|&i| k.height(&m[(i, c)]))
        else {
            continue;
        };
        m.swap_rows(r, p);
        let inv = k.inv(&m[(r, c)]).expect("nonzero pivot");
        for j in c..m.cols() {
            m[(r, j)] = k.mul(&m[(r, j)], &inv);
        }
        for i in 0..m.rows() {
            if i == r || k.is_zero(&m[(i, c)]) {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..m.cols() {
                if k.is_zero(&m[(r, j)]) {
                    continue;
                }
                let t = k.mul(&f, &m[(r, j)]);
                m[(i, j)] = k.sub(&m[(i, j)], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<K: Field>(k: &K, a: &Matrix<K::Elem>) -> usize {
    rref(k, a).1.len()
}

/// Basis of the right kernel `{v : A v = 0}`.
pub fn kernel<K: Field>(k: &K, a: &Matrix<K::Elem>) -> Vec<Vec<K::Elem>> {
    let (m, pivots) = rref(k, a);
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); a.cols()];
            v[f] = k.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = k.neg(&m[(r, f)]);
            }
            v
        })
        .collect()
}

pub fn inverse<K: Field>(k: &K, a: &Matrix<K::Elem>) -> Option<Matrix<K::Elem>> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    let mut aug = zeros(k, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n + i)] = k.one();
    }
    let (m, pivots) = rref(k, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Some(m.select(&rows, &cols))
}

pub fn det<K: Field>(k: &K, a: &Matrix<K::Elem>) -> K::Elem {
    assert!(a.is_square(), "determinant of non-square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut d = k.one();
    for c in 0..n {
        let Some(p) = (c..n)
            .filter(|&i| !k.is_zero(&m[(i, c)]))
            .min_by_key(|&i| k.height(&m[(i, c)]))
        else {
            return k.zero();
        };
        if p != c {
            m.swap_rows(p, c);
            d = k.neg(&d);
        }
        let piv = m[(c, c)].clone();
        d = k.mul(&d, &piv);
        let inv = k.inv(&piv).expect("nonzero pivot");
        for i in c + 1..n {
            if k.is_zero(&m[(i, c)]) {
                continue;
            }
            let f = k.mul(&m[(i, c)], &inv);
            for j in c..n {
                let t = k.mul(&f, &m[(c, j)]);
                m[(i, j)] = k.sub(&m[(i, j)], &t);
            }
        }
    }
    d
}

/// Solves `A x = b` for square invertible `A`.
pub fn solve<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &[K::Elem]) -> Option<Vec<K::Elem>> {
    let inv = inverse(k, a)?;
    Some(mul_vec(k, &inv, b))
}

/// Solves `A x = b` for any consistent system, returning one solution.
pub fn solve_any<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &[K::Elem]) -> Option<Vec<K::Elem>> {
    assert_eq!(a.rows(), b.len());
    let mut aug = zeros(k, a.rows(), a.cols() + 1);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols())] = b[i].clone();
    }
    let (m, pivots) = rref(k, &aug);
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![k.zero(); a.cols()];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m[(r, a.cols())].clone();
    }
    Some(x)
}
