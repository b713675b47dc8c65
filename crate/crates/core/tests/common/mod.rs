#![allow(dead_code)]

use k3rm::field::{Field, Rationals, Q};
use k3rm::matrix::{self, Matrix};
use k3rm::numfield::{Embedding, FieldElement, NumberField};
use k3rm::poly::Poly;
use k3rm::rmhodge::{construct_rm_structure, RMStructure};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sqrt2() -> NumberField {
    NumberField::quadratic(2).unwrap()
}

pub fn sqrt5() -> NumberField {
    NumberField::quadratic(5).unwrap()
}

/// The cyclic cubic `X³ - 3X + 1`.
pub fn cubic() -> NumberField {
    NumberField::new(Poly::from_ints(&[1, -3, 0, 1])).unwrap()
}

pub fn sample_fields() -> Vec<NumberField> {
    vec![sqrt2(), sqrt5(), cubic()]
}

pub fn random_element(rng: &mut ChaCha8Rng, f: &NumberField, bound: i64) -> FieldElement {
    let coeffs: Vec<i64> = (0..f.degree()).map(|_| rng.gen_range(-bound..=bound)).collect();
    f.element_from_ints(&coeffs)
}

/// A random element with the prescribed signs at the real embeddings.
pub fn element_with_signs(rng: &mut ChaCha8Rng, f: &NumberField, signs: &[i8]) -> FieldElement {
    for bound in 2.. {
        for _ in 0..200 {
            let a = random_element(rng, f, bound);
            if f.sign_vector(&a) == signs {
                return a;
            }
        }
    }
    unreachable!()
}

pub fn random_totally_positive(rng: &mut ChaCha8Rng, f: &NumberField) -> FieldElement {
    element_with_signs(rng, f, &vec![1; f.degree()])
}

/// A nonzero element that is negative somewhere.
pub fn random_not_totally_positive(rng: &mut ChaCha8Rng, f: &NumberField) -> FieldElement {
    loop {
        let a = random_element(rng, f, 4);
        if !f.is_zero(&a) && f.sign_vector(&a).iter().any(|&s| s < 0) {
            return a;
        }
    }
}

/// Coefficients `a_1, a_2` negative at `eps` and positive elsewhere, the rest totally positive.
pub fn random_coefficients(rng: &mut ChaCha8Rng, f: &NumberField, m: usize, eps: &Embedding) -> Vec<FieldElement> {
    let n = f.degree();
    let mut neg = vec![1i8; n];
    neg[eps.root_index()] = -1;
    (0..m)
        .map(|k| if k < 2 { element_with_signs(rng, f, &neg) } else { random_totally_positive(rng, f) })
        .collect()
}

/// A random invertible integer matrix close to the identity.
pub fn random_basis(rng: &mut ChaCha8Rng, d: usize) -> Matrix<Q> {
    let k = &Rationals;
    loop {
        let mut b = matrix::identity(k, d);
        for i in 0..d {
            for j in 0..d {
                if rng.gen_bool(0.3) {
                    b[(i, j)] += Q::from_integer(rng.gen_range(-2..=2).into());
                }
            }
        }
        if !k.is_zero(&matrix::det(k, &b)) {
            return b;
        }
    }
}

pub struct Sample {
    pub structure: RMStructure,
    pub eps: Embedding,
    pub coefficients: Vec<FieldElement>,
}

/// A structure from random diagonal coefficients, moved to a random basis.
pub fn random_structure(rng: &mut ChaCha8Rng, f: &NumberField, m: usize) -> Sample {
    let embeddings = f.embeddings();
    let eps = embeddings[rng.gen_range(0..embeddings.len())].clone();
    let coefficients = random_coefficients(rng, f, m, &eps);
    let s = construct_rm_structure(f, m, &coefficients, &eps).unwrap();
    let b = random_basis(rng, s.dim());
    Sample {
        structure: s.change_basis(&b).unwrap(),
        eps,
        coefficients,
    }
}

/// Invariant factors from determinantal divisors: `s_k = D_k / D_{k-1}` with
/// `D_k` the gcd of all `k×k` minors.
pub fn determinantal_invariant_factors(m: &k3rm::zlattice::IntMatrix) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Zero};
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut divisors = vec![BigInt::one()];
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                g = g.gcd(&k3rm::zlattice::int_det(&m.select(&rows, &cols)));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| &w[1] / &w[0]).collect()
}

pub fn random_int_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> k3rm::zlattice::IntMatrix {
    let data = (0..rows * cols).map(|_| num_bigint::BigInt::from(rng.gen_range(-bound..=bound))).collect();
    Matrix::from_vec(rows, cols, data)
}
