mod common;

use k3rm::cliffordks::{CliffordAlgebra, CliffordElement, KSStructure};
use k3rm::field::{Rationals, Q};
use k3rm::matrix::{self, Matrix};
use k3rm::quadform::qform_diagonal;
use k3rm::rmhodge::negative_plane_period;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::rng;

fn random_gram(r: &mut ChaCha8Rng, d: usize) -> Matrix<Q> {
    let mut g = Matrix::filled(d, d, Q::from_integer(0.into()));
    for i in 0..d {
        for j in i..d {
            let v = Q::new(r.gen_range(-3i64..=3).into(), r.gen_range(1i64..=2).into());
            g[(i, j)] = v.clone();
            g[(j, i)] = v;
        }
    }
    g
}

fn random_element(r: &mut ChaCha8Rng, a: &CliffordAlgebra<Rationals>) -> CliffordElement<Q> {
    let mut u = a.zero();
    for _ in 0..4 {
        let mask = r.gen_range(0..a.dim() as u32);
        let c = Q::from_integer(r.gen_range(-4i64..=4).into());
        u = a.add(&u, &a.monomial(mask, c)).unwrap();
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associative_and_distributive(seed in any::<u64>(), d in 1usize..6) {
        let mut r = rng(seed);
        let a = CliffordAlgebra::new(Rationals, random_gram(&mut r, d)).unwrap();
        let (u, v, w) = (random_element(&mut r, &a), random_element(&mut r, &a), random_element(&mut r, &a));
        let m = |x: &CliffordElement<Q>, y: &CliffordElement<Q>| a.mul(x, y).unwrap();
        prop_assert_eq!(m(&m(&u, &v), &w), m(&u, &m(&v, &w)));
        prop_assert_eq!(m(&u, &a.add(&v, &w).unwrap()), a.add(&m(&u, &v), &m(&u, &w)).unwrap());
        prop_assert_eq!(m(&a.add(&u, &v).unwrap(), &w), a.add(&m(&u, &w), &m(&v, &w)).unwrap());
    }

    #[test]
    fn reversal_is_an_involutive_anti_automorphism(seed in any::<u64>(), d in 1usize..6) {
        let mut r = rng(seed);
        let a = CliffordAlgebra::new(Rationals, random_gram(&mut r, d)).unwrap();
        let (u, v) = (random_element(&mut r, &a), random_element(&mut r, &a));
        let rev = |x: &CliffordElement<Q>| a.reversal(x).unwrap();
        prop_assert_eq!(rev(&a.mul(&u, &v).unwrap()), a.mul(&rev(&v), &rev(&u)).unwrap());
        prop_assert_eq!(rev(&rev(&u)), u);
    }

    #[test]
    fn vectors_square_to_their_norm(seed in any::<u64>(), d in 1usize..6) {
        let mut r = rng(seed);
        let g = random_gram(&mut r, d);
        let a = CliffordAlgebra::new(Rationals, g.clone()).unwrap();
        let v: Vec<Q> = (0..d).map(|_| Q::from_integer(r.gen_range(-3i64..=3).into())).collect();
        let x = a.vector(&v).unwrap();
        let norm = matrix::bilinear(&Rationals, &g, &v, &v);
        prop_assert_eq!(a.mul(&x, &x).unwrap(), a.scalar(norm));
    }

    #[test]
    fn even_coordinates_round_trip(seed in any::<u64>(), d in 2usize..6) {
        let mut r = rng(seed);
        let a = CliffordAlgebra::new(Rationals, random_gram(&mut r, d)).unwrap();
        let coords: Vec<Q> = (0..a.even_dim()).map(|_| Q::from_integer(r.gen_range(-2i64..=2).into())).collect();
        let u = a.from_even_coords(&coords);
        prop_assert!(u.is_even());
        prop_assert_eq!(a.even_coords(&u), coords);
    }
}

#[test]
fn ks_complex_structure_on_diagonal_forms() {
    let f = k3rm::numfield::NumberField::rationals();
    let eps = f.embeddings()[0].clone();
    for entries in [vec![1, -1, -1], vec![1, 1, -1, -1], vec![2, 3, -5, -5, 1]] {
        let psi = qform_diagonal(&entries);
        let coeffs: Vec<_> = entries.iter().map(|&c| f.element_from_ints(&[c])).collect();
        let s = k3rm::rmhodge::construct_rm_structure(&f, entries.len(), &coeffs, &eps).unwrap();
        let p = negative_plane_period(&s, &eps).unwrap();
        let ks = KSStructure::new(&psi, p).unwrap();
        assert!(ks.j_squared_is_minus_one());
        assert_eq!(ks.algebra.even_dim(), 1 << (entries.len() - 1));
    }
}
