mod common;

use k3rm::zlattice::{
    direct_sum, discriminant_group_order, fixture, hyperbolic_plane, int_det, int_matrix, int_mul,
    is_primitive_embedding, k3_lattice, orthogonal_complement, smith_normal_form, IntegerLattice,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::{determinantal_invariant_factors, random_int_matrix, rng};

fn is_primitive_rows(b: &k3rm::zlattice::IntMatrix) -> bool {
    let f = smith_normal_form(b).invariant_factors();
    f.len() == b.rows() && f.iter().all(|x| x.abs().is_one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_matches_determinantal_divisors(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5) {
        let m = random_int_matrix(&mut rng(seed), rows, cols, 9);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(int_mul(&int_mul(&snf.u, &m), &snf.v), snf.d.clone());
        prop_assert!(int_det(&snf.u).abs().is_one());
        prop_assert!(int_det(&snf.v).abs().is_one());
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    prop_assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        let got: Vec<BigInt> = snf.invariant_factors().iter().map(|x| x.abs()).collect();
        for w in got.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(got, determinantal_invariant_factors(&m));
    }

    #[test]
    fn complement_is_primitive_and_orthogonal(seed in any::<u64>(), k in 1usize..3) {
        let l = direct_sum(&[&hyperbolic_plane(), &hyperbolic_plane(), &IntegerLattice::from_ints(&[&[-2]])]);
        let s = random_int_matrix(&mut rng(seed), k, l.rank(), 3);
        let c = orthogonal_complement(&l, &s);
        if c.rows() > 0 {
            prop_assert!(is_primitive_rows(&c));
            let cross = int_mul(&int_mul(&s, l.gram()), &c.transpose());
            prop_assert!(cross.entries().iter().all(Zero::is_zero));
        }
        let snf = smith_normal_form(&s);
        prop_assert_eq!(c.rows(), l.rank() - snf.rank());
    }
}

#[test]
fn k3_lattice_fixture() {
    let l = k3_lattice();
    assert!(l.is_even());
    assert!(l.is_unimodular());
    assert_eq!(l.signature().unwrap(), (3, 19));
    assert_eq!(discriminant_group_order(&l).unwrap(), BigInt::one());
    assert_eq!(fixture("LambdaK3").unwrap().gram(), l.gram());
}

#[test]
fn scaled_plane_is_not_primitive() {
    let u = hyperbolic_plane();
    let u2 = fixture("U2").unwrap();
    let b = int_matrix(&[&[1, 0], &[0, 2]]);
    assert!(!is_primitive_embedding(&b, &u, &u2).unwrap());
    assert!(is_primitive_embedding(&int_matrix(&[&[1, 0], &[0, 1]]), &u, &u).unwrap());
}

#[test]
fn complement_of_a_positive_class_in_k3() {
    let l = k3_lattice();
    // h = e + f in the first hyperbolic plane, h² = 2
    let mut row = vec![0i64; 22];
    row[0] = 1;
    row[1] = 1;
    let h = int_matrix(&[&row]);
    let c = orthogonal_complement(&l, &h);
    assert_eq!(c.rows(), 21);
    let t = IntegerLattice::new(l.sublattice_gram(&c)).unwrap();
    assert_eq!(t.signature().unwrap(), (2, 19));
    assert_eq!(discriminant_group_order(&t).unwrap(), BigInt::from(2));
}
