mod common;

use k3rm::field::{Field, Q};
use k3rm::numfield::{square_class, NumberField};
use k3rm::poly::{isolate_real_roots, Poly};
use num_bigint::BigInt;
use proptest::prelude::*;

use common::{random_element, rng};

fn product_of_linear(roots: &[Q]) -> Poly {
    roots.iter().fold(Poly::constant(Q::from_integer(1.into())), |acc, r| {
        acc.mul(&Poly::new(vec![-r.clone(), Q::from_integer(1.into())]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isolation_brackets_each_root(nums in prop::collection::btree_set(-40i64..40, 1..6), den in 1i64..5) {
        let roots: Vec<Q> = nums.iter().map(|&n| Q::new(n.into(), den.into())).collect();
        let ivs = isolate_real_roots(&product_of_linear(&roots)).unwrap();
        prop_assert_eq!(ivs.len(), roots.len());
        for (iv, r) in ivs.iter().zip(&roots) {
            prop_assert!(iv.lo <= *r && *r <= iv.hi);
        }
    }

    #[test]
    fn trace_additive_norm_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        for f in common::sample_fields() {
            let a = random_element(&mut r, &f, 6);
            let b = random_element(&mut r, &f, 6);
            prop_assert_eq!(f.trace(&f.add(&a, &b)), f.trace(&a) + f.trace(&b));
            prop_assert_eq!(f.norm(&f.mul(&a, &b)), f.norm(&a) * f.norm(&b));
        }
    }

    #[test]
    fn sign_matches_float(seed in any::<u64>()) {
        let mut r = rng(seed);
        for f in common::sample_fields() {
            let a = random_element(&mut r, &f, 9);
            for e in f.embeddings() {
                let approx = e.approx(&a);
                if approx.abs() > 1e-6 {
                    prop_assert_eq!(e.sign_at(&a), if approx > 0.0 { 1 } else { -1 });
                }
            }
        }
    }

    #[test]
    fn inverse_is_inverse(seed in any::<u64>()) {
        let mut r = rng(seed);
        for f in common::sample_fields() {
            let a = random_element(&mut r, &f, 7);
            if let Some(inv) = f.inv(&a) {
                prop_assert!(f.is_one(&f.mul(&a, &inv)));
            } else {
                prop_assert!(f.is_zero(&a));
            }
        }
    }

    #[test]
    fn square_class_ignores_squares(n in -500i64..500, d in 1i64..50, t in 1i64..30) {
        prop_assume!(n != 0);
        let q = Q::new(n.into(), d.into());
        let scaled = &q * Q::from_integer((t * t).into());
        let c = square_class(&q).unwrap();
        prop_assert_eq!(square_class(&scaled).unwrap(), c.clone());
        // squarefree representative with the sign of q
        prop_assert_eq!(c.sign(), BigInt::from(n).sign());
    }
}

#[test]
fn quadratic_fields_are_real_and_conjugation_is_an_automorphism() {
    for d in [2, 3, 5, 7, 10] {
        let f = NumberField::quadratic(d).unwrap();
        assert!(f.is_totally_real());
        let mut r = rng(d as u64);
        for _ in 0..10 {
            let a = random_element(&mut r, &f, 5);
            let b = random_element(&mut r, &f, 5);
            let g = |x: &k3rm::numfield::FieldElement| f.quadratic_conjugate(x).unwrap();
            assert_eq!(g(&f.mul(&a, &b)), f.mul(&g(&a), &g(&b)));
            assert_eq!(f.mul(&a, &g(&a)), f.from_rational(&f.norm(&a)));
        }
    }
}
