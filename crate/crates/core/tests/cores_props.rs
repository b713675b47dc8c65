mod common;

use k3rm::cliffordks::CliffordAlgebra;
use k3rm::cores::{build_corestriction, embed_cores_in_clifford, FAlgebra, TwistedTensor};
use k3rm::field::Field;
use k3rm::numfield::{FieldElement, NumberField};
use k3rm::rmhodge::construct_rm_structure;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

use common::{random_coefficients, random_element, rng, sqrt2, sqrt5};

fn m2_inverse(f: &NumberField, u: &[FieldElement]) -> Option<Vec<FieldElement>> {
    // [[a, b], [c, d]] at indices 0, 1, 2, 3
    let det = f.sub(&f.mul(&u[0], &u[3]), &f.mul(&u[1], &u[2]));
    let inv = f.inv(&det)?;
    Some(vec![
        f.mul(&u[3], &inv),
        f.neg(&f.mul(&u[1], &inv)),
        f.neg(&f.mul(&u[2], &inv)),
        f.mul(&u[0], &inv),
    ])
}

fn random_vec(r: &mut ChaCha8Rng, f: &NumberField, n: usize) -> Vec<FieldElement> {
    (0..n).map(|_| random_element(r, f, 3)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn diagonal_lands_in_fixed_unit_group(seed in any::<u64>()) {
        let f = sqrt2();
        let mut r = rng(seed);
        let m2 = FAlgebra::matrix_algebra(&f, 2).unwrap();
        let c = build_corestriction(&m2).unwrap();
        let t = &c.tensor;
        let u = random_vec(&mut r, &f, 4);
        let Some(ui) = m2_inverse(&f, &u) else { return Ok(()) };
        let du = t.to_rational(&t.diagonal(&u));
        let dui = t.to_rational(&t.diagonal(&ui));
        let cu = c.coordinates(&du);
        let cui = c.coordinates(&dui);
        prop_assert!(cu.is_some() && cui.is_some());
        let (cu, cui) = (cu.unwrap(), cui.unwrap());
        prop_assert_eq!(c.mul(&cu, &cui), c.unit.clone());
        prop_assert_eq!(c.mul(&cui, &cu), c.unit.clone());
    }

    #[test]
    fn galois_action_is_multiplicative_involution(seed in any::<u64>()) {
        let f = sqrt5();
        let mut r = rng(seed);
        let t = TwistedTensor::new(FAlgebra::matrix_algebra(&f, 2).unwrap()).unwrap();
        let x = random_vec(&mut r, &f, 16);
        let y = random_vec(&mut r, &f, 16);
        prop_assert_eq!(t.galois_action(&t.galois_action(&x)), x.clone());
        prop_assert_eq!(t.galois_action(&t.mul(&x, &y)), t.mul(&t.galois_action(&x), &t.galois_action(&y)));
    }

    #[test]
    fn cores_of_random_even_clifford_has_square_dimension(seed in any::<u64>()) {
        let f = sqrt2();
        let mut r = rng(seed);
        let phi = random_vec(&mut r, &f, 3);
        prop_assume!(phi.iter().all(|a| !f.is_zero(a)));
        let alg = CliffordAlgebra::new(f.clone(), k3rm::matrix::diagonal(&f, &phi)).unwrap();
        let even = FAlgebra::even_clifford(&alg).unwrap();
        prop_assert_eq!(build_corestriction(&even).unwrap().dim(), 16);
    }
}

#[test]
fn galois_action_on_all_basis_pairs() {
    let f = sqrt2();
    let phi = [f.element_from_ints(&[1, -1]), f.element_from_ints(&[1, -1]), f.one()];
    let alg = CliffordAlgebra::new(f.clone(), k3rm::matrix::diagonal(&f, &phi)).unwrap();
    let t = TwistedTensor::new(FAlgebra::even_clifford(&alg).unwrap()).unwrap();
    let n = t.dim();
    let e = |i: usize| -> Vec<FieldElement> { (0..n).map(|k| if k == i { f.one() } else { f.zero() }).collect() };
    for i in 0..n {
        assert_eq!(t.galois_action(&t.galois_action(&e(i))), e(i));
        for j in 0..n {
            let lhs = t.galois_action(&t.mul(&e(i), &e(j)));
            let rhs = t.mul(&t.galois_action(&e(i)), &t.galois_action(&e(j)));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn embeddings_for_random_structures() {
    for (seed, f) in [(1u64, sqrt2()), (2, sqrt5())] {
        let mut r = rng(seed);
        for eps in f.embeddings() {
            let a = random_coefficients(&mut r, &f, 3, &eps);
            let s = construct_rm_structure(&f, 3, &a, &eps).unwrap();
            let s = s.change_basis(&common::random_basis(&mut r, 6)).unwrap();
            let e = embed_cores_in_clifford(&s).unwrap();
            assert_eq!(e.cores.dim(), 16);
            assert_eq!(e.target_dim, 32);
        }
    }
}
