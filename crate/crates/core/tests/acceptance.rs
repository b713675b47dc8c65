//! Acceptance suite: one line per criterion, exit status 1 if any fails.

mod common;

use std::time::{Duration, Instant};

use k3rm::cliffordks::{check_riemann, default_seed, trace_pairing, KSStructure};
use k3rm::cores::embed_cores_in_clifford;
use k3rm::field::{Field, Rationals, Q};
use k3rm::matrix;
use k3rm::numfield::{quadratic_sqrt, square_class, NumberField};
use k3rm::quadform::{det_square_class, qform_diagonal, signature};
use k3rm::rmhodge::{
    build_double_cover_example, construct_period, construct_rm_structure, default_coefficients,
    det_class_identity, embedding_signatures, is_polarization, recover_f_bilinear, simplicity_check,
    trace_form, twist_det_identity, twist_polarization, PeriodData, Simplicity,
};
use k3rm::spinbranch::{boxtimes, check_branching, decompose_sl2k, sl2_irrep, wedge2};
use k3rm::zlattice::{fixture, hyperbolic_plane, int_matrix, is_primitive_embedding, k3_lattice, smith_normal_form};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::Rng;

use common::{
    determinantal_invariant_factors, random_int_matrix, random_not_totally_positive, random_structure,
    random_totally_positive, rng, sample_fields, Sample,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Runner {
    failures: usize,
}

impl Runner {
    fn run(&mut self, id: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let timing = match limit {
            Some(l) => format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        let (pass, detail) = match outcome {
            Ok(d) if limit.is_none_or(|l| elapsed <= l) => (true, d),
            Ok(d) => (false, format!("{d}; over time limit")),
            Err(e) => (false, e),
        };
        if !pass {
            self.failures += 1;
        }
        println!(
            "criterion {id:>2} {}: {name} ({timing}) {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

/// 50 structures cycling through the three fields and m = 3, 4.
fn sample() -> Vec<Sample> {
    let fields = sample_fields();
    let mut r = rng(20_26);
    (0..50).map(|i| random_structure(&mut r, &fields[i % 3], 3 + (i / 3) % 2)).collect()
}

fn round_trip(samples: &[Sample]) -> Outcome {
    for (i, s) in samples.iter().enumerate() {
        let s = &s.structure;
        let phi = recover_f_bilinear(s).map_err(|e| format!("sample {i}: {e}"))?;
        let back = trace_form(s.field(), &phi.phi, Some(&phi.frame));
        ensure(back.gram() == s.psi().gram(), || format!("sample {i}: tr(Φ) ≠ ψ"))?;
    }
    Ok(format!("{} structures", samples.len()))
}

fn det_identities(samples: &[Sample]) -> Outcome {
    let mut r = rng(45);
    for (i, s) in samples.iter().enumerate() {
        let st = &s.structure;
        let (lhs, rhs) = det_class_identity(st).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("sample {i}: det ψ class {lhs} vs {rhs}"))?;
        let f = st.field();
        let a = loop {
            let a = common::random_element(&mut r, f, 5);
            if !f.is_zero(&a) {
                break a;
            }
        };
        let (lhs, rhs) = twist_det_identity(st, &a).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("sample {i}: det ψ_a class {lhs} vs {rhs}"))?;
    }
    Ok(format!("{} structures, both identities", samples.len()))
}

fn polarization_equivalence(samples: &[Sample]) -> Outcome {
    let mut r = rng(42);
    let mut per_field = Vec::new();
    for f in sample_fields() {
        let mine: Vec<&Sample> = samples.iter().filter(|s| s.structure.field() == &f).take(4).collect();
        let mut count = 0;
        for (j, s) in mine.iter().enumerate() {
            let st = &s.structure;
            let p = construct_period(st, &s.eps).map_err(|e| e.to_string())?;
            for k in 0..5 {
                let a = if (j + k) % 2 == 0 {
                    random_totally_positive(&mut r, &f)
                } else {
                    random_not_totally_positive(&mut r, &f)
                };
                let tw = twist_polarization(st, &a).map_err(|e| e.to_string())?;
                let pol = is_polarization(&tw.form, st, &p).map_err(|e| e.to_string())?;
                let tp = f.is_totally_positive(&a).map_err(|e| e.to_string())?;
                ensure(pol == tp, || format!("{f:?}: a = {:?} polarization {pol}, totally positive {tp}", a))?;
                count += 1;
            }
        }
        ensure(count >= 20, || format!("only {count} elements for {f:?}"))?;
        per_field.push(count);
    }
    Ok(format!("{per_field:?} elements per field, 0 mismatches"))
}

fn obstruction() -> Outcome {
    for d in [2i64, 3, 5, 7, 10] {
        let f = NumberField::quadratic(d).map_err(|e| e.to_string())?;
        let eps = f.embeddings()[1].clone();
        let coeffs = default_coefficients(&f, 3, &eps).map_err(|e| e.to_string())?;
        let s = construct_rm_structure(&f, 3, &coeffs, &eps).map_err(|e| e.to_string())?;
        let root = quadratic_sqrt(&f, &f.from_int(d)).ok_or("no √d")?;
        let a = f.add(&f.from_int(d), &root);
        let tw = twist_polarization(&s, &a).map_err(|e| e.to_string())?;
        ensure(tw.polarization, || format!("d = {d}: d+√d is not totally positive"))?;
        let before = det_square_class(s.psi()).map_err(|e| e.to_string())?;
        let after = det_square_class(&tw.form).map_err(|e| e.to_string())?;
        let nonsquare = !square_class(&Q::from_integer((d * (d - 1)).into())).unwrap().is_one();
        ensure(nonsquare, || format!("d = {d}: d(d-1) is a square"))?;
        ensure((before != after) == nonsquare, || format!("d = {d}: classes {before}, {after}"))?;
    }
    Ok("d ∈ {2,3,5,7,10}: classes differ in every case".into())
}

fn double_covers() -> Outcome {
    let q = &Rationals;
    let mut out = Vec::new();
    for d in [5i64, 13] {
        let s = build_double_cover_example(d).map_err(|e| e.to_string())?;
        let f = s.field();
        let root = quadratic_sqrt(f, &f.from_int(d)).ok_or("no √d")?;
        let a = s.rho(&root);
        let dd = matrix::scale(q, &Q::from_integer(d.into()), &matrix::identity(q, 6));
        ensure(matrix::mul(q, &a, &a) == dd, || format!("d = {d}: a² ≠ d·I"))?;
        let g = s.psi().gram();
        ensure(matrix::mul(q, &a.transpose(), g) == matrix::mul(q, g, &a), || format!("d = {d}: not self-adjoint"))?;
        let mut sigs = embedding_signatures(&s).map_err(|e| e.to_string())?;
        sigs.sort();
        ensure(sigs == vec![(1, 2), (3, 0)], || format!("d = {d}: eigenspace signatures {sigs:?}"))?;
        // ψ is negative on the period plane, so it is the cup product with the sign reversed
        let model = qform_diagonal(&[1, 1, -1, -1, -1, -1]);
        let cup = k3rm::quadform::BilinearForm::new(Rationals, s.psi().gram().map(|x| -x)).map_err(|e| e.to_string())?;
        let sig = signature(&cup).map_err(|e| e.to_string())?;
        let class = det_square_class(&cup).map_err(|e| e.to_string())?;
        ensure(sig == signature(&model).unwrap(), || format!("d = {d}: signature {sig:?}"))?;
        ensure(class == det_square_class(&model).unwrap(), || format!("d = {d}: det class {class}"))?;
        out.push(d);
    }
    Ok(format!("d = {out:?}: a² = dI, (3,0) and (1,2), ψ of signature (4,2), -ψ ≃ ⟨1⟩²⊕⟨−1⟩⁴"))
}

fn theorem_signatures(samples: &[Sample]) -> Outcome {
    let mut checked = 0;
    for (i, s) in samples.iter().enumerate() {
        let st = &s.structure;
        if construct_period(st, &s.eps).is_err() {
            continue;
        }
        let sigs = embedding_signatures(st).map_err(|e| e.to_string())?;
        let m = st.m();
        let special = sigs.iter().filter(|&&x| x == (m - 2, 2)).count();
        let definite = sigs.iter().filter(|&&x| x == (m, 0)).count();
        ensure(special == 1 && definite == sigs.len() - 1, || format!("sample {i}: {sigs:?}"))?;
        ensure(sigs[s.eps.root_index()] == (m - 2, 2), || format!("sample {i}: wrong place"))?;
        checked += 1;
    }
    ensure(checked == samples.len(), || format!("only {checked} structures had a period"))?;
    Ok(format!("{checked} structures"))
}

fn kuga_satake() -> Outcome {
    let q_field = NumberField::rationals();
    let q_eps = q_field.embeddings()[0].clone();
    let mut r = rng(7);
    let mut structures = Vec::new();
    for m in [3usize, 3, 3, 3, 4, 4, 4] {
        let coeffs: Vec<_> = (0..m)
            .map(|k| {
                let v = r.gen_range(1i64..=5);
                q_field.from_int(if k < 2 { -v } else { v })
            })
            .collect();
        structures.push(construct_rm_structure(&q_field, m, &coeffs, &q_eps).map_err(|e| e.to_string())?);
    }
    for f in [common::sqrt2(), common::sqrt5()] {
        let eps = f.embeddings()[1].clone();
        let coeffs = common::random_coefficients(&mut r, &f, 3, &eps);
        structures.push(construct_rm_structure(&f, 3, &coeffs, &eps).map_err(|e| e.to_string())?);
    }
    let coeffs: Vec<_> = [-1, -2, 1, 1, 3, 1].iter().map(|&c| q_field.from_int(c)).collect();
    structures.push(construct_rm_structure(&q_field, 6, &coeffs, &q_eps).map_err(|e| e.to_string())?);

    let mut dims = Vec::new();
    for (i, s) in structures.iter().enumerate() {
        let eps = s.field().embeddings().into_iter().find(|e| {
            embedding_signatures(s).map(|sig| sig[e.root_index()].1 == 2).unwrap_or(false)
        });
        let eps = eps.ok_or(format!("structure {i}: no special place"))?;
        let p = construct_period(s, &eps).map_err(|e| format!("structure {i}: {e}"))?;
        let d = s.dim();
        let ks = KSStructure::new(s.psi(), p).map_err(|e| e.to_string())?;
        ensure(ks.j_squared_is_minus_one(), || format!("structure {i}: J² ≠ -1"))?;
        ensure(ks.algebra.even_dim() == 1 << (d - 1), || format!("structure {i}: dim C⁺"))?;
        let (e1, e2) = default_seed(s.psi()).map_err(|e| e.to_string())?;
        let base = trace_pairing(s.psi(), &e1, &e2).map_err(|e| e.to_string())?;
        let passing: Vec<i8> = [1i8, -1]
            .into_iter()
            .filter(|&sg| {
                let gram = if sg == 1 { base.clone() } else { base.map(|x| -x) };
                check_riemann(&ks, &gram).all()
            })
            .collect();
        ensure(passing.len() == 1, || format!("structure {i} (d = {d}): passing signs {passing:?}"))?;
        dims.push(d);
    }
    ensure(dims.len() >= 10, || "fewer than 10 periods".into())?;
    Ok(format!("{} periods with d = {dims:?}", dims.len()))
}

fn branching() -> Outcome {
    let mut count = 0;
    for m in 2..=12usize {
        for n in 1..=12 / m {
            let c = check_branching(m, n).map_err(|e| e.to_string())?;
            ensure(c.holds, || format!("(m, n) = ({m}, {n}) fails"))?;
            count += 1;
        }
    }
    for (m, n, dim, copies) in [(3usize, 2usize, 8u64, 2u64), (3, 3, 16, 2), (2, 2, 4, 1)] {
        let c = check_branching(m, n).map_err(|e| e.to_string())?;
        ensure(c.restricted.dim() == dim && c.copies == copies, || {
            format!("({m}, {n}): dim {} with {} copies", c.restricted.dim(), c.copies)
        })?;
    }
    Ok(format!("{count} pairs with nm ≤ 12; 8 = 2·4, 16 = 2·8, S(4) = S(2)⊠S(2)"))
}

fn wedge_decomposition() -> Outcome {
    let v = boxtimes(&sl2_irrep(&[1]).unwrap(), &sl2_irrep(&[1]).unwrap()).times(2);
    let w = wedge2(&v);
    ensure(w.dim() == 28, || format!("dim {}", w.dim()))?;
    let mut dec = decompose_sl2k(&w).map_err(|e| e.to_string())?;
    dec.sort();
    let want = vec![(vec![0, 0], 1), (vec![0, 2], 3), (vec![2, 0], 3), (vec![2, 2], 1)];
    ensure(dec == want, || format!("decomposition {dec:?}"))?;
    Ok("3(V₂⊠V₀) ⊕ 3(V₀⊠V₂) ⊕ (V₀⊠V₀) ⊕ (V₂⊠V₂), trivial multiplicity 1".into())
}

fn cores_embedding() -> Outcome {
    let f = common::sqrt2();
    let eps = f.embeddings()[1].clone();
    let u = f.element_from_ints(&[1, -1]);
    let s = construct_rm_structure(&f, 3, &[u.clone(), u, f.one()], &eps).map_err(|e| e.to_string())?;
    let e = embed_cores_in_clifford(&s).map_err(|e| e.to_string())?;
    ensure(e.cores.dim() == 16, || format!("cores dim {}", e.cores.dim()))?;
    ensure(e.target_dim == 32, || format!("target dim {}", e.target_dim))?;
    ensure(e.unital && e.injective && e.homomorphism, || "verification flags".into())?;
    Ok("dim 16 into dim 32, unital, injective, 256 pairs multiplicative".into())
}

fn lattices() -> Outcome {
    let l = k3_lattice();
    ensure(l.is_even() && l.is_unimodular(), || "Λ_K3 not even unimodular".into())?;
    let sig = l.signature().map_err(|e| e.to_string())?;
    ensure(sig == (3, 19), || format!("Λ_K3 signature {sig:?}"))?;
    let mut r = rng(11);
    for i in 0..100 {
        let m = random_int_matrix(&mut r, 4, 4, 9);
        let got: Vec<BigInt> = smith_normal_form(&m).invariant_factors().iter().map(|x| x.abs()).collect();
        let want = determinantal_invariant_factors(&m);
        ensure(got == want, || format!("matrix {i}: {got:?} vs oracle {want:?}"))?;
    }
    let b = int_matrix(&[&[1, 0], &[0, 2]]);
    let u2 = fixture("U2").ok_or("no U2 fixture")?;
    let primitive = is_primitive_embedding(&b, &hyperbolic_plane(), &u2).map_err(|e| e.to_string())?;
    ensure(!primitive, || "U(2) in U flagged primitive".into())?;
    Ok("Λ_K3 even unimodular (3,19); 100 SNFs match; U(2) ⊂ U non-primitive".into())
}

fn simplicity() -> Outcome {
    let e = |d: usize, i: usize| (0..d).map(|j| Q::from_integer(((i == j) as i64).into())).collect::<Vec<_>>();
    let psi = qform_diagonal(&[1, -1, -1, 1]);
    let p = PeriodData::new(Rationals, &psi, e(4, 1), e(4, 2)).map_err(|e| e.to_string())?;
    match simplicity_check(&psi, &p) {
        Simplicity::KernelBasis(b) => ensure(b.len() == 2, || format!("kernel rank {}", b.len()))?,
        Simplicity::Simple => return Err("reducible period reported simple".into()),
    }
    let f = NumberField::rationals();
    let eps = f.embeddings()[0].clone();
    let a: Vec<_> = [1, -1, -1].iter().map(|&x| f.from_int(x)).collect();
    let s = construct_rm_structure(&f, 3, &a, &eps).map_err(|e| e.to_string())?;
    let p = construct_period(&s, &eps).map_err(|e| e.to_string())?;
    ensure(simplicity_check(s.psi(), &p).is_simple(), || "diag(1,-1,-1) period not simple".into())?;
    Ok("kernel rank 2 for diag(1,-1,-1,1); Simple for diag(1,-1,-1)".into())
}

fn main() {
    let mut run = Runner { failures: 0 };
    let samples = sample();
    run.run(1, "trace form round trip", secs(10), || round_trip(&samples));
    run.run(2, "determinant square classes", secs(10), || det_identities(&samples));
    run.run(3, "polarization iff totally positive", None, || polarization_equivalence(&samples));
    run.run(4, "twist obstruction for a = d+√d", None, obstruction);
    run.run(5, "double cover examples", secs(1), double_covers);
    run.run(6, "eigenspace signatures", None, || theorem_signatures(&samples));
    run.run(7, "Kuga-Satake structure and Riemann form", secs(60), kuga_satake);
    run.run(8, "spin branching", secs(5), branching);
    run.run(9, "wedge square weights", None, wedge_decomposition);
    run.run(10, "corestriction embedding", secs(30), cores_embedding);
    run.run(11, "lattice suite", None, lattices);
    run.run(12, "simplicity", None, simplicity);
    println!("{} of 12 criteria passed", 12 - run.failures);
    if run.failures > 0 {
        std::process::exit(1);
    }
}
