use twistkit::algebra::{field_automorphisms, subfield_generated, FieldAutomorphism, NfElem, NumberField, QPoly};
use twistkit::characters::DirichletCharacter;
use twistkit::fixtures::{level100, level30};
use twistkit::twists::{candidate_moduli, detect_inner_twists, generate_synthetic};
use twistkit::yoshida::*;
use twistkit::Error;

fn q() -> NumberField {
    NumberField::rationals()
}

fn rational_coeffs(s: &SpinPolynomial) -> QPoly {
    let c: Vec<_> = s.coeffs().iter().map(|c| c.as_rational().unwrap()).collect();
    QPoly::new(c)
}

fn sqrt_m2() -> NumberField {
    NumberField::from_i64s(&[2, 0, 1]).unwrap()
}

fn nontrivial(k: &NumberField) -> FieldAutomorphism {
    field_automorphisms(k).into_iter().find(|g| !g.is_identity()).unwrap()
}

fn chi8() -> DirichletCharacter {
    let q = q();
    DirichletCharacter::from_generator_values(8, &q, &[3, 5], &[q.from_int(-1), q.from_int(-1)]).unwrap()
}

#[test]
fn spin_polynomials_match_products() {
    let k = q();
    for p in [3u64, 5, 7, 11] {
        let s = SpinPolynomial::from_factors(&k.zero(), &k.zero(), &k.one(), p, 2, 2);
        let f = QPoly::from_i64s(&[p as i64, 0, 1]);
        assert_eq!(rational_coeffs(&s), &f * &f);
    }
    let s = SpinPolynomial::from_factors(&k.from_int(1), &k.from_int(2), &k.one(), 3, 2, 2);
    assert_eq!(rational_coeffs(&s), QPoly::from_i64s(&[9, -9, 8, -3, 1]));
    assert_eq!(s.trace(), k.from_int(3));
    // roots of x^2 - x + 3 and x^2 - 2x + 3 are roots of the quartic
    for (a, b) in [(1.0f64, 3.0f64), (2.0, 3.0)] {
        let re = a / 2.0;
        let im = (b - re * re).sqrt();
        let z = num_complex::Complex64::new(re, im);
        let v = [9.0, -9.0, 8.0, -3.0, 1.0].iter().rev().fold(num_complex::Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        assert!(v.norm() < 1e-12);
    }
}

#[test]
fn identical_systems_are_flagged() {
    let f = level30().unwrap().left;
    let r = check_conditions(&f, &f);
    assert!(!r.not_scalar_multiple);
    assert!(r.same_primitive_character);
    let y = build_lift(&f, &f, 97).unwrap();
    assert!(y.warnings.iter().any(|w| w.contains("coincide")));
    // with E2 = E1 the traces 2 a_p generate the Hecke field of f
    let t = trace_field(&y, 97);
    let ap: Vec<NfElem> = f.ap.values().cloned().collect();
    assert_eq!(t.degree(), subfield_generated(&f.field, &ap).degree());
    assert_eq!(t.degree(), 4);
}

#[test]
fn level30_conditions_and_trace_field() {
    let pair = level30().unwrap();
    let (f, g) = (&pair.left, &pair.right);
    let r = check_conditions(f, g);
    assert!(r.not_scalar_multiple && r.same_primitive_character);
    assert!(!r.weight_condition.strict_ok);
    assert!(r.weight_condition.relaxed_ok);
    assert_eq!(r.discrete_series_at_prime.status, DiscreteSeriesStatus::Unknown);
    assert_eq!(check_conditions_asserting(f, g, Some(5)).discrete_series_at_prime.status, DiscreteSeriesStatus::Yes);
    assert_eq!(check_conditions_asserting(f, g, Some(7)).discrete_series_at_prime.status, DiscreteSeriesStatus::No);

    let strict = build_lift_with(f, g, 97, LiftOptions::default());
    assert!(matches!(strict, Err(Error::Precondition(m)) if m.contains("strict")));

    let y = build_lift(f, g, 97).unwrap();
    assert!(factorization_check(&y) && constant_term_check(&y));
    let k = y.field();
    let z = y.compositum.left.apply(&f.field.generator());
    let theta = &z + &z.pow(3);
    let sub = subfield_generated(k, &[theta]);
    let t7 = y.spin_polys[&7].trace();
    assert!(sub.contains(&t7));
    // oracle: a_7 + σ(a_7) is fixed by σ: ζ -> ζ^3, an involution
    let sigma = FieldAutomorphism::new(k, z.pow(3)).unwrap();
    assert_eq!(sigma.apply(&t7), t7);
    let cmp = compare_fields(&y, 97, None);
    assert_eq!(cmp.trace_degree, 2);
    assert!(cmp.strict_inclusion && cmp.chain_ok);
    assert!(swap_symmetric(f, g, 97).unwrap());
}

#[test]
fn level100_traces_at_two_cancel() {
    let pair = level100().unwrap();
    let y = build_lift(&pair.left, &pair.right, 97).unwrap();
    let (a, b) = y.eigenvalues(2).unwrap();
    assert!((&a + &b).is_zero());
    assert!(!y.spin_polys.contains_key(&2));
    assert!(!y.spin_polys.contains_key(&5));
}

#[test]
fn rational_pair_has_rational_fields() {
    let k = q();
    let e1 = generate_synthetic(&k, &[], 11, 2, 60, 1).unwrap();
    let e2 = generate_synthetic(&k, &[], 11, 4, 60, 2).unwrap();
    let r = check_conditions(&e1, &e2);
    assert!(r.weight_condition.strict_ok);
    let y = build_lift_with(&e1, &e2, 60, LiftOptions::default()).unwrap();
    let cmp = compare_fields(&y, 60, None);
    assert_eq!((cmp.compositum_degree, cmp.trace_degree, cmp.full_degree), (1, 1, 1));
    assert!(!cmp.strict_inclusion);
}

#[test]
fn common_twist_is_a_twist_of_the_lift() {
    let k = sqrt_m2();
    let sigma = nontrivial(&k);
    let e1 = generate_synthetic(&k, &[(sigma.clone(), chi8())], 8, 2, 80, 3).unwrap();
    let e2 = generate_synthetic(&k, &[(sigma.clone(), chi8())], 8, 4, 80, 4).unwrap();
    let moduli = candidate_moduli(8, false);
    let g1 = detect_inner_twists(&e1, &moduli, 80).unwrap();
    let g2 = detect_inner_twists(&e2, &moduli, 80).unwrap();
    let y = build_lift(&e1, &e2, 80).unwrap();
    let gy = lift_twist_group(&y, None, 80).unwrap();
    let rep = containment_check(&y, &g1, &g2, &gy);
    assert!(rep.contained, "{:?}", rep.missing);
    assert_eq!(rep.common, 2);
    let s = nontrivial(y.field());
    assert!(gy.contains(&s, &chi8()));
}

#[test]
fn swapped_conjugates_carry_a_trivial_twist() {
    let k = sqrt_m2();
    let sigma = nontrivial(&k);
    let f = generate_synthetic(&k, &[], 7, 2, 60, 5).unwrap();
    let g = f.conjugate(&sigma, "conj");
    let y = build_lift(&f, &g, 60).unwrap();
    let gy = lift_twist_group(&y, None, 60).unwrap();
    let s = nontrivial(y.field());
    let triv = DirichletCharacter::trivial(1, &q()).unwrap();
    assert!(gy.contains(&s, &triv));
    // a_p + σ(a_p) is rational for every p
    let cmp = compare_fields(&y, 60, None);
    assert_eq!(cmp.trace_degree, 1);
}

#[test]
fn lifted_twist_verification() {
    let k = sqrt_m2();
    let sigma = nontrivial(&k);
    let id = field_automorphisms(&k).into_iter().find(|g| g.is_identity()).unwrap();
    let triv = DirichletCharacter::trivial(1, &k).unwrap();
    let e1 = generate_synthetic(&k, &[(sigma.clone(), chi8())], 8, 2, 60, 6).unwrap();
    let e2 = generate_synthetic(&k, &[(sigma.clone(), chi8())], 8, 4, 60, 7).unwrap();
    assert!(verify_lifted_twist(&e1, &e2, &id, &triv, 60).unwrap());
    assert!(verify_lifted_twist(&e1, &e2, &sigma, &chi8(), 60).unwrap());

    let mut plain = generate_synthetic(&k, &[], 8, 4, 60, 8).unwrap();
    plain.label = "plain".into();
    match verify_lifted_twist(&e1, &plain, &sigma, &chi8(), 60) {
        Err(Error::Precondition(m)) => assert!(m.contains("right") && m.contains("plain"), "{m}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn lift_json_round_trip() {
    let pair = level30().unwrap();
    let y = build_lift(&pair.left, &pair.right, 50).unwrap();
    let back = lift_from_json(&lift_to_json(&y)).unwrap();
    assert_eq!(back.spin_polys, y.spin_polys);
    assert!(back.field().same(y.field()));
    assert_eq!(back.prime_bound, 50);
    let keys: Vec<u64> = back.spin_polys.keys().copied().collect();
    assert_eq!(keys, vec![7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
}
