use std::collections::BTreeMap;

use serde_json::json;
use twistkit::algebra::NumberField;
use twistkit::characters::DirichletCharacter;
use twistkit::fixtures::{level100, level30, level30_field};
use twistkit::newforms::*;
use twistkit::twists::generate_synthetic;
use twistkit::Error;

#[test]
fn fixtures_parse_with_published_coefficients() {
    let p = level30().unwrap();
    let k = level30_field();
    let z = k.generator();
    assert_eq!(p.left.label, "30.2.f.synthetic");
    assert!(p.left.field.same(&k));
    assert_eq!(p.left.a(2), Some(&z));
    assert_eq!(p.left.a(3), Some(&(&(&z.pow(3) - &z.pow(2)) - &k.one())));
    assert_eq!(p.left.prime_bound(), 97);
    let q = level100().unwrap();
    assert_eq!(q.left.field.degree(), 8);
    assert_eq!(q.left.a(2), Some(&q.left.field.generator()));
}

#[test]
fn hecke_relation_at_two_for_level30() {
    let f = level30().unwrap().left;
    let a2 = f.a(2).unwrap();
    // 2 | 30, so ε(2) = 0 and a_4 = a_2^2 = ζ^2
    assert!(f.epsilon(2).is_zero());
    assert_eq!(f.apsq[&4], a2 * a2);
    assert!(hecke_consistency(&f, None).hecke_ok);

    let mut bad = f.apsq.clone();
    bad.insert(4, f.field.from_int(3));
    let r = hecke_consistency(&f, Some(&bad));
    assert!(!r.hecke_ok);
    assert!(r.notes[0].starts_with("p=2"));
}

#[test]
fn synthetic_systems_satisfy_the_recursion() {
    let k = NumberField::from_i64s(&[2, 0, 1]).unwrap();
    let e = generate_synthetic(&k, &[], 8, 2, 100, 11).unwrap();
    assert!(!e.apsq.is_empty());
    let r = hecke_consistency(&e, None);
    assert!(r.hecke_ok, "{:?}", r.notes);
    assert!(ramanujan_check(&e, 128).unwrap().ramanujan_ok);
}

#[test]
fn ramanujan_bounds() {
    let p30 = level30().unwrap();
    assert!(ramanujan_check(&p30.left, 128).unwrap().ramanujan_ok);
    let p100 = level100().unwrap();
    // |μ| = √2 ≤ 2√2
    assert!(ramanujan_check(&p100.left, 128).unwrap().ramanujan_ok);
    let q = NumberField::rationals();
    let e = EigenSystem::new(
        "five",
        1,
        2,
        DirichletCharacter::trivial(1, &q).unwrap(),
        &q,
        BTreeMap::from([(2, q.from_int(5))]),
    )
    .unwrap();
    assert!(!ramanujan_check(&e, 128).unwrap().ramanujan_ok);
}

fn doc() -> serde_json::Value {
    json!({
        "label": "t", "level": 8, "weight": 2,
        "char": {"modulus": 1, "gens": [], "values": []},
        "field": {"poly": ["2/1", "0/1", "1/1"]},
        "ap": {"3": {"rep": ["0/1", "1/1"]}, "5": "1/1"}
    })
}

#[test]
fn parsing_and_errors() {
    let e = load_eigensystem(&doc()).unwrap();
    assert_eq!(e.prime_bound(), 5);
    assert_eq!(load_eigensystem(&e.to_json()).unwrap().ap, e.ap);

    let mut v = doc();
    v["ap"]["9"] = json!("1");
    assert!(matches!(load_eigensystem(&v), Err(Error::Parse(m)) if m.contains("not prime")));

    let mut v = doc();
    v["ap"]["3"] = json!({"rep": ["0", "1", "1"]});
    assert!(matches!(load_eigensystem(&v), Err(Error::Parse(_))));

    let mut v = doc();
    v.as_object_mut().unwrap().remove("weight");
    assert!(matches!(load_eigensystem(&v), Err(Error::Parse(m)) if m.contains("weight")));

    let empty = json!({
        "label": "e", "level": 11, "weight": 2,
        "char": {"modulus": 1, "gens": [], "values": []},
        "field": {"poly": ["0", "1"]}, "ap": {}
    });
    assert_eq!(load_eigensystem(&empty).unwrap().prime_bound(), 0);
}
