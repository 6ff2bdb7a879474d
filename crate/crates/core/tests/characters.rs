use std::collections::BTreeSet;

use proptest::prelude::*;
use twistkit::arith::gcd;
use twistkit::characters::{find_sigma, twist_hypotheses, unit_group, DirichletCharacter};
use twistkit::fixtures::{level100_character, level100_field, level30_character, level30_field};

fn brute_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 % n {
        x = x * a % n;
        k += 1;
    }
    k
}

fn brute_orders(n: u64) -> BTreeSet<u64> {
    (1..=n).filter(|&a| gcd(a, n) == 1).map(|a| brute_order(a, n)).collect()
}

#[test]
fn unit_group_structure_matches_enumeration() {
    let g = unit_group(1).unwrap();
    assert_eq!(g.order(), 1);
    let g30 = unit_group(30).unwrap();
    let mut inv: Vec<u64> = g30.orders().to_vec();
    inv.sort();
    assert_eq!(inv, vec![2, 4]);
    assert_eq!(brute_orders(30), BTreeSet::from([1, 2, 4]));
    assert_eq!(brute_order(7, 30), 4);
    assert_eq!(brute_order(11, 30), 2);
    assert_eq!(unit_group(8).unwrap().orders(), &[2, 2]);
    assert!(!brute_orders(8).contains(&4));
    assert!(unit_group(0).is_err());
}

#[test]
fn level30_character_values() {
    let k = level30_field();
    let z = k.generator();
    let chi = level30_character(&k).unwrap();
    assert_eq!(chi.eval(7), -&z.pow(2));
    assert_eq!(chi.eval(11), k.from_int(-1));
    assert!(chi.eval(2).is_zero());
    assert_eq!(chi.conductor(), 15);
    assert_eq!(chi.order(), 4);
    let triv = DirichletCharacter::trivial(30, &k).unwrap();
    assert_eq!(triv.conductor(), 1);
    assert_eq!(triv.order(), 1);
    assert!(triv.eval(7).is_one());
}

#[test]
fn level100_character_conductor() {
    let k = level100_field();
    let chi = level100_character(&k).unwrap();
    assert_eq!(chi.conductor(), 20);
    assert_eq!(chi.eval(51), k.from_int(-1));
}

/// Brute-force oracle for the hypotheses: parity, and a unit of order 2g.
fn oracle(g: u64, k: u64, n: u64) -> (bool, bool) {
    (g.abs_diff(k) % 2 == 1, brute_orders(n).contains(&(2 * g)))
}

#[test]
fn hypothesis_examples() {
    let r = twist_hypotheses(2, 3, 30).unwrap();
    assert!(r.parity_ok && r.order_element_ok);
    assert_eq!(r.witness, Some(7));
    // no unit squares to -1 mod 30, so the witness is only of order 4
    assert!(!(1..30u64).any(|a| gcd(a, 30) == 1 && a * a % 30 == 29));
    assert!(!r.witness_is_minus_one_power);
    assert!(!twist_hypotheses(2, 4, 30).unwrap().parity_ok);
    assert!(!twist_hypotheses(2, 3, 8).unwrap().order_element_ok);
    for (g, k, n) in [(2, 3, 30), (2, 4, 30), (2, 3, 8), (3, 2, 7), (3, 4, 9)] {
        let r = twist_hypotheses(g, k, n).unwrap();
        assert_eq!((r.parity_ok, r.order_element_ok), oracle(g, k, n));
    }
}

#[test]
fn sigma_search_against_exhaustive_table() {
    let k = level30_field();
    let chi = level30_character(&k).unwrap();
    for weight in 2..=7u64 {
        let got = find_sigma(30, 2, weight, &chi).unwrap();
        // a^2 ≡ -1 (mod 30) has no solution, so no σ exists
        assert_eq!(got, None);
    }
    let q = twistkit::algebra::NumberField::rationals();
    let triv5 = DirichletCharacter::trivial(5, &q).unwrap();
    // mod 5: 2 and 3 have order 4 and square to -1; trivial ψ needs k - g + 1 even
    assert_eq!(find_sigma(5, 2, 3, &triv5).unwrap(), Some(2));
    assert_eq!(find_sigma(5, 2, 2, &triv5).unwrap(), None);
    let triv8 = DirichletCharacter::trivial(8, &q).unwrap();
    for weight in 2..=7 {
        assert_eq!(find_sigma(8, 2, weight, &triv8).unwrap(), None);
    }
}

proptest! {
    #[test]
    fn hypotheses_match_brute_force(g in 1u64..4, k in 1u64..9, n in 1u64..120) {
        let r = twist_hypotheses(g, k, n).unwrap();
        prop_assert_eq!((r.parity_ok, r.order_element_ok), oracle(g, k, n));
        if let Some(w) = r.witness {
            prop_assert_eq!(brute_order(w, n), 2 * g);
        }
    }

    #[test]
    fn element_orders_match_brute_force(n in 2u64..200, a in 1u64..200) {
        let a = a % n;
        prop_assume!(gcd(a, n) == 1);
        let g = unit_group(n).unwrap();
        prop_assert_eq!(g.element_order(a as i64), Some(brute_order(a, n)));
    }
}
