use std::collections::BTreeSet;

use twistkit::algebra::factor::is_irreducible;
use twistkit::algebra::{
    complex_embeddings, compositum, factor_rational_polynomial, field_automorphisms, minimal_polynomial,
    subfield_generated, NumberField, QPoly,
};

mod common;
use common::integral_subset_degrees;

/// Remainder of `f` modulo monic `d` over `F_p`, coefficients ascending.
fn rem_mod_p(f: &[i64], d: &[i64], p: i64) -> Vec<i64> {
    let mut r: Vec<i64> = f.iter().map(|c| c.rem_euclid(p)).collect();
    let n = d.len() - 1;
    while r.len() > n {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - n;
            for (i, c) in d[..n].iter().enumerate() {
                r[shift + i] = (r[shift + i] - lead * c).rem_euclid(p);
            }
        }
    }
    r
}

/// Degrees `1..deg` of monic divisors of `f` mod `p`, by enumeration.
fn divisor_degrees_mod_p(f: &[i64], p: i64) -> BTreeSet<usize> {
    let deg = f.len() - 1;
    let mut out = BTreeSet::new();
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                cand.push((x % p as usize) as i64);
                x /= p as usize;
            }
            cand.push(1);
            if rem_mod_p(f, &cand, p).iter().all(|&c| c == 0) {
                out.insert(d);
                out.insert(deg - d);
                break;
            }
        }
    }
    out
}

/// Degrees a rational factor could have, intersected over several primes.
fn possible_factor_degrees(f: &[i64], primes: &[i64]) -> BTreeSet<usize> {
    let mut acc: BTreeSet<usize> = (1..f.len() - 1).collect();
    for &p in primes {
        acc = acc.intersection(&divisor_degrees_mod_p(f, p)).copied().collect();
    }
    acc
}

#[test]
fn octic_irreducible_against_independent_oracles() {
    let f = [16, 0, 0, 0, -7, 0, 0, 0, 1];
    // splits into quadratics at each of these primes, so this never rules out a split
    assert_eq!(possible_factor_degrees(&f, &[3, 7, 11, 13, 17]), BTreeSet::from([2, 4, 6]));
    assert!(integral_subset_degrees(&f).is_empty());
    assert_eq!(integral_subset_degrees(&[-1, 0, 0, 0, 1]), BTreeSet::from([1, 2, 3]));
    let p = QPoly::from_i64s(&f);
    assert!(is_irreducible(&p));
    assert_eq!(factor_rational_polynomial(&p).unwrap(), vec![(p, 1)]);
}

#[test]
fn cyclotomic_eight_against_oracle() {
    // x^4 + 1 splits mod every prime, so the pattern oracle alone is
    // inconclusive; rational roots and quadratic factors are excluded directly
    let f = [1, 0, 0, 0, 1];
    assert_eq!(possible_factor_degrees(&f, &[3, 5, 7]), BTreeSet::from([2]));
    for r in [-1i64, 1] {
        assert_ne!(r.pow(4) + 1, 0);
    }
    // (x^2 + a x + b)(x^2 - a x + c) = x^4 + 1 forces b + c = a^2, a(c - b) = 0, bc = 1
    for a in -3i64..=3 {
        for b in [-1i64, 1] {
            let c = b;
            assert!(!(b + c == a * a && a * (c - b) == 0 && b * c == 1));
        }
    }
    let p = QPoly::from_i64s(&f);
    assert_eq!(factor_rational_polynomial(&p).unwrap(), vec![(p, 1)]);
}

#[test]
fn reducible_inputs_split() {
    let f = [-1, 0, 1];
    let got = factor_rational_polynomial(&QPoly::from_i64s(&f)).unwrap();
    let degrees: Vec<Option<usize>> = got.iter().map(|(q, _)| q.degree()).collect();
    assert_eq!(degrees, vec![Some(1), Some(1)]);
    assert!(possible_factor_degrees(&f, &[3, 5]).contains(&1));
}

#[test]
fn zeta8_automorphisms_are_odd_powers() {
    let k = NumberField::from_i64s(&[1, 0, 0, 0, 1]).unwrap();
    let z = k.generator();
    let images: Vec<_> = [1, 3, 5, 7].iter().map(|&e| z.pow(e)).collect();
    for w in &images {
        assert!(w.eval_qpoly(k.poly()).is_zero());
    }
    let auts = field_automorphisms(&k);
    assert_eq!(auts.len(), 4);
    for g in &auts {
        assert!(images.contains(g.image()));
    }
}

#[test]
fn pure_cubic_has_one_real_root_and_one_automorphism() {
    let k = NumberField::from_i64s(&[-2, 0, 0, 1]).unwrap();
    let roots = complex_embeddings(&k, 128).unwrap().roots_c64();
    assert_eq!(roots.iter().filter(|z| z.im.abs() < 1e-12).count(), 1);
    assert_eq!(field_automorphisms(&k).len(), 1);
}

#[test]
fn zeta8_plus_cube_generates_sqrt_minus_two() {
    let k = NumberField::from_i64s(&[1, 0, 0, 0, 1]).unwrap();
    let z = k.generator();
    let e = &z + &z.pow(3);
    // oracle: e^2 = z^2 + 2 z^4 + z^6 = -2 because z^4 = -1 and z^6 = -z^2
    assert_eq!(&e * &e, k.from_int(-2));
    assert!(!e.is_rational());
    assert_eq!(minimal_polynomial(&e), QPoly::from_i64s(&[2, 0, 1]));
    let s = subfield_generated(&k, &[e]);
    assert_eq!(s.degree(), 2);
    assert_eq!(subfield_generated(&k, &[z]).degree(), 4);
    assert_eq!(subfield_generated(&k, &[]).degree(), 1);
}

#[test]
fn mu_fourth_minimal_polynomial() {
    let k = NumberField::from_i64s(&[16, 0, 0, 0, -7, 0, 0, 0, 1]).unwrap();
    let m4 = k.generator().pow(4);
    assert_eq!(minimal_polynomial(&m4), QPoly::from_i64s(&[16, -7, 1]));
}

#[test]
fn compositum_of_sqrt_minus_two_and_i() {
    let a = NumberField::from_i64s(&[2, 0, 1]).unwrap();
    let b = NumberField::from_i64s(&[1, 0, 1]).unwrap();
    let c = compositum(&a, &b);
    assert_eq!(c.field.degree(), 4);
    assert!(c.left.image().eval_qpoly(a.poly()).is_zero());
    assert!(c.right.image().eval_qpoly(b.poly()).is_zero());
    let z8 = NumberField::from_i64s(&[1, 0, 0, 0, 1]).unwrap();
    assert!(compositum(&z8, &z8).field.same(&z8));
}

#[test]
fn octic_roots_have_modulus_root_two() {
    let k = NumberField::from_i64s(&[16, 0, 0, 0, -7, 0, 0, 0, 1]).unwrap();
    for z in complex_embeddings(&k, 128).unwrap().roots_c64() {
        // |mu^4| = |(7 ± sqrt(-15))/2| = 4
        assert!((z.powi(4).norm() - 4.0).abs() < 1e-12);
        assert!((z.norm() - 2f64.sqrt()).abs() < 1e-12);
    }
}
