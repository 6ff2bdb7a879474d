//! The finite cyclic group of roots of unity in a number field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::field::{NfElem, NumberField};
use super::nfpoly::roots_in_field;
use super::poly::QPoly;
use crate::arith::{euler_phi, gcd, primes_up_to};

/// Split primes used to rule out cyclotomic subfields before factoring.
const SPLIT_PRIMES_WANTED: usize = 12;
const SPLIT_PRIME_SEARCH: u64 = 5000;

/// The `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> QPoly {
    let mut xm = vec![0i64; m as usize + 1];
    xm[0] = -1;
    xm[m as usize] = 1;
    let mut p = QPoly::from_i64s(&xm);
    for d in crate::arith::divisors(m) {
        if d < m {
            p = p.exact_div(&cyclotomic_polynomial(d)).expect("Φ_d divides x^m - 1");
        }
    }
    p
}

/// Primes `p` for which the defining polynomial splits into distinct
/// linear factors mod `p`; each such prime splits completely in `K`.
fn split_primes(k: &NumberField) -> Vec<u64> {
    let (ints, _) = k.poly().to_primitive_integer();
    let lead = ints.last().cloned().unwrap_or_default();
    let n = k.degree();
    let mut out = Vec::new();
    for p in primes_up_to(SPLIT_PRIME_SEARCH) {
        if p < 3 || (&lead % BigInt::from(p)).is_zero() {
            continue;
        }
        let cs: Vec<u64> = ints
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().expect("reduced mod p"))
            .collect();
        let mut roots = 0;
        for x in 0..p {
            let v = cs.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p);
            if v == 0 {
                roots += 1;
            }
        }
        // n distinct roots: totally split, unramified
        if roots == n {
            out.push(p);
            if out.len() == SPLIT_PRIMES_WANTED {
                break;
            }
        }
    }
    out
}

/// `(w, ζ)` where the roots of unity in `K` are exactly the powers of `ζ`,
/// which has order `w`.
pub fn roots_of_unity(k: &NumberField) -> (u64, NfElem) {
    let (w, z) = k.roots_of_unity_cache().get_or_init(|| compute(k));
    (*w, k.from_qpoly(z))
}

fn compute(k: &NumberField) -> (u64, QPoly) {
    let n = k.degree() as u64;
    let split = split_primes(k);
    // ζ_m ∈ K forces φ(m) | n and p ≡ 1 (mod m) for split p ∤ m
    let admissible = |m: u64| {
        n.is_multiple_of(euler_phi(m)) && split.iter().all(|&p| m.is_multiple_of(p) || p % m == 1)
    };
    let mut w = 2u64;
    let mut zeta = k.from_int(-1);
    // primes q with φ(q) | n
    for q in primes_up_to(n + 1) {
        if !n.is_multiple_of(q - 1) {
            continue;
        }
        let mut best: Option<(u64, NfElem)> = None;
        let mut qe = q;
        while n.is_multiple_of(euler_phi(qe)) {
            if admissible(qe) {
                if let Some(r) = roots_in_field(&cyclotomic_polynomial(qe), k).into_iter().next() {
                    best = Some((qe, r));
                } else {
                    break;
                }
            }
            qe *= q;
        }
        if let Some((qe, r)) = best {
            if q == 2 {
                w = qe.max(2);
                zeta = r;
            } else {
                debug_assert_eq!(gcd(w, qe), 1);
                w *= qe;
                zeta = &zeta * &r;
            }
        }
    }
    (w, zeta.to_qpoly())
}

/// Every `ζ^j`, `0 ≤ j < w`, indexed by `j`.
pub fn all_roots_of_unity(k: &NumberField) -> Vec<NfElem> {
    let (w, z) = roots_of_unity(k);
    let mut out = Vec::with_capacity(w as usize);
    let mut cur = k.one();
    for _ in 0..w {
        out.push(cur.clone());
        cur = &cur * &z;
    }
    out
}

/// The roots of unity of order dividing `m`.
pub fn roots_of_unity_dividing(k: &NumberField, m: u64) -> Vec<NfElem> {
    let (w, _) = roots_of_unity(k);
    let step = w / gcd(w, m);
    let mut out: Vec<NfElem> = all_roots_of_unity(k).into_iter().step_by(step as usize).collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}
