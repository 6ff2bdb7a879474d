//! Oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_complex::Complex64;

/// Roots of a monic integer polynomial by Durand-Kerner iteration.
pub fn durand_kerner(f: &[i64]) -> Vec<Complex64> {
    let n = f.len() - 1;
    let eval = |z: Complex64| f.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..500 {
        for i in 0..n {
            let den = (0..n).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (roots[i] - roots[j]));
            let step = eval(roots[i]) / den;
            roots[i] -= step;
        }
    }
    roots
}

/// Sizes `d` of root subsets whose product polynomial has integer
/// coefficients; a monic integer factor of degree `d` gives one.
pub fn integral_subset_degrees(f: &[i64]) -> BTreeSet<usize> {
    let roots = durand_kerner(f);
    let n = roots.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) - 1 {
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        for (i, r) in roots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * r;
                }
                poly = next;
            }
        }
        if poly.iter().all(|c| c.im.abs() < 1e-6 && (c.re - c.re.round()).abs() < 1e-6) {
            out.insert(mask.count_ones() as usize);
        }
    }
    out
}

/// Multiplicative order of `a` modulo `n` by repeated multiplication.
pub fn brute_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 % n {
        x = x * a % n;
        k += 1;
    }
    k
}

/// Orders of all units modulo `n`.
pub fn brute_orders(n: u64) -> BTreeSet<u64> {
    (1..=n).filter(|&a| gcd(a, n) == 1).map(|a| brute_order(a, n)).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
