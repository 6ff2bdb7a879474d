//! Factorization of polynomials over Q.
//!
//! Squarefree decomposition (Yun) followed by Zassenhaus on each squarefree
//! part: factor modulo a prime of good reduction, Hensel-lift the modular
//! factorization past a Mignotte-style coefficient bound and recombine
//! subsets of the lifted factors by trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::poly::QPoly;
use super::rational::Rational;
use super::zmodp::{primes_in, Fp, PolyP};
use crate::error::{Error, Result};

/// Factors a nonzero polynomial into monic irreducibles over Q with
/// multiplicities, sorted canonically. Constants factor as the empty list.
pub fn factor_rational_polynomial(p: &QPoly) -> Result<Vec<(QPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let parts = if is_squarefree_fast(p) {
        vec![(p.monic(), 1)]
    } else {
        p.squarefree_decomposition()
    };
    let mut out = Vec::new();
    for (part, mult) in parts {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

pub fn is_irreducible(p: &QPoly) -> bool {
    match p.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => factor_rational_polynomial(p)
            .map(|f| f.len() == 1 && f[0].1 == 1)
            .unwrap_or(false),
    }
}

/// Squarefree test that first tries a few primes (a squarefree reduction
/// proves squarefreeness over Q) before falling back to a rational gcd.
pub fn is_squarefree_fast(p: &QPoly) -> bool {
    let Some(d) = p.degree() else { return false };
    if d <= 1 {
        return true;
    }
    let (ints, _) = p.to_primitive_integer();
    let lc = ints.last().unwrap().clone();
    for q in primes_in(1009, 1400).take(6) {
        let qb = BigInt::from(q);
        if (&lc % &qb).is_zero() {
            continue;
        }
        let fp = Fp::new(q);
        let red = reduce_mod(&ints, q);
        if fp.is_squarefree(&red) {
            return true;
        }
    }
    p.is_squarefree()
}

fn reduce_mod(f: &[BigInt], p: u64) -> PolyP {
    let pb = BigInt::from(p);
    let mut r: PolyP = f
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    Fp::trim(&mut r);
    r
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r > half {
        r - m
    } else {
        r
    }
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

/// Exact division of integer polynomials with monic divisor.
fn int_div_monic(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.iter().all(|c| c.is_zero()) { Some(Vec::new()) } else { None };
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i - db + j] -= &c * bj;
        }
        q[i - db] = c;
    }
    if r[..db].iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

/// Factors a monic squarefree rational polynomial of positive degree.
fn factor_squarefree(f: &QPoly) -> Vec<QPoly> {
    let n = f.degree().unwrap();
    if n == 1 {
        return vec![f.monic()];
    }
    // Integral monic model F(y) = a^(n-1) g(y/a) for the primitive part g.
    let (g, _) = f.to_primitive_integer();
    let a = g[n].clone();
    let mut big_f = Vec::with_capacity(n + 1);
    // coefficient of y^i in F is g_i * a^(n-1-i)
    let mut powers = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        powers[i] = &powers[i - 1] * &a;
    }
    for i in 0..=n {
        if i == n {
            big_f.push(BigInt::one());
        } else {
            big_f.push(&g[i] * &powers[n - 1 - i]);
        }
    }
    let factors = zassenhaus_monic(&big_f);
    // map back: h(y) factor of F  ->  primitive part of h(a x)
    let a_rat = Rational::from_integer(a);
    let mut out: Vec<QPoly> = factors
        .into_iter()
        .map(|h| QPoly::from_integers(&h).scale_variable(&a_rat).monic())
        .collect();
    out.sort_by(|x, y| x.canonical_cmp(y));
    out
}

/// Zassenhaus on a monic squarefree integer polynomial.
fn zassenhaus_monic(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7157_u64 ^ n as u64);

    // Choose, among a few good primes, the one with the fewest modular factors.
    let mut best: Option<(u64, usize)> = None;
    let mut tried = 0;
    let start = (n as u64 * 4).max(101);
    for p in primes_in(start, start + 100_000) {
        let fp = Fp::new(p);
        let red = reduce_mod(f, p);
        if red.len() != f.len() || !fp.is_squarefree(&red) {
            continue;
        }
        let count = fp.count_factors(&red);
        if count == 1 {
            return vec![f.to_vec()];
        }
        if best.is_none_or(|(_, c)| count < c) {
            best = Some((p, count));
        }
        tried += 1;
        if tried >= 8 {
            break;
        }
    }
    let (p, _) = best.expect("no prime of good reduction found");
    let fp = Fp::new(p);
    let modular = fp.factor_squarefree(&reduce_mod(f, p), &mut rng);

    // Coefficient bound for any factor: 2^n * ||f||_2, and p^e > 2 * bound.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + BigInt::one());
    let mut e = 1u32;
    let pb = BigInt::from(p);
    let mut pe = pb.clone();
    while pe <= &bound * 2 {
        pe *= &pb;
        e += 1;
    }
    let lifted = multifactor_lift(f, &modular, p, e);
    recombine(f.to_vec(), lifted, &pe)
}

/// Lifts `f = prod factors (mod p)` to a factorization modulo `p^e`.
fn multifactor_lift(f: &[BigInt], factors: &[PolyP], p: u64, e: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let pe = BigInt::from(p).pow(e);
        return vec![f.iter().map(|c| c.mod_floor(&pe)).collect()];
    }
    let fp = Fp::new(p);
    let mid = factors.len() / 2;
    let g0 = factors[..mid].iter().fold(vec![1], |acc, x| fp.pmul(&acc, x));
    let h0 = factors[mid..].iter().fold(vec![1], |acc, x| fp.pmul(&acc, x));
    let (g, h) = hensel_pair(f, &g0, &h0, p, e);
    let mut out = multifactor_lift(&g, &factors[..mid], p, e);
    out.extend(multifactor_lift(&h, &factors[mid..], p, e));
    out
}

/// Linear Hensel lifting of `f = g h` from mod `p` to mod `p^e` (all monic).
fn hensel_pair(f: &[BigInt], g0: &PolyP, h0: &PolyP, p: u64, e: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let fp = Fp::new(p);
    let (one, s, t) = fp.xgcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let to_int = |a: &PolyP| a.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let mut g = to_int(g0);
    let mut h = to_int(h0);
    let mut pk = pb.clone();
    for _ in 1..e {
        let gh = int_mul(&g, &h);
        let n = f.len().max(gh.len());
        let diff: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                (a - b) / &pk
            })
            .collect();
        let c = reduce_mod(&diff, p);
        // dg = t c mod g0,  dh = s c + q h0  where t c = q g0 + dg
        let (q, dg) = fp.divrem(&fp.pmul(&t, &c), g0);
        let dh = fp.padd(&fp.pmul(&s, &c), &fp.pmul(&q, h0));
        for (i, x) in dg.iter().enumerate() {
            g[i] += &pk * BigInt::from(*x);
        }
        for (i, x) in dh.iter().enumerate() {
            h[i] += &pk * BigInt::from(*x);
        }
        pk *= &pb;
    }
    let g = g.iter().map(|c| c.mod_floor(&pk)).collect();
    let h = h.iter().map(|c| c.mod_floor(&pk)).collect();
    (g, h)
}

fn recombine(mut f: Vec<BigInt>, mut lifted: Vec<Vec<BigInt>>, pe: &BigInt) -> Vec<Vec<BigInt>> {
    let half = pe / 2;
    let mut found = Vec::new();
    let mut d = 1;
    while 2 * d <= lifted.len() {
        let r = lifted.len();
        let mut matched = false;
        let f0 = f[0].clone();
        let mut combo: Vec<usize> = (0..d).collect();
        'outer: loop {
            // trailing coefficient test
            let tc = combo
                .iter()
                .fold(BigInt::one(), |acc, &i| (acc * &lifted[i][0]).mod_floor(pe));
            let tc = symmetric(&tc, pe, &half);
            let passes = if f0.is_zero() {
                true
            } else {
                !tc.is_zero() && (&f0 % &tc).is_zero()
            };
            if passes {
                let mut cand = vec![BigInt::one()];
                for &i in &combo {
                    cand = int_mul(&cand, &lifted[i])
                        .iter()
                        .map(|c| c.mod_floor(pe))
                        .collect();
                }
                let cand: Vec<BigInt> = cand.iter().map(|c| symmetric(c, pe, &half)).collect();
                if let Some(q) = int_div_monic(&f, &cand) {
                    found.push(cand);
                    f = q;
                    let mut keep = Vec::new();
                    for (i, l) in lifted.into_iter().enumerate() {
                        if !combo.contains(&i) {
                            keep.push(l);
                        }
                    }
                    lifted = keep;
                    matched = true;
                    break 'outer;
                }
            }
            // next combination
            let mut i = d;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                if combo[i] < r - d + i {
                    combo[i] += 1;
                    for j in i + 1..d {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        if !matched {
            d += 1;
        }
    }
    if f.len() > 1 {
        found.push(f);
    }
    found
}
