//! The unit group `(Z/NZ)^×` with CRT generators and discrete logarithms.

use std::collections::VecDeque;

use crate::arith::{euler_phi, factorize, gcd, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Largest modulus for which the full discrete-log table is built.
pub const MAX_MODULUS: u64 = 1_000_000;

/// `(Z/NZ)^×` as a product of cyclic groups.
///
/// Generators come from the prime-power factors of `N`: the least primitive
/// root for odd `p^e`, `-1` and `5` for `2^e` (`e >= 3`), `-1` for `4`. Each
/// is lifted by CRT to be `1` modulo the other prime-power factors. Every
/// unit has unique exponents `0 <= e_i < orders[i]`.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    modulus: u64,
    gens: Vec<u64>,
    orders: Vec<u64>,
    /// `index[n]` is the position of unit `n` in `exps`, or `u32::MAX`.
    index: Vec<u32>,
    exps: Vec<Vec<u32>>,
}

impl UnitGroup {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        if modulus > MAX_MODULUS {
            return Err(Error::domain(format!("modulus {modulus} exceeds {MAX_MODULUS}")));
        }
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for (p, e) in factorize(modulus) {
            let q = p.pow(e);
            let rest = modulus / q;
            let lift = |g: u64| crt_pair(g % q, q, 1 % rest, rest);
            if p == 2 {
                if e >= 2 {
                    gens.push(lift(q - 1));
                    orders.push(2);
                }
                if e >= 3 {
                    gens.push(lift(5));
                    orders.push(q / 4);
                }
            } else {
                let phi = q / p * (p - 1);
                let g = least_primitive_root(p, e);
                gens.push(lift(g));
                orders.push(phi);
            }
        }
        let mut index = vec![u32::MAX; modulus as usize];
        let mut exps = Vec::with_capacity(euler_phi(modulus) as usize);
        // enumerate exponent vectors in lexicographic order
        let total: u64 = orders.iter().product();
        let mut cur = vec![0u32; gens.len()];
        for _ in 0..total {
            let mut n = 1 % modulus;
            for (g, &k) in gens.iter().zip(&cur) {
                n = mul_mod(n, pow_mod(*g, k as u64, modulus), modulus);
            }
            if index[n as usize] != u32::MAX {
                unreachable!("generator exponents are not unique modulo {modulus}");
            }
            index[n as usize] = exps.len() as u32;
            exps.push(cur.clone());
            for i in (0..cur.len()).rev() {
                cur[i] += 1;
                if (cur[i] as u64) < orders[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        Ok(UnitGroup { modulus, gens, orders, index, exps })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, &b| crate::arith::lcm(a, b))
    }

    pub fn is_unit(&self, n: i64) -> bool {
        let r = n.rem_euclid(self.modulus as i64) as u64;
        gcd(r, self.modulus) == 1
    }

    /// Exponents of `n` on the generators, `None` for non-units.
    pub fn dlog(&self, n: i64) -> Option<&[u32]> {
        let r = n.rem_euclid(self.modulus as i64) as usize;
        match self.index[r] {
            u32::MAX => None,
            i => Some(&self.exps[i as usize]),
        }
    }

    /// All units in increasing order.
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.modulus).filter(move |&n| self.index[n as usize] != u32::MAX)
    }

    /// Order of the unit `n`.
    pub fn element_order(&self, n: i64) -> Option<u64> {
        let e = self.dlog(n)?;
        Some(
            e.iter()
                .zip(&self.orders)
                .fold(1, |acc, (&k, &o)| crate::arith::lcm(acc, o / gcd(k as u64, o))),
        )
    }

    /// Elements of the subgroup generated by `elems`, with the word (list of
    /// exponents on `elems`) that first reaches each one. Breadth-first, so
    /// the result is deterministic.
    pub fn span(&self, elems: &[u64]) -> Vec<(u64, Vec<u64>)> {
        let m = self.modulus;
        let start = 1 % m;
        let mut seen = vec![false; m as usize];
        seen[start as usize] = true;
        let mut out = vec![(start, vec![0u64; elems.len()])];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (x, w) = out[i].clone();
            for (j, &g) in elems.iter().enumerate() {
                let y = mul_mod(x, g % m, m);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    let mut w2 = w.clone();
                    w2[j] += 1;
                    out.push((y, w2));
                    queue.push_back(out.len() - 1);
                }
            }
        }
        out
    }
}

fn crt_pair(a: u64, m: u64, b: u64, n: u64) -> u64 {
    // x = a mod m, x = b mod n, gcd(m, n) = 1
    if n == 1 {
        return a % m;
    }
    if m == 1 {
        return b % n;
    }
    let mn = m * n;
    let inv = modinv(m % n, n);
    // x = a + m * ((b - a) * m^-1 mod n)
    let diff = (b + n - a % n) % n;
    let t = mul_mod(diff, inv, n);
    (a + m * t) % mn
}

fn modinv(a: u64, n: u64) -> u64 {
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (n as i128, a as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(n as i128) as u64
}

fn least_primitive_root(p: u64, e: u32) -> u64 {
    let q = p.pow(e);
    let phi = q / p * (p - 1);
    let primes: Vec<u64> = factorize(phi).into_iter().map(|(r, _)| r).collect();
    (2..q)
        .find(|&g| gcd(g, p) == 1 && primes.iter().all(|&r| pow_mod(g, phi / r, q) != 1))
        .expect("odd prime powers have primitive roots")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_of_small_groups() {
        let g1 = UnitGroup::new(1).unwrap();
        assert_eq!(g1.order(), 1);
        assert!(g1.generators().is_empty());
        let g30 = UnitGroup::new(30).unwrap();
        let mut o = g30.orders().to_vec();
        o.sort();
        assert_eq!(o, vec![2, 4]);
        let g8 = UnitGroup::new(8).unwrap();
        assert_eq!(g8.orders(), &[2, 2]);
        assert!(UnitGroup::new(0).is_err());
    }

    #[test]
    fn dlog_roundtrip() {
        for n in [1u64, 2, 4, 8, 9, 15, 16, 30, 100, 360] {
            let g = UnitGroup::new(n).unwrap();
            assert_eq!(g.order(), euler_phi(n));
            for u in g.units() {
                let e = g.dlog(u as i64).unwrap();
                let mut x = 1 % n;
                for (gen, &k) in g.generators().iter().zip(e) {
                    x = mul_mod(x, pow_mod(*gen, k as u64, n), n);
                }
                assert_eq!(x, u);
            }
        }
    }
}
