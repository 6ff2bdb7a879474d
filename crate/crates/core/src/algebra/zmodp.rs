//! Polynomials over the prime field F_p (p < 2^32), dense ascending `u64`.
//!
//! Used by the factorization code for distinct/equal degree splitting and the
//! Hensel correction steps.

use rand::Rng;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

pub type PolyP = Vec<u64>;

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 32));
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn trim(a: &mut PolyP) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn deg(a: &PolyP) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn padd(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let mut r: PolyP = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut r);
        r
    }

    pub fn psub(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let mut r: PolyP = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut r);
        r
    }

    pub fn pmul(&self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % self.p;
            }
        }
        Self::trim(&mut r);
        r
    }

    pub fn scale(&self, a: &PolyP, c: u64) -> PolyP {
        let mut r: PolyP = a.iter().map(|&x| self.mul(x, c)).collect();
        Self::trim(&mut r);
        r
    }

    pub fn monic(&self, a: &PolyP) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP) {
        let db = Self::deg(b).expect("division by zero polynomial");
        if a.len() <= db {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - db];
        for i in (db..r.len()).rev() {
            let c = self.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - db] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[i - db + j] = self.sub(r[i - db + j], self.mul(c, bj));
            }
        }
        r.truncate(db);
        Self::trim(&mut r);
        Self::trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &PolyP, b: &PolyP) -> PolyP {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn xgcd(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1): (PolyP, PolyP) = (vec![1], vec![]);
        let (mut t0, mut t1): (PolyP, PolyP) = (vec![], vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.psub(&s0, &self.pmul(&q, &s1));
            let t = self.psub(&t0, &self.pmul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("xgcd of zeros"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &PolyP) -> PolyP {
        let mut r: PolyP = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        Self::trim(&mut r);
        r
    }

    /// `base^e mod m`.
    pub fn powmod(&self, base: &PolyP, mut e: u128, m: &PolyP) -> PolyP {
        let mut r: PolyP = self.rem(&vec![1], m);
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.rem(&self.pmul(&r, &b), m);
            }
            b = self.rem(&self.pmul(&b, &b), m);
            e >>= 1;
        }
        r
    }

    pub fn is_squarefree(&self, a: &PolyP) -> bool {
        let d = self.derivative(a);
        if d.is_empty() {
            return false;
        }
        Self::deg(&self.gcd(a, &d)) == Some(0)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self, f: &PolyP) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: PolyP = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while Self::deg(&f).unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = self.powmod(&h, self.p as u128, &f);
            let g = self.gcd(&self.psub(&h, &x), &f);
            if Self::deg(&g).unwrap_or(0) > 0 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        if Self::deg(&f).unwrap_or(0) > 0 {
            let df = Self::deg(&f).unwrap();
            out.push((f, df));
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a product of distinct monic
    /// irreducibles of degree `d`.
    pub fn equal_degree<R: Rng>(&self, f: &PolyP, d: usize, rng: &mut R) -> Vec<PolyP> {
        let n = Self::deg(f).unwrap_or(0);
        if n <= d {
            return vec![self.monic(f)];
        }
        loop {
            let a: PolyP = {
                let mut a: PolyP = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                Self::trim(&mut a);
                a
            };
            if Self::deg(&a).unwrap_or(0) == 0 {
                continue;
            }
            // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = self.powmod(&t, self.p as u128, f);
                acc = self.rem(&self.pmul(&acc, &t), f);
            }
            let b = self.powmod(&acc, ((self.p - 1) / 2) as u128, f);
            let g = self.gcd(&self.psub(&b, &vec![1]), f);
            let dg = Self::deg(&g).unwrap_or(0);
            if dg > 0 && dg < n {
                let h = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic
    /// irreducibles, sorted for determinism.
    pub fn factor_squarefree<R: Rng>(&self, f: &PolyP, rng: &mut R) -> Vec<PolyP> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Number of irreducible factors, without splitting equal-degree parts.
    pub fn count_factors(&self, f: &PolyP) -> usize {
        self.distinct_degree(f).iter().map(|(g, d)| Self::deg(g).unwrap() / d).sum()
    }
}

/// Primes in `[lo, hi)` by trial division (small ranges only).
pub fn primes_in(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo.max(2)..hi).filter(|&n| is_prime(n))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factor_x4_plus_1_mod_small_primes() {
        // x^4 + 1 splits into two quadratics mod 3 and four linears mod 17
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = vec![1, 0, 0, 0, 1];
        let f3 = Fp::new(3).factor_squarefree(&f, &mut rng);
        assert_eq!(f3.len(), 2);
        assert!(f3.iter().all(|g| g.len() == 3));
        let f17 = Fp::new(17).factor_squarefree(&f, &mut rng);
        assert_eq!(f17.len(), 4);
        let prod = f17.iter().fold(vec![1], |acc, g| Fp::new(17).pmul(&acc, g));
        assert_eq!(prod, f);
    }

    #[test]
    fn xgcd_bezout() {
        let fp = Fp::new(101);
        let a = vec![1, 2, 1];
        let b = vec![3, 1];
        let (g, s, t) = fp.xgcd(&a, &b);
        assert_eq!(g, vec![1]);
        assert_eq!(fp.padd(&fp.pmul(&s, &a), &fp.pmul(&t, &b)), vec![1]);
    }
}
