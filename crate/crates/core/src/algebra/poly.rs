//! Dense univariate polynomials over Q.
//!
//! Coefficients are stored in ascending degree order. The vector is empty for
//! the zero polynomial and otherwise ends in a nonzero coefficient.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{display_rational, gcd_of_integers, lcm_of_denominators, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    fn normalize(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        QPoly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::new(vec![c])
    }

    pub fn new(coeffs: Vec<Rational>) -> Self {
        QPoly { coeffs }.normalize()
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        QPoly::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_integers(cs: &[BigInt]) -> Self {
        QPoly::new(cs.iter().cloned().map(Rational::from_integer).collect())
    }

    /// `c * x^d`.
    pub fn monomial(c: Rational, d: usize) -> Self {
        let mut v = vec![Rational::zero(); d + 1];
        v[d] = c;
        QPoly::new(v)
    }

    /// `x - r`.
    pub fn linear_root(r: Rational) -> Self {
        QPoly::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &QPoly) -> Self {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &QPoly::constant(c.clone());
        }
        acc
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        self.compose(&QPoly::new(vec![c.clone(), Rational::one()]))
    }

    /// `self(c * x)`.
    pub fn scale_variable(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        QPoly::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division. Errors on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let inv = d.lc().recip();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = &r[i] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                r[i - dd + j] -= t;
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((QPoly::new(q), QPoly::new(r)))
    }

    pub fn rem(&self, d: &QPoly) -> Result<QPoly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Exact quotient; errors when `d` does not divide `self`.
    pub fn exact_div(&self, d: &QPoly) -> Result<QPoly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::domain("polynomial division is not exact"));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &QPoly) -> bool {
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn xgcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Rescales by a positive rational so the coefficients are coprime
    /// integers (sign kept). Keeps Euclid's intermediate sizes in check.
    fn primitive_rational(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let (ints, _) = self.to_primitive_integer();
        QPoly::from_integers(&ints)
    }

    /// Splits into `(content, primitive integer polynomial)` with
    /// `self = content * primitive`. The primitive part has positive leading
    /// coefficient.
    pub fn to_primitive_integer(&self) -> (Vec<BigInt>, Rational) {
        if self.is_zero() {
            return (Vec::new(), Rational::zero());
        }
        let den = lcm_of_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = gcd_of_integers(&ints);
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (prim, Rational::new(g, den))
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Yun's algorithm: monic squarefree `a_i` with `self = lc * prod a_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, u32)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fd = f.derivative();
        let a0 = f.gcd(&fd);
        let mut b = f.exact_div(&a0).unwrap();
        let c = fd.exact_div(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.exact_div(&a).unwrap();
            let nc = d.exact_div(&a).unwrap();
            d = &nc - &nb.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            b = nb;
            i += 1;
        }
        out
    }

    /// Resultant `Res(a, b)` via the Euclidean remainder sequence.
    pub fn resultant(a: &QPoly, b: &QPoly) -> Rational {
        let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
            return Rational::zero();
        };
        let mut a = a.clone();
        let mut b = b.clone();
        let mut acc = Rational::one();
        loop {
            if db == 0 {
                return acc * b.lc().pow(da as i32);
            }
            let r = a.rem(&b).unwrap();
            let Some(dr) = r.degree() else {
                return Rational::zero();
            };
            // res(a,b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
            if da % 2 == 1 && db % 2 == 1 {
                acc = -acc;
            }
            acc *= b.lc().pow((da - dr) as i32);
            a = b;
            b = r;
            da = db;
            db = dr;
        }
    }

    /// Canonical total order: by degree, then coefficients from the top.
    pub fn canonical_cmp(&self, other: &QPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Interpolating polynomial through `(x_i, y_i)` (Newton form).
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> QPoly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
            }
        }
        let mut acc = QPoly::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &QPoly::linear_root(xs[i].clone())) + &QPoly::constant(dd[i].clone());
        }
        acc
    }

    pub fn max_abs_integer_coeff(ints: &[BigInt]) -> BigInt {
        ints.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn content_gcd(ints: &[BigInt]) -> BigInt {
        ints.iter().fold(BigInt::zero(), |a, b| a.gcd(b))
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", display_rational(&a))?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}
