//! Number fields `K = Q[x]/(f)` and their elements.
//!
//! Elements are kept as `num(x) / den` with `num` an integer polynomial of
//! degree below `[K:Q]`, `den > 0` and `gcd(content(num), den) = 1`, so two
//! elements are equal exactly when their stored data is equal.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::factor::is_irreducible;
use super::poly::QPoly;
use super::rational::{lcm_of_denominators, Rational};
use crate::error::{Error, Result};

struct FieldInner {
    poly: QPoly,
    degree: usize,
    /// Coefficients of the defining polynomial when it is integral.
    int_poly: Option<Vec<BigInt>>,
    automorphisms: OnceLock<Vec<QPoly>>,
    /// `(w, ζ_w)` with `ζ_w` generating the roots of unity.
    roots_of_unity: OnceLock<(u64, QPoly)>,
}

/// A number field given by a monic irreducible defining polynomial.
/// Cloning is cheap; clones share cached data such as the automorphism group.
#[derive(Clone)]
pub struct NumberField(Arc<FieldInner>);

impl NumberField {
    /// Builds `Q[x]/(poly)`. The polynomial is made monic and must be
    /// irreducible over Q.
    pub fn new(poly: QPoly) -> Result<Self> {
        match poly.degree() {
            None | Some(0) => return Err(Error::domain("defining polynomial must have positive degree")),
            _ => {}
        }
        let poly = poly.monic();
        if !is_irreducible(&poly) {
            return Err(Error::domain(format!("defining polynomial {poly} is reducible")));
        }
        Ok(Self::new_unchecked(poly))
    }

    /// As [`NumberField::new`] without the irreducibility test. The caller
    /// guarantees `poly` is monic and irreducible. Fields are interned by
    /// their polynomial, so equal fields share cached data.
    pub fn new_unchecked(poly: QPoly) -> Self {
        static INTERNED: OnceLock<Mutex<HashMap<QPoly, NumberField>>> = OnceLock::new();
        let table = INTERNED.get_or_init(|| Mutex::new(HashMap::new()));
        let mut table = table.lock().unwrap();
        if let Some(k) = table.get(&poly) {
            return k.clone();
        }
        let k = Self::build(poly.clone());
        table.insert(poly, k.clone());
        k
    }

    fn build(poly: QPoly) -> Self {
        let degree = poly.degree().expect("nonzero polynomial");
        let int_poly = if poly.coeffs().iter().all(|c| c.is_integer()) {
            Some(poly.coeffs().iter().map(|c| c.to_integer()).collect())
        } else {
            None
        };
        NumberField(Arc::new(FieldInner {
            poly,
            degree,
            int_poly,
            automorphisms: OnceLock::new(),
            roots_of_unity: OnceLock::new(),
        }))
    }

    /// The field Q, presented as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        Self::new_unchecked(QPoly::x())
    }

    pub fn from_i64s(cs: &[i64]) -> Result<Self> {
        Self::new(QPoly::from_i64s(cs))
    }

    pub fn poly(&self) -> &QPoly {
        &self.0.poly
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn is_rational_field(&self) -> bool {
        self.0.degree == 1
    }

    pub fn same(&self, other: &NumberField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.poly == other.0.poly
    }

    pub fn zero(&self) -> NfElem {
        NfElem::from_parts(self.clone(), Vec::new(), BigInt::one())
    }

    pub fn one(&self) -> NfElem {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, n: i64) -> NfElem {
        self.from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_rational(&self, r: Rational) -> NfElem {
        let (n, d) = (r.numer().clone(), r.denom().clone());
        NfElem::from_parts(self.clone(), vec![n], d)
    }

    /// The class of `x`.
    pub fn generator(&self) -> NfElem {
        self.from_qpoly(&QPoly::x())
    }

    /// Reduces a rational polynomial modulo the defining polynomial.
    pub fn from_qpoly(&self, p: &QPoly) -> NfElem {
        let r = if p.degree().is_some_and(|d| d >= self.degree()) {
            p.rem(self.poly()).expect("nonzero modulus")
        } else {
            p.clone()
        };
        NfElem::from_qpoly_reduced(self.clone(), &r)
    }

    /// Element with the given power-basis coordinates (length = degree).
    pub fn from_coords(&self, coords: &[Rational]) -> NfElem {
        self.from_qpoly(&QPoly::new(coords.to_vec()))
    }

    pub(crate) fn automorphism_cache(&self) -> &OnceLock<Vec<QPoly>> {
        &self.0.automorphisms
    }

    pub(crate) fn roots_of_unity_cache(&self) -> &OnceLock<(u64, QPoly)> {
        &self.0.roots_of_unity
    }

    fn reduce_int(&self, mut c: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.degree();
        let t = self.0.int_poly.as_ref().expect("integral defining polynomial");
        if c.len() > n {
            for i in (n..c.len()).rev() {
                if c[i].is_zero() {
                    continue;
                }
                let lead = std::mem::take(&mut c[i]);
                for j in 0..n {
                    if !t[j].is_zero() {
                        c[i - n + j] -= &lead * &t[j];
                    }
                }
            }
            c.truncate(n);
        }
        c
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.poly())
    }
}

#[derive(Clone)]
pub struct NfElem {
    field: NumberField,
    num: Vec<BigInt>,
    den: BigInt,
}

impl NfElem {
    fn from_parts(field: NumberField, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        if num.is_empty() {
            return NfElem { field, num, den: BigInt::one() };
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let g = num.iter().fold(den.clone(), |acc, c| acc.gcd(c));
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        NfElem { field, num, den }
    }

    fn from_qpoly_reduced(field: NumberField, p: &QPoly) -> Self {
        let den = lcm_of_denominators(p.coeffs());
        let num = p
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        Self::from_parts(field, num, den)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.num.len() == 1 && self.num[0].is_one() && self.den.is_one()
    }

    /// Lies in Q (representation of degree 0).
    pub fn is_rational(&self) -> bool {
        self.num.len() <= 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.num.len() {
            0 => Some(Rational::zero()),
            1 => Some(Rational::new(self.num[0].clone(), self.den.clone())),
            _ => None,
        }
    }

    /// Representation as a rational polynomial of degree < [K:Q].
    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(
            self.num
                .iter()
                .map(|c| Rational::new(c.clone(), self.den.clone()))
                .collect(),
        )
    }

    /// Power-basis coordinates, always of length `[K:Q]`.
    pub fn coords(&self) -> Vec<Rational> {
        (0..self.field.degree())
            .map(|i| match self.num.get(i) {
                Some(c) => Rational::new(c.clone(), self.den.clone()),
                None => Rational::zero(),
            })
            .collect()
    }

    fn check_same(&self, other: &NfElem) {
        assert!(
            self.field.same(&other.field),
            "mixing elements of different number fields: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    pub fn inverse(&self) -> Option<NfElem> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(self.field.from_rational(r.recip()));
        }
        let (g, s, _) = QPoly::xgcd(&self.to_qpoly(), self.field.poly());
        debug_assert_eq!(g, QPoly::one());
        Some(self.field.from_qpoly(&s))
    }

    pub fn pow(&self, mut e: u64) -> NfElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(&self, e: i64) -> Option<NfElem> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inverse().map(|i| i.pow((-e) as u64))
        }
    }

    pub fn scale(&self, c: &Rational) -> NfElem {
        self.field.from_qpoly(&self.to_qpoly().scale(c))
    }

    /// Matrix of multiplication by `self` in the power basis; column `j` holds
    /// the coordinates of `self * x^j`.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.field.degree();
        let x = self.field.generator();
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            cols.push(cur.coords());
            cur = &cur * &x;
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn norm(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        // f monic: N(a(x)) = Res(f, a)
        QPoly::resultant(self.field.poly(), &self.to_qpoly())
    }

    pub fn trace(&self) -> Rational {
        let m = self.multiplication_matrix();
        (0..m.len()).map(|i| m[i][i].clone()).sum()
    }

    /// Evaluates the rational polynomial `p` at this element.
    pub fn eval_qpoly(&self, p: &QPoly) -> NfElem {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &self.field.from_rational(c.clone());
        }
        acc
    }

    /// Sort key used for canonical ordering of elements of one field.
    pub fn canonical_cmp(&self, other: &NfElem) -> std::cmp::Ordering {
        self.to_qpoly().canonical_cmp(&other.to_qpoly())
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.num == other.num && self.den == other.den
    }
}

impl Eq for NfElem {}

impl std::hash::Hash for NfElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Add for &NfElem {
    type Output = NfElem;
    fn add(self, rhs: &NfElem) -> NfElem {
        self.check_same(rhs);
        let n = self.num.len().max(rhs.num.len());
        let zero = BigInt::zero();
        let num = (0..n)
            .map(|i| {
                self.num.get(i).unwrap_or(&zero) * &rhs.den + rhs.num.get(i).unwrap_or(&zero) * &self.den
            })
            .collect();
        NfElem::from_parts(self.field.clone(), num, &self.den * &rhs.den)
    }
}

impl Sub for &NfElem {
    type Output = NfElem;
    fn sub(self, rhs: &NfElem) -> NfElem {
        self + &(-rhs)
    }
}

impl Neg for &NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Mul for &NfElem {
    type Output = NfElem;
    fn mul(self, rhs: &NfElem) -> NfElem {
        self.check_same(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.field.zero();
        }
        let mut prod = vec![BigInt::zero(); self.num.len() + rhs.num.len() - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let den = &self.den * &rhs.den;
        if self.field.0.int_poly.is_some() {
            let red = self.field.reduce_int(prod);
            NfElem::from_parts(self.field.clone(), red, den)
        } else {
            let p = QPoly::new(
                prod.into_iter()
                    .map(|c| Rational::new(c, den.clone()))
                    .collect(),
            );
            self.field.from_qpoly(&p)
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for NfElem {
            type Output = NfElem;
            fn $m(self, rhs: NfElem) -> NfElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        -&self
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_qpoly().to_string().replace('x', "a");
        write!(f, "{s}")
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfElem({self} in {:?})", self.field)
    }
}
