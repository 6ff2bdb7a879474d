//! Univariate polynomials over a number field and Trager's norm method for
//! factoring them.

use super::factor::{factor_rational_polynomial, is_squarefree_fast};
use super::field::{NfElem, NumberField};
use super::poly::QPoly;
use super::rational::Rational;

/// Dense polynomial with coefficients in `K`, ascending degree, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NfPoly {
    field: NumberField,
    coeffs: Vec<NfElem>,
}

impl NfPoly {
    pub fn new(field: &NumberField, mut coeffs: Vec<NfElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        NfPoly { field: field.clone(), coeffs }
    }

    pub fn from_qpoly(field: &NumberField, p: &QPoly) -> Self {
        Self::new(field, p.coeffs().iter().map(|c| field.from_rational(c.clone())).collect())
    }

    pub fn zero(field: &NumberField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &NumberField) -> Self {
        Self::new(field, vec![field.one()])
    }

    /// `y - c`.
    pub fn linear(c: &NfElem) -> Self {
        let k = c.field();
        Self::new(k, vec![-c, k.one()])
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[NfElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> NfElem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inverse().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    pub fn scale(&self, c: &NfElem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        Self::new(
            &self.field,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        Self::new(
            &self.field,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(&self.field, out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().inverse().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(&self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] * &inv;
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = &r[i - dd + j] - &(&c * dj);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::new(&self.field, q), Self::new(&self.field, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &NfElem) -> NfElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `p(y + c)`.
    pub fn shift(&self, c: &NfElem) -> Self {
        let lin = Self::new(&self.field, vec![c.clone(), self.field.one()]);
        let mut acc = Self::zero(&self.field);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::new(&self.field, vec![a.clone()]));
        }
        acc
    }

    /// Applies a map to each coefficient (e.g. a field automorphism).
    pub fn map_coeffs(&self, f: impl Fn(&NfElem) -> NfElem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(f).collect())
    }

    /// `Norm_{K/Q}` of the polynomial, a rational polynomial of degree
    /// `[K:Q] * deg`, computed by evaluation at rational points and
    /// interpolation.
    pub fn norm(&self) -> QPoly {
        let Some(d) = self.degree() else { return QPoly::zero() };
        let total = d * self.field.degree();
        let xs: Vec<Rational> = (0..=total as i64).map(|i| Rational::from_integer(i.into())).collect();
        let ys: Vec<Rational> = xs
            .iter()
            .map(|x| self.eval(&self.field.from_rational(x.clone())).norm())
            .collect();
        QPoly::interpolate(&xs, &ys)
    }

    /// The rational polynomial when every coefficient lies in Q.
    pub fn to_rational(&self) -> Option<QPoly> {
        self.coeffs.iter().map(|c| c.as_rational()).collect::<Option<Vec<_>>>().map(QPoly::new)
    }
}

/// Factors a squarefree polynomial over `K` into monic irreducibles.
/// Trager: shift by `s·α` until the norm is squarefree, factor the norm over
/// Q, and take gcds with the shifted polynomial.
pub fn factor_squarefree_over_field(g: &NfPoly) -> Vec<NfPoly> {
    let k = g.field().clone();
    let Some(d) = g.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![g.monic()];
    }
    if k.is_rational_field() {
        let q = g.to_rational().expect("coefficients of Q");
        return factor_rational_polynomial(&q)
            .expect("nonzero")
            .into_iter()
            .map(|(f, _)| NfPoly::from_qpoly(&k, &f))
            .collect();
    }
    let alpha = k.generator();
    for s in shift_sequence() {
        let sa = alpha.scale(&Rational::from_integer(s.into()));
        // roots of gs are the roots of g plus s·α
        let gs = g.shift(&(-&sa));
        let n = gs.norm();
        if !is_squarefree_fast(&n) {
            continue;
        }
        let mut out = Vec::new();
        let mut rest = gs.monic();
        for (ni, _) in factor_rational_polynomial(&n).expect("nonzero norm") {
            if rest.degree() == Some(0) {
                break;
            }
            let h = rest.gcd(&NfPoly::from_qpoly(&k, &ni));
            if h.degree().unwrap_or(0) == 0 {
                continue;
            }
            rest = rest.div_rem(&h).0;
            out.push(h.shift(&sa).monic());
        }
        out.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| cmp_coeffs(a.coeffs(), b.coeffs()))
        });
        return out;
    }
    unreachable!("some shift gives a squarefree norm")
}

fn cmp_coeffs(a: &[NfElem], b: &[NfElem]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = x.canonical_cmp(y);
        if c.is_ne() {
            return c;
        }
    }
    a.len().cmp(&b.len())
}

fn shift_sequence() -> impl Iterator<Item = i64> {
    [0i64, 2, -2, 3, -3, 1, 4, -4, 5, -5, 6, 7, -7].into_iter().chain(8..)
}

/// All roots in `K` of a rational polynomial, in canonical order.
pub fn roots_in_field(p: &QPoly, k: &NumberField) -> Vec<NfElem> {
    if p.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (f, _) in factor_rational_polynomial(p).expect("nonzero") {
        let fd = f.degree().unwrap_or(0);
        if fd == 0 || !k.degree().is_multiple_of(fd) {
            continue;
        }
        if fd == 1 {
            out.push(k.from_rational(-f.coeff(0)));
            continue;
        }
        let mut g = NfPoly::from_qpoly(k, &f);
        // peel off the obvious root when f is the defining polynomial
        if &f == k.poly() {
            let a = k.generator();
            out.push(a.clone());
            g = g.div_rem(&NfPoly::linear(&a)).0;
        }
        for h in factor_squarefree_over_field(&g) {
            if h.degree() == Some(1) {
                out.push(-&h.coeffs()[0]);
            }
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out.dedup();
    out
}
