//! Minimal polynomials, subfields generated by elements, fixed fields.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::automorphism::{FieldAutomorphism, FieldEmbedding};
use super::field::{NfElem, NumberField};
use super::linalg::{nullspace, solve_columns, EchelonBasis};
use super::nfpoly::roots_in_field;
use super::poly::QPoly;
use super::rational::Rational;

/// Monic minimal polynomial over Q.
pub fn minimal_polynomial(e: &NfElem) -> QPoly {
    let k = e.field();
    let mut basis = EchelonBasis::new();
    let mut powers: Vec<Vec<Rational>> = Vec::new();
    let mut cur = k.one();
    loop {
        let v = cur.coords();
        if !basis.insert(&v) {
            let c = solve_columns(&powers, &v).expect("dependent power lies in the span");
            let mut coeffs: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            coeffs.push(Rational::one());
            return QPoly::new(coeffs);
        }
        powers.push(v);
        cur = &cur * e;
    }
}

/// A subfield of an ambient field, presented as an abstract number field
/// together with its embedding.
#[derive(Clone, Debug)]
pub struct Subfield {
    embedding: FieldEmbedding,
    /// Power-basis coordinates of the images of `1, θ, ..., θ^(d-1)`.
    columns: Vec<Vec<Rational>>,
}

impl Subfield {
    fn from_generator(theta: &NfElem) -> Self {
        let poly = minimal_polynomial(theta);
        let abs = NumberField::new_unchecked(poly);
        let embedding = FieldEmbedding::new_unchecked(&abs, theta.clone());
        let mut columns = Vec::new();
        let mut cur = theta.field().one();
        for _ in 0..abs.degree() {
            columns.push(cur.coords());
            cur = &cur * theta;
        }
        Subfield { embedding, columns }
    }

    /// The subfield as an abstract number field.
    pub fn field(&self) -> &NumberField {
        self.embedding.source()
    }

    pub fn ambient(&self) -> &NumberField {
        self.embedding.target()
    }

    pub fn embedding(&self) -> &FieldEmbedding {
        &self.embedding
    }

    /// Image of the abstract generator inside the ambient field.
    pub fn generator_image(&self) -> &NfElem {
        self.embedding.image()
    }

    pub fn degree(&self) -> usize {
        self.field().degree()
    }

    /// Writes an ambient element in terms of the subfield's generator.
    pub fn express(&self, e: &NfElem) -> Option<NfElem> {
        assert!(e.field().same(self.ambient()));
        let c = solve_columns(&self.columns, &e.coords())?;
        Some(self.field().from_coords(&c))
    }

    pub fn contains(&self, e: &NfElem) -> bool {
        self.express(e).is_some()
    }

    /// Whether `other` (with the same ambient field) is contained in `self`.
    pub fn contains_subfield(&self, other: &Subfield) -> bool {
        self.contains(other.generator_image())
    }
}

/// The smallest subfield of `K` containing `elems`.
pub fn subfield_generated(k: &NumberField, elems: &[NfElem]) -> Subfield {
    let mut span = EchelonBasis::new();
    span.insert(&k.one().coords());
    let mut gens: Vec<NfElem> = Vec::new();
    let mut basis = vec![k.one()];
    for e in elems {
        assert!(e.field().same(k), "element outside the field");
        if span.insert(&e.coords()) {
            gens.push(e.clone());
            basis.push(e.clone());
        }
    }
    // close the span under multiplication by the generators
    let mut i = 0;
    while i < basis.len() && span.dim() < k.degree() {
        let b = basis[i].clone();
        for g in &gens {
            let p = &b * g;
            if span.insert(&p.coords()) {
                basis.push(p);
            }
        }
        i += 1;
    }
    let d = span.dim();
    if d == 1 {
        let q = NumberField::rationals();
        let embedding = FieldEmbedding::new_unchecked(&q, k.zero());
        return Subfield { embedding, columns: vec![k.one().coords()] };
    }
    if d == k.degree() {
        return Subfield::from_generator(&k.generator());
    }
    let theta = primitive_element(&gens, d);
    let theta = if d == 2 { normalize_quadratic(&theta) } else { rescale_integral(&theta) };
    Subfield::from_generator(&theta)
}

fn primitive_element(gens: &[NfElem], d: usize) -> NfElem {
    for g in gens {
        if minimal_polynomial(g).degree() == Some(d) {
            return g.clone();
        }
    }
    let k = gens[0].field().clone();
    for bound in 1i64.. {
        for coeffs in small_vectors(gens.len() - 1, bound) {
            let mut theta = gens[0].clone();
            for (c, g) in coeffs.iter().zip(&gens[1..]) {
                theta = &theta + &g.scale(&Rational::from_integer((*c).into()));
            }
            if minimal_polynomial(&theta).degree() == Some(d) {
                return theta;
            }
        }
        assert!(bound < 64, "no primitive element found in {k:?}");
    }
    unreachable!()
}

/// Integer vectors with max-norm exactly `bound`, in a fixed order.
fn small_vectors(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|c| c.abs() == bound));
    out
}

/// Multiplies `θ` by the rational `s = Π p^e` for which the minimal
/// polynomial of `sθ` is integral with the smallest possible coefficients
/// at each prime `p < 10^4` dividing a coefficient.
fn rescale_integral(theta: &NfElem) -> NfElem {
    let m = minimal_polynomial(theta);
    let d = m.degree().expect("nonzero minimal polynomial") as i64;
    let coeffs: Vec<&Rational> = m.coeffs()[..d as usize].iter().collect();
    let mut s = Rational::one();
    for p in crate::arith::primes_up_to(10_000) {
        let bp = BigInt::from(p);
        let mut e_min: Option<i64> = None;
        let mut touches = false;
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = valuation(c.numer(), &bp) - valuation(c.denom(), &bp);
            touches |= v != 0;
            // need v + e(d - i) >= 0
            let k = d - i as i64;
            let e = (-v).div_euclid(k) + i64::from((-v).rem_euclid(k) != 0);
            e_min = Some(e_min.map_or(e, |x| x.max(e)));
        }
        if let (true, Some(e)) = (touches, e_min) {
            let pe = Rational::from_integer(bp.pow(e.unsigned_abs() as u32));
            s = if e >= 0 { s * pe } else { s / pe };
        }
    }
    theta.scale(&s)
}

fn valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    if n.is_zero() {
        return 0;
    }
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Replaces a quadratic generator by `sqrt(D)` with `D` a (nearly)
/// squarefree integer, so the field prints as `x^2 - D`.
fn normalize_quadratic(theta: &NfElem) -> NfElem {
    let m = minimal_polynomial(theta);
    let (b, c) = (m.coeff(1), m.coeff(0));
    let disc = &b * &b - Rational::from_integer(4.into()) * &c;
    // disc = n/d = n*d / d^2
    let nd = disc.numer() * disc.denom();
    let (square, _core) = split_square(&nd);
    // sqrt(disc) = square/d * sqrt(core)
    let r = Rational::new(square, disc.denom().clone());
    let two_theta_b = &theta.scale(&Rational::from_integer(2.into())) + &theta.field().from_rational(b);
    two_theta_b.scale(&r.recip())
}

/// `n = s^2 * core` with `core` free of prime squares below the trial bound.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut core = n.abs();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &p * &p <= core && p < limit {
        let pp = &p * &p;
        while (&core % &pp).is_zero() {
            core /= &pp;
            s *= &p;
        }
        p += 1;
    }
    let r = core.sqrt();
    if &r * &r == core && !core.is_one() {
        s *= &r;
        core = BigInt::one();
    }
    if n.is_negative() {
        core = -core;
    }
    (s, core)
}

/// Subfield of `K` fixed pointwise by every automorphism in `auts`.
pub fn fixed_field(k: &NumberField, auts: &[FieldAutomorphism]) -> Subfield {
    let n = k.degree();
    let mut rows = Vec::new();
    for a in auts {
        let m = a.as_embedding().matrix();
        for (i, row) in m.into_iter().enumerate() {
            let mut row = row;
            row[i] -= Rational::one();
            rows.push(row);
        }
    }
    let elems: Vec<NfElem> = nullspace(&rows, n).iter().map(|v| k.from_coords(v)).collect();
    subfield_generated(k, &elems)
}

/// Whether two number fields are isomorphic.
pub fn fields_isomorphic(a: &NumberField, b: &NumberField) -> bool {
    a.degree() == b.degree() && (a.same(b) || !roots_in_field(b.poly(), a).is_empty())
}
