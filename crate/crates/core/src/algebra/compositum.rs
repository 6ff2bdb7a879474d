//! Composita of two number fields.

use super::automorphism::FieldEmbedding;
use super::field::{NfElem, NumberField};
use super::nfpoly::{factor_squarefree_over_field, roots_in_field, NfPoly};
use super::poly::QPoly;
use super::rational::Rational;
use super::subfield::minimal_polynomial;

/// A field `L` with embeddings of `K1` and `K2` whose images generate `L`.
#[derive(Clone, Debug)]
pub struct Compositum {
    pub field: NumberField,
    pub left: FieldEmbedding,
    pub right: FieldEmbedding,
}

pub fn compositum(k1: &NumberField, k2: &NumberField) -> Compositum {
    if k1.same(k2) {
        return Compositum {
            field: k1.clone(),
            left: FieldEmbedding::identity(k1),
            right: FieldEmbedding::identity(k1),
        };
    }
    // one field already contains the other
    if k1.degree() >= k2.degree() {
        if let Some(r) = roots_in_field(k2.poly(), k1).into_iter().next() {
            return Compositum {
                field: k1.clone(),
                left: FieldEmbedding::identity(k1),
                right: FieldEmbedding::new_unchecked(k2, r),
            };
        }
    } else if let Some(r) = roots_in_field(k1.poly(), k2).into_iter().next() {
        return Compositum {
            field: k2.clone(),
            left: FieldEmbedding::new_unchecked(k1, r),
            right: FieldEmbedding::identity(k2),
        };
    }
    let h = factor_squarefree_over_field(&NfPoly::from_qpoly(k1, k2.poly()))
        .into_iter()
        .next()
        .expect("nonconstant polynomial has a factor");
    let target = k1.degree() * h.degree().unwrap();
    let alpha = k1.generator();
    for c in [1i64, 2, -1, -2, 3, -3, 4, 5, 6, 7, 8] {
        let ca = alpha.scale(&Rational::from_integer(c.into()));
        // theta = beta + c*alpha is primitive when this norm is squarefree
        let p = h.shift(&(-&ca)).norm();
        if p.degree() != Some(target) || !p.is_squarefree() {
            continue;
        }
        let l = NumberField::new_unchecked(p.monic());
        let theta = l.generator();
        if let Some(alpha_l) = alpha_in_compositum(&h, &l, &theta, c) {
            let beta_l = &theta - &alpha_l.scale(&Rational::from_integer(c.into()));
            debug_assert!(beta_l.eval_qpoly(k2.poly()).is_zero());
            return Compositum {
                left: FieldEmbedding::new_unchecked(k1, alpha_l),
                right: FieldEmbedding::new_unchecked(k2, beta_l),
                field: l,
            };
        }
    }
    unreachable!("no primitive element found for the compositum")
}

/// The common root of `T1(y)` and `h(θ - c y)` in `L`, where the
/// coefficients of `h` are polynomials in `y`.
fn alpha_in_compositum(h: &NfPoly, l: &NumberField, theta: &NfElem, c: i64) -> Option<NfElem> {
    let k1 = h.field();
    let lin = NfPoly::new(l, vec![theta.clone(), l.from_int(-c)]);
    let mut big_h = NfPoly::zero(l);
    let mut pw = NfPoly::one(l);
    for hj in h.coeffs() {
        let coeff = NfPoly::from_qpoly(l, &hj.to_qpoly());
        big_h = big_h.add(&coeff.mul(&pw));
        pw = pw.mul(&lin);
    }
    let g = NfPoly::from_qpoly(l, k1.poly()).gcd(&big_h);
    if g.degree() == Some(1) {
        Some(-&g.coeffs()[0])
    } else {
        None
    }
}

impl Compositum {
    /// Degree of `L` over Q.
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Defining polynomial of `L`.
    pub fn poly(&self) -> &QPoly {
        self.field.poly()
    }

    /// Checks that the two embeddings generate `L` (minimal polynomial of a
    /// generic combination has full degree).
    pub fn images_generate(&self) -> bool {
        let a = self.left.image();
        let b = self.right.image();
        (1..6).any(|c| {
            let t = a + &b.scale(&Rational::from_integer(c.into()));
            minimal_polynomial(&t).degree() == Some(self.degree())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositum_with_rationals() {
        let q = NumberField::rationals();
        let k = NumberField::from_i64s(&[1, 0, 0, 0, 1]).unwrap();
        let c = compositum(&q, &k);
        assert!(c.field.same(&k));
        assert_eq!(c.right.image(), &k.generator());
    }

    #[test]
    fn sqrt_minus_two_and_i() {
        let a = NumberField::from_i64s(&[2, 0, 1]).unwrap();
        let b = NumberField::from_i64s(&[1, 0, 1]).unwrap();
        let c = compositum(&a, &b);
        assert_eq!(c.degree(), 4);
        assert!(c.left.image().eval_qpoly(a.poly()).is_zero());
        assert!(c.right.image().eval_qpoly(b.poly()).is_zero());
        assert!(c.images_generate());
    }

    #[test]
    fn compositum_with_itself() {
        let k = NumberField::from_i64s(&[1, 0, 0, 0, 1]).unwrap();
        let c = compositum(&k, &k);
        assert_eq!(c.degree(), 4);
    }

    #[test]
    fn subfield_is_absorbed() {
        let k = NumberField::from_i64s(&[1, 0, 0, 0, 1]).unwrap();
        let a = NumberField::from_i64s(&[2, 0, 1]).unwrap();
        let c = compositum(&a, &k);
        assert_eq!(c.degree(), 4);
        assert!(c.field.same(&k));
    }

    #[test]
    fn cubic_and_quadratic() {
        let a = NumberField::from_i64s(&[-2, 0, 0, 1]).unwrap();
        let b = NumberField::from_i64s(&[3, 0, 1]).unwrap();
        let c = compositum(&a, &b);
        assert_eq!(c.degree(), 6);
        assert!(c.images_generate());
    }
}
