//! Field embeddings `K -> L` given by the image of the generator, and the
//! automorphism group of a number field.

use std::fmt;
use std::sync::Arc;

use super::field::{NfElem, NumberField};
use super::nfpoly::roots_in_field;
use crate::error::{Error, Result};

/// A field homomorphism `source -> target`, determined by the image of the
/// generator of `source`.
#[derive(Clone)]
pub struct FieldEmbedding {
    source: NumberField,
    target: NumberField,
    image: NfElem,
    /// Images of `1, x, ..., x^(n-1)`.
    powers: Arc<Vec<NfElem>>,
}

impl FieldEmbedding {
    /// Checks that `image` is a root of the source's defining polynomial.
    pub fn new(source: &NumberField, image: NfElem) -> Result<Self> {
        if !image.eval_qpoly(source.poly()).is_zero() {
            return Err(Error::domain(format!(
                "{image} is not a root of {}",
                source.poly()
            )));
        }
        Ok(Self::new_unchecked(source, image))
    }

    pub(crate) fn new_unchecked(source: &NumberField, image: NfElem) -> Self {
        let target = image.field().clone();
        let mut powers = Vec::with_capacity(source.degree());
        let mut cur = target.one();
        for _ in 0..source.degree() {
            powers.push(cur.clone());
            cur = &cur * &image;
        }
        FieldEmbedding {
            source: source.clone(),
            target,
            image,
            powers: Arc::new(powers),
        }
    }

    pub fn identity(k: &NumberField) -> Self {
        Self::new_unchecked(k, k.generator())
    }

    pub fn source(&self) -> &NumberField {
        &self.source
    }

    pub fn target(&self) -> &NumberField {
        &self.target
    }

    pub fn image(&self) -> &NfElem {
        &self.image
    }

    pub fn apply(&self, e: &NfElem) -> NfElem {
        assert!(e.field().same(&self.source), "element is not in the source field");
        let mut acc = self.target.zero();
        for (c, p) in e.coords().iter().zip(self.powers.iter()) {
            if !num_traits::Zero::is_zero(c) {
                acc = &acc + &p.scale(c);
            }
        }
        acc
    }

    /// Matrix of the map in the power bases (column `j` = image of `x^j`).
    pub fn matrix(&self) -> Vec<Vec<super::rational::Rational>> {
        let cols: Vec<_> = self.powers.iter().map(|p| p.coords()).collect();
        (0..self.target.degree())
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FieldEmbedding) -> FieldEmbedding {
        assert!(inner.target.same(&self.source));
        Self::new_unchecked(&inner.source, self.apply(&inner.image))
    }
}

impl fmt::Debug for FieldEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldEmbedding(x -> {} : {:?} -> {:?})", self.image, self.source, self.target)
    }
}

impl PartialEq for FieldEmbedding {
    fn eq(&self, other: &Self) -> bool {
        self.source.same(&other.source) && self.image == other.image
    }
}

impl Eq for FieldEmbedding {}

/// An automorphism of a number field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldAutomorphism(FieldEmbedding);

impl FieldAutomorphism {
    pub fn new(k: &NumberField, image: NfElem) -> Result<Self> {
        if !image.field().same(k) {
            return Err(Error::domain("automorphism image must lie in the same field"));
        }
        Ok(FieldAutomorphism(FieldEmbedding::new(k, image)?))
    }

    pub fn identity(k: &NumberField) -> Self {
        FieldAutomorphism(FieldEmbedding::identity(k))
    }

    pub fn field(&self) -> &NumberField {
        self.0.source()
    }

    pub fn image(&self) -> &NfElem {
        self.0.image()
    }

    pub fn as_embedding(&self) -> &FieldEmbedding {
        &self.0
    }

    pub fn apply(&self, e: &NfElem) -> NfElem {
        self.0.apply(e)
    }

    pub fn is_identity(&self) -> bool {
        self.image() == &self.field().generator()
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &FieldAutomorphism) -> FieldAutomorphism {
        FieldAutomorphism(self.0.compose(&other.0))
    }

    pub fn order(&self) -> usize {
        let mut cur = self.clone();
        let mut k = 1;
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }

    pub fn inverse(&self) -> FieldAutomorphism {
        let mut prev = self.clone();
        let mut cur = self.compose(self);
        while !cur.is_identity() {
            prev = cur.clone();
            cur = self.compose(&cur);
        }
        prev
    }

    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .is_identity()
            .cmp(&self.is_identity())
            .then_with(|| self.image().canonical_cmp(other.image()))
    }
}

impl fmt::Debug for FieldAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a -> {}", self.image())
    }
}

impl fmt::Display for FieldAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a -> {}", self.image())
    }
}

/// All automorphisms of `K`, identity first, the rest in canonical order of
/// the image of the generator. Cached per field.
pub fn field_automorphisms(k: &NumberField) -> Vec<FieldAutomorphism> {
    let images = k.automorphism_cache().get_or_init(|| {
        if k.degree() == 1 {
            return vec![k.generator().to_qpoly()];
        }
        roots_in_field(k.poly(), k).iter().map(|r| r.to_qpoly()).collect()
    });
    let mut out: Vec<FieldAutomorphism> = images
        .iter()
        .map(|p| FieldAutomorphism(FieldEmbedding::new_unchecked(k, k.from_qpoly(p))))
        .collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// `|Aut(K)| = [K:Q]`.
pub fn is_galois(k: &NumberField) -> bool {
    field_automorphisms(k).len() == k.degree()
}
