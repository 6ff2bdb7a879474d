//! Exact arithmetic over Q and number fields.

pub mod automorphism;
pub mod compositum;
pub mod embeddings;
pub mod factor;
pub mod field;
pub mod linalg;
pub mod nfpoly;
pub mod poly;
pub mod rational;
pub mod roots_of_unity;
pub mod subfield;
pub mod zmodp;

pub use automorphism::{field_automorphisms, is_galois, FieldAutomorphism, FieldEmbedding};
pub use compositum::{compositum, Compositum};
pub use embeddings::{complex_conjugation, complex_embeddings, ComplexEmbeddings};
pub use factor::factor_rational_polynomial;
pub use field::{NfElem, NumberField};
pub use poly::QPoly;
pub use rational::Rational;
pub use roots_of_unity::{all_roots_of_unity, cyclotomic_polynomial, roots_of_unity, roots_of_unity_dividing};
pub use subfield::{fixed_field, minimal_polynomial, subfield_generated, Subfield};
