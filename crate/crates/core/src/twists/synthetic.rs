//! Seeded eigen-systems with a prescribed group of inner twists.
//!
//! For a group `Γ ⊂ Aut(K)` with characters satisfying
//! `χ_{γδ} = χ_γ·γ(χ_δ)`, the element
//! `a_p = Σ_δ χ_δ(p)^{-1}·δ(β_p)` satisfies `γ(a_p) = χ_γ(p)·a_p` for
//! every `γ ∈ Γ` and any `β_p ∈ K`. Each `a_p` is then scaled by a positive
//! rational so that `|σ(a_p)| ≤ 2p^((k-1)/2)` in every embedding.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::rational::rat;
use crate::algebra::{complex_embeddings, FieldAutomorphism, NfElem, NumberField, Rational};
use crate::arith::{gcd, primes_up_to};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::newforms::EigenSystem;

/// Coordinates of `β_p` are drawn from `-BETA_RANGE..=BETA_RANGE`.
const BETA_RANGE: i64 = 3;
const MAX_RESAMPLES: usize = 64;

#[derive(Clone, Debug)]
pub struct SyntheticSpec {
    pub field: NumberField,
    /// `(γ, χ_γ)` pairs; the identity pair is added when missing.
    pub twists: Vec<(FieldAutomorphism, DirichletCharacter)>,
    pub level: u64,
    pub weight: u64,
    pub prime_bound: u64,
    pub seed: u64,
    /// Trivial when `None`.
    pub nebentypus: Option<DirichletCharacter>,
    /// Quadratic character `ε`; forces `a_p = 0` whenever `ε(p) = -1`.
    pub cm: Option<DirichletCharacter>,
    pub label: Option<String>,
}

impl SyntheticSpec {
    pub fn new(
        field: &NumberField,
        twists: Vec<(FieldAutomorphism, DirichletCharacter)>,
        level: u64,
        weight: u64,
        prime_bound: u64,
        seed: u64,
    ) -> Self {
        SyntheticSpec {
            field: field.clone(),
            twists,
            level,
            weight,
            prime_bound,
            seed,
            nebentypus: None,
            cm: None,
            label: None,
        }
    }
}

/// Brings a character into `field` (from `Q` if necessary) and to modulus `n`.
pub fn character_in(chi: &DirichletCharacter, field: &NumberField, n: u64) -> Result<DirichletCharacter> {
    if !n.is_multiple_of(chi.modulus()) {
        return Err(Error::domain(format!(
            "character modulus {} does not divide {n}",
            chi.modulus()
        )));
    }
    let c = if chi.field().same(field) {
        chi.clone()
    } else if chi.field().is_rational_field() {
        DirichletCharacter::from_unit_function(chi.modulus(), field, |u| {
            field.from_rational(chi.eval(u as i64).as_rational().expect("rational value"))
        })?
    } else {
        return Err(Error::domain("character values lie outside the target field"));
    };
    c.induce(n)
}

/// The pairs, normalized to modulus `N` and values in `K`, sorted with the
/// identity first; errors unless they form a group satisfying the cocycle
/// identity.
pub fn normalize_twist_group(
    field: &NumberField,
    twists: &[(FieldAutomorphism, DirichletCharacter)],
    n: u64,
) -> Result<Vec<(FieldAutomorphism, DirichletCharacter)>> {
    let mut pairs: Vec<(FieldAutomorphism, DirichletCharacter)> = Vec::new();
    for (g, c) in twists {
        if !g.field().same(field) {
            return Err(Error::domain("automorphism of a different field"));
        }
        if pairs.iter().any(|(h, _)| h == g) {
            return Err(Error::domain(format!("automorphism {g} prescribed twice")));
        }
        pairs.push((g.clone(), character_in(c, field, n)?));
    }
    if !pairs.iter().any(|(g, _)| g.is_identity()) {
        pairs.push((FieldAutomorphism::identity(field), DirichletCharacter::trivial(n, field)?));
    }
    pairs.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    if !pairs[0].1.is_trivial() {
        return Err(Error::domain("the identity must carry the trivial character"));
    }
    for (g, cg) in &pairs {
        for (d, cd) in &pairs {
            let gd = g.compose(d);
            let Some((_, cgd)) = pairs.iter().find(|(h, _)| h == &gd) else {
                return Err(Error::domain(format!("prescribed twists are not closed: {g} ∘ {d} missing")));
            };
            if cgd != &cg.mul(&cd.apply_automorphism(g))? {
                return Err(Error::domain(format!("cocycle identity fails for {g} and {d}")));
            }
        }
    }
    Ok(pairs)
}

fn random_element(k: &NumberField, rng: &mut ChaCha8Rng) -> NfElem {
    let coords: Vec<Rational> = (0..k.degree()).map(|_| rat(rng.gen_range(-BETA_RANGE..=BETA_RANGE))).collect();
    k.from_coords(&coords)
}

/// Least `m ≥ 1` with `x/m ≤ bound`.
fn shrink_factor(x: f64, bound: f64) -> i64 {
    if x <= bound {
        1
    } else {
        (x / bound).floor() as i64 + 1
    }
}

pub fn generate_synthetic_with(spec: &SyntheticSpec) -> Result<EigenSystem> {
    let k = &spec.field;
    let n = spec.level;
    if n == 0 || spec.weight == 0 {
        return Err(Error::domain("level and weight must be positive"));
    }
    let pairs = normalize_twist_group(k, &spec.twists, n)?;
    let eps = match &spec.nebentypus {
        Some(e) => character_in(e, k, n)?,
        None => DirichletCharacter::trivial(n, k)?,
    };
    for (g, c) in &pairs {
        if c.mul(c)?.mul(&eps)? != eps.apply_automorphism(g) {
            return Err(Error::domain(format!(
                "determinant relation χ_γ²ε = γ(ε) fails for {g}"
            )));
        }
    }
    let cm = match &spec.cm {
        Some(c) if !c.is_quadratic() => return Err(Error::domain("CM character must be quadratic")),
        Some(c) => Some(character_in(c, k, n)?),
        None => None,
    };
    let emb = complex_embeddings(k, 64)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut ap = BTreeMap::new();
    let minus_one = k.from_int(-1);
    for p in primes_up_to(spec.prime_bound) {
        if gcd(p, n) != 1 || cm.as_ref().is_some_and(|c| c.eval(p as i64) == minus_one) {
            ap.insert(p, k.zero());
            continue;
        }
        let mut a = k.zero();
        for _ in 0..MAX_RESAMPLES {
            let beta = random_element(k, &mut rng);
            a = pairs.iter().fold(k.zero(), |acc, (d, c)| {
                let w = c.eval(p as i64).inverse().expect("root of unity");
                &acc + &(&w * &d.apply(&beta))
            });
            if !a.is_zero() {
                break;
            }
        }
        if a.is_zero() {
            return Err(Error::domain(format!("could not draw a nonzero a_{p}")));
        }
        let bound = 2.0 * (p as f64).powf((spec.weight as f64 - 1.0) / 2.0);
        let size = emb.evaluate(&a).iter().map(|z| z.norm()).fold(0.0, f64::max);
        // embeddings are only approximate: leave a margin below the bound
        let m = shrink_factor(size * (1.0 + 1e-9), bound);
        ap.insert(p, a.scale(&Rational::new(1.into(), m.into())));
    }
    let label = spec
        .label
        .clone()
        .unwrap_or_else(|| format!("synthetic.{n}.{}.seed{}", spec.weight, spec.seed));
    let e = EigenSystem::new(label, n, spec.weight, eps, k, ap)?;
    let mut sq = BTreeMap::new();
    for (&p, a) in &e.ap {
        if p * p > spec.prime_bound {
            break;
        }
        let pw = k.from_rational(rat(p as i64).pow((spec.weight - 1) as i32));
        sq.insert(p * p, &(a * a) - &(&e.epsilon(p) * &pw));
    }
    e.with_prime_squares(sq)
}

/// Synthetic system with trivial nebentypus and the given twists.
pub fn generate_synthetic(
    field: &NumberField,
    prescribed: &[(FieldAutomorphism, DirichletCharacter)],
    level: u64,
    weight: u64,
    prime_bound: u64,
    seed: u64,
) -> Result<EigenSystem> {
    generate_synthetic_with(&SyntheticSpec::new(field, prescribed.to_vec(), level, weight, prime_bound, seed))
}
