//! Bundled eigen-systems at levels 30 and 100.
//!
//! Each fixture pairs two weight-2 systems whose low coefficients are the
//! published ones; every other `a_p` up to 100 is synthetic, produced by the
//! twist-group generator from a cocycle compatible with the nebentypus. The
//! JSON files are generated by [`generate_level30`] and
//! [`generate_level100`] and checked against them in the tests.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::rational::rat;
use crate::algebra::{FieldAutomorphism, NfElem, NumberField, Rational};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::newforms::{load_eigensystem, EigenSystem};
use crate::twists::{admissible_cocycles, conjugation_matches, generate_synthetic_with, Cocycle, SyntheticSpec};

pub const FIXTURE_BOUND: u64 = 100;
pub const LEVEL30_SEED: u64 = 30;
pub const LEVEL100_SEED: u64 = 100;

const LEVEL30_JSON: &str = include_str!("../fixtures/level30.json");
const LEVEL100_JSON: &str = include_str!("../fixtures/level100.json");

#[derive(Clone, Debug)]
pub struct FixturePair {
    pub name: String,
    pub left: EigenSystem,
    pub right: EigenSystem,
    /// Primes whose `a_p` (and `a_{p²}`) are the published values.
    pub published_primes: Vec<u64>,
    /// Number of admissible cocycles.
    pub cocycle_count: usize,
    /// Whether the chosen cocycle carries `ε^{-1}` on complex conjugation.
    /// When no admissible cocycle does, the first admissible one is used.
    pub conjugation_consistent: bool,
    pub seed: u64,
}

impl FixturePair {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": "fixture_pair",
            "name": self.name,
            "seed": self.seed,
            "cocycle_count": self.cocycle_count,
            "conjugation_consistent": self.conjugation_consistent,
            "published_primes": self.published_primes,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let get = |k: &str| v.get(k).ok_or_else(|| Error::parse(format!("fixture lacks \"{k}\"")));
        let num = |k: &str| get(k)?.as_u64().ok_or_else(|| Error::parse(format!("\"{k}\" must be an integer")));
        let published_primes = get("published_primes")?
            .as_array()
            .ok_or_else(|| Error::parse("\"published_primes\" must be an array"))?
            .iter()
            .map(|p| p.as_u64().ok_or_else(|| Error::parse("published prime must be an integer")))
            .collect::<Result<_>>()?;
        Ok(FixturePair {
            name: get("name")?.as_str().unwrap_or_default().to_string(),
            left: load_eigensystem(get("left")?)?,
            right: load_eigensystem(get("right")?)?,
            published_primes,
            cocycle_count: num("cocycle_count")? as usize,
            conjugation_consistent: get("conjugation_consistent")?
                .as_bool()
                .ok_or_else(|| Error::parse("\"conjugation_consistent\" must be a boolean"))?,
            seed: num("seed")?,
        })
    }
}

/// `Q(ζ8)`, generator `ζ = ζ8`.
pub fn level30_field() -> NumberField {
    NumberField::from_i64s(&[1, 0, 0, 0, 1]).expect("x^4 + 1 is irreducible")
}

/// `ε(7) = −ζ², ε(11) = −1` mod 30.
pub fn level30_character(k: &NumberField) -> Result<DirichletCharacter> {
    let z = k.generator();
    DirichletCharacter::from_generator_values(30, k, &[7, 11], &[-&z.pow(2), k.from_int(-1)])
}

/// Root `μ` of `x^8 − 7x^4 + 16`.
pub fn level100_field() -> NumberField {
    NumberField::from_i64s(&[16, 0, 0, 0, -7, 0, 0, 0, 1]).expect("x^8 - 7x^4 + 16 is irreducible")
}

/// `ε(51) = −1, ε(77) = (μ⁶ − 3μ²)/4` mod 100.
pub fn level100_character(k: &NumberField) -> Result<DirichletCharacter> {
    let m = k.generator();
    let v = (&m.pow(6) - &m.pow(2).scale(&rat(3))).scale(&Rational::new(1.into(), 4.into()));
    DirichletCharacter::from_generator_values(100, k, &[51, 77], &[k.from_int(-1), v])
}

/// `Q(√−15)`.
pub fn reference_field_level100() -> NumberField {
    NumberField::from_i64s(&[15, 0, 1]).expect("x^2 + 15 is irreducible")
}

/// Published `(a_p, a_{p²})` of the level-30 forms `f` and `g`.
pub fn level30_published(k: &NumberField) -> [(BTreeMap<u64, NfElem>, BTreeMap<u64, NfElem>); 2] {
    let z = k.generator();
    let one = k.one();
    let f = BTreeMap::from([(2, z.clone()), (3, &(&z.pow(3) - &z.pow(2)) - &one)]);
    let g = BTreeMap::from([(2, z.pow(3)), (3, &(&z.pow(9) - &z.pow(6)) - &one)]);
    [(f, BTreeMap::from([(4, z.pow(2))])), (g, BTreeMap::from([(4, z.pow(6))]))]
}

/// Published `a_p` of the level-100 form `f1`.
pub fn level100_published(k: &NumberField) -> BTreeMap<u64, NfElem> {
    let m = k.generator();
    let a3 = (&m.pow(7).scale(&rat(3)) - &m.pow(3).scale(&rat(13))).scale(&Rational::new(1.into(), 8.into()));
    BTreeMap::from([(2, m), (3, a3)])
}

/// `a_{p²} = a_p² − ε(p)p^(k−1)` for every `p² ≤ bound` with data.
fn prime_squares(e: &EigenSystem, bound: u64) -> BTreeMap<u64, NfElem> {
    e.ap.iter()
        .take_while(|(&p, _)| p * p <= bound)
        .map(|(&p, a)| {
            let pw = e.field.from_rational(rat(p as i64).pow((e.weight - 1) as i32));
            (p * p, &(a * a) - &(&e.epsilon(p) * &pw))
        })
        .collect()
}

fn with_published(mut e: EigenSystem, ap: &BTreeMap<u64, NfElem>, apsq: &BTreeMap<u64, NfElem>) -> Result<EigenSystem> {
    for (p, a) in ap {
        e.ap.insert(*p, a.clone());
    }
    let sq = prime_squares(&e, FIXTURE_BOUND);
    for (q, a) in apsq {
        if sq.get(q) != Some(a) {
            return Err(Error::domain(format!("published a_{q} disagrees with the Hecke relation")));
        }
    }
    e.with_prime_squares(sq)
}

/// First admissible cocycle carrying `ε^{-1}` on complex conjugation,
/// else the first admissible one.
fn choose_cocycle(eps: &DirichletCharacter, n: u64, known: &[(u64, NfElem)]) -> Result<(Cocycle, usize, bool)> {
    let all = admissible_cocycles(eps, n, known)?;
    let mut first_consistent = None;
    for (i, c) in all.iter().enumerate() {
        if conjugation_matches(c, eps)? != Some(false) {
            first_consistent = Some(i);
            break;
        }
    }
    let (i, consistent) = match first_consistent {
        Some(i) => (i, true),
        None if !all.is_empty() => (0, false),
        None => return Err(Error::domain(format!("no admissible cocycle at level {n}"))),
    };
    Ok((all[i].clone(), all.len(), consistent))
}

fn automorphism(k: &NumberField, image: NfElem) -> FieldAutomorphism {
    FieldAutomorphism::new(k, image).expect("root of the defining polynomial")
}

/// Level 30: `f` from the generator, `g = σ(f)` with `σ: ζ ↦ ζ³`. `g` keeps
/// the declared nebentypus `ε` although `σ(ε) = ε̄`.
pub fn generate_level30() -> Result<FixturePair> {
    let k = level30_field();
    let eps = level30_character(&k)?;
    let [(fa, fsq), (ga, gsq)] = level30_published(&k);
    let (chosen, cocycle_count, conjugation_consistent) = choose_cocycle(&eps, 30, &[])?;
    let mut spec = SyntheticSpec::new(&k, chosen, 30, 2, FIXTURE_BOUND, LEVEL30_SEED);
    spec.nebentypus = Some(eps.clone());
    spec.label = Some("30.2.f.synthetic".into());
    let f = with_published(generate_synthetic_with(&spec)?, &fa, &fsq)?;
    let sigma = automorphism(&k, k.generator().pow(3));
    let mut g = f.conjugate(&sigma, "30.2.g.synthetic");
    g.nebentypus = f.nebentypus.clone();
    for (p, a) in ga.iter() {
        if &g.ap[p] != a {
            return Err(Error::domain(format!("published a_{p} of g is not the conjugate of f")));
        }
    }
    for (q, a) in gsq.iter() {
        if &g.apsq[q] != a {
            return Err(Error::domain(format!("published a_{q} of g is not the conjugate of f")));
        }
    }
    Ok(FixturePair {
        name: "level30".into(),
        left: f,
        right: g,
        published_primes: fa.keys().copied().collect(),
        cocycle_count,
        conjugation_consistent,
        seed: LEVEL30_SEED,
    })
}

/// Level 100: `f1` from the generator constrained by the published `a_3`,
/// `f2 = σ(f1)` with `σ: μ ↦ −μ`, which fixes `ε`.
pub fn generate_level100() -> Result<FixturePair> {
    let k = level100_field();
    let eps = level100_character(&k)?;
    let published = level100_published(&k);
    let known: Vec<(u64, NfElem)> = published.iter().map(|(p, a)| (*p, a.clone())).collect();
    let (chosen, cocycle_count, conjugation_consistent) = choose_cocycle(&eps, 100, &known)?;
    let mut spec = SyntheticSpec::new(&k, chosen, 100, 2, FIXTURE_BOUND, LEVEL100_SEED);
    spec.nebentypus = Some(eps.clone());
    spec.label = Some("100.2.f1.synthetic".into());
    let f1 = with_published(generate_synthetic_with(&spec)?, &published, &BTreeMap::new())?;
    let sigma = automorphism(&k, -&k.generator());
    if eps.apply_automorphism(&sigma) != f1.nebentypus {
        return Err(Error::domain("μ ↦ −μ does not fix the nebentypus"));
    }
    let f2 = f1.conjugate(&sigma, "100.2.f2.synthetic");
    Ok(FixturePair {
        name: "level100".into(),
        left: f1,
        right: f2,
        published_primes: published.keys().copied().collect(),
        cocycle_count,
        conjugation_consistent,
        seed: LEVEL100_SEED,
    })
}

fn load(text: &str) -> Result<FixturePair> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
    FixturePair::from_json(&v)
}

/// The bundled level-30 pair.
pub fn level30() -> Result<FixturePair> {
    load(LEVEL30_JSON)
}

/// The bundled level-100 pair.
pub fn level100() -> Result<FixturePair> {
    load(LEVEL100_JSON)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(generated: FixturePair, text: &str, file: &str) {
        let expected = serde_json::to_string_pretty(&generated.to_json()).unwrap() + "\n";
        if std::env::var_os("TWISTKIT_REGEN_FIXTURES").is_some() {
            let path = format!("{}/fixtures/{file}", env!("CARGO_MANIFEST_DIR"));
            std::fs::write(path, &expected).unwrap();
            return;
        }
        assert_eq!(text, expected, "{file} is stale; regenerate with TWISTKIT_REGEN_FIXTURES=1");
    }

    #[test]
    fn bundled_fixtures_match_generator() {
        check(generate_level30().unwrap(), LEVEL30_JSON, "level30.json");
        check(generate_level100().unwrap(), LEVEL100_JSON, "level100.json");
    }

    #[test]
    fn published_values_survive() {
        let pair = level100().unwrap();
        let k = &pair.left.field;
        assert_eq!(pair.left.ap[&3], level100_published(k)[&3]);
        assert!(pair.left.is_synthetic() && pair.right.is_synthetic());
    }
}
