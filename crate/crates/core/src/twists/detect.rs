//! Inner twists `γ(a_p) = χ_γ(p)·a_p` of an eigen-system and the
//! identities they satisfy.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::subfield::Subfield;
use crate::algebra::{field_automorphisms, fixed_field as aut_fixed_field, is_galois, FieldAutomorphism, NfElem};
use crate::arith::{divisors, gcd, lcm};
use crate::characters::{unit_group, DirichletCharacter};
use crate::error::{Error, Result};
use crate::newforms::EigenSystem;

#[derive(Clone, Debug)]
pub struct InnerTwist {
    pub automorphism: FieldAutomorphism,
    /// Primitive.
    pub character: DirichletCharacter,
    pub verified_primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InconclusiveReason {
    /// No prime `p ∤ N` with `a_p ≠ 0`.
    NoUsablePrimes,
    /// Ratios agree with a character on the classes hit, but those classes
    /// do not generate the unit group of the largest candidate modulus, so
    /// several characters fit.
    PartialCoverage { modulus: u64, classes_hit: usize, group_order: u64 },
    /// Several characters fit and agree on every tested prime.
    Indistinguishable { characters: usize },
}

#[derive(Clone, Debug)]
pub struct Inconclusive {
    pub automorphism: FieldAutomorphism,
    pub reason: InconclusiveReason,
}

#[derive(Clone, Debug)]
pub struct TwistGroup {
    pub label: String,
    pub level: u64,
    pub prime_bound: u64,
    /// Sorted by automorphism, identity first.
    pub elements: Vec<InnerTwist>,
    pub inconclusive: Vec<Inconclusive>,
    pub warnings: Vec<String>,
}

impl TwistGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn find(&self, g: &FieldAutomorphism) -> Option<&InnerTwist> {
        self.elements.iter().find(|t| &t.automorphism == g)
    }

    pub fn automorphisms(&self) -> Vec<FieldAutomorphism> {
        self.elements.iter().map(|t| t.automorphism.clone()).collect()
    }

    /// Whether both groups consist of the same `(γ, primitive χ_γ)` pairs.
    pub fn same_pairs(&self, other: &TwistGroup) -> bool {
        self.elements.len() == other.elements.len()
            && self.elements.iter().all(|t| {
                other
                    .find(&t.automorphism)
                    .is_some_and(|u| u.character.same_primitive(&t.character))
            })
    }
}

/// Primes `p ≤ bound`, `p ∤ N`, with `a_p ≠ 0`.
pub fn usable_primes(e: &EigenSystem, bound: u64) -> Vec<u64> {
    e.good_primes(bound).into_iter().filter(|p| !e.ap[p].is_zero()).collect()
}

/// Default candidate moduli: divisors of `N`, or of `N²` when `wide`.
pub fn candidate_moduli(level: u64, wide: bool) -> Vec<u64> {
    if wide {
        divisors(level * level)
    } else {
        divisors(level)
    }
}

enum Fit {
    Found(DirichletCharacter),
    Partial(InconclusiveReason),
    None,
}

/// Tries to realize the ratio table as a character mod `m`.
fn fit_character(e: &EigenSystem, ratios: &[(u64, NfElem)], m: u64) -> Result<Fit> {
    let group = unit_group(m)?;
    let exponent = group.exponent();
    let mut by_class: HashMap<u64, NfElem> = HashMap::new();
    for (p, r) in ratios {
        if !r.pow(exponent).is_one() {
            return Ok(Fit::None);
        }
        let c = p % m;
        match by_class.get(&c) {
            Some(old) if old != r => return Ok(Fit::None),
            Some(_) => {}
            None => {
                by_class.insert(c, r.clone());
            }
        }
    }
    let mut classes: Vec<u64> = by_class.keys().copied().collect();
    classes.sort_unstable();
    let values: Vec<NfElem> = classes.iter().map(|c| by_class[c].clone()).collect();
    let table = match crate::characters::character::assign_on_span(&group, &e.field, &classes, &values) {
        Ok(t) => t,
        Err(_) => return Ok(Fit::None),
    };
    if (table.len() as u64) < group.order() {
        return Ok(Fit::Partial(InconclusiveReason::PartialCoverage {
            modulus: m,
            classes_hit: classes.len(),
            group_order: group.order(),
        }));
    }
    let canon: Vec<NfElem> = group.generators().iter().map(|g| table[g].clone()).collect();
    match DirichletCharacter::from_canonical_values(m, &e.field, canon) {
        Ok(c) => Ok(Fit::Found(c.primitive())),
        Err(_) => Ok(Fit::None),
    }
}

enum Outcome {
    Twist(InnerTwist),
    Inconclusive(Inconclusive),
    Rejected,
}

fn classify(e: &EigenSystem, g: &FieldAutomorphism, moduli: &[u64], primes: &[u64]) -> Result<Outcome> {
    let ratios: Vec<(u64, NfElem)> = primes
        .iter()
        .map(|&p| {
            let a = &e.ap[&p];
            (p, &g.apply(a) * &a.inverse().expect("a_p is nonzero"))
        })
        .collect();
    if g.is_identity() {
        return Ok(Outcome::Twist(InnerTwist {
            automorphism: g.clone(),
            character: DirichletCharacter::trivial(1, &e.field)?,
            verified_primes: primes.to_vec(),
        }));
    }
    if primes.is_empty() {
        return Ok(Outcome::Inconclusive(Inconclusive {
            automorphism: g.clone(),
            reason: InconclusiveReason::NoUsablePrimes,
        }));
    }
    let mut partial = None;
    let largest = *moduli.last().expect("nonempty");
    for &m in moduli {
        match fit_character(e, &ratios, m)? {
            Fit::Found(c) => {
                // a character of a larger modulus may fit the same data
                if m != largest {
                    if let Fit::Partial(r) = fit_character(e, &ratios, largest)? {
                        return Ok(Outcome::Inconclusive(Inconclusive { automorphism: g.clone(), reason: r }));
                    }
                }
                return Ok(Outcome::Twist(InnerTwist {
                    automorphism: g.clone(),
                    character: c,
                    verified_primes: primes.to_vec(),
                }))
            }
            Fit::Partial(r) => {
                partial.get_or_insert(r);
            }
            Fit::None => {}
        }
    }
    Ok(match partial {
        Some(reason) => Outcome::Inconclusive(Inconclusive { automorphism: g.clone(), reason }),
        None => Outcome::Rejected,
    })
}

/// Searches `Aut(K_f)` for inner twists. Each automorphism is accepted
/// with the character read off from the ratios `γ(a_p)/a_p`, reported as
/// inconclusive when the data cannot pin the character down, or rejected.
pub fn detect_inner_twists(e: &EigenSystem, moduli: &[u64], bound: u64) -> Result<TwistGroup> {
    if moduli.is_empty() {
        return Err(Error::domain("no candidate moduli"));
    }
    if !e.covers(bound) {
        return Err(Error::domain(format!(
            "bound {bound} exceeds the data available (primes up to {})",
            e.prime_bound()
        )));
    }
    let mut moduli = moduli.to_vec();
    moduli.sort_unstable();
    moduli.dedup();
    let primes = usable_primes(e, bound);
    let auts = field_automorphisms(&e.field);
    let outcomes: Vec<Result<Outcome>> = std::thread::scope(|s| {
        let handles: Vec<_> = auts
            .iter()
            .map(|g| {
                let (moduli, primes) = (&moduli, &primes);
                s.spawn(move || classify(e, g, moduli, primes))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("detection thread panicked")).collect()
    });
    let mut elements = Vec::new();
    let mut inconclusive = Vec::new();
    for o in outcomes {
        match o? {
            Outcome::Twist(t) => elements.push(t),
            Outcome::Inconclusive(i) => inconclusive.push(i),
            Outcome::Rejected => {}
        }
    }
    elements.sort_by(|a, b| a.automorphism.canonical_cmp(&b.automorphism));
    let mut warnings = Vec::new();
    if !is_galois(&e.field) {
        warnings.push(format!(
            "coefficient field is not Galois: only {} of {} embeddings are automorphisms",
            auts.len(),
            e.field.degree()
        ));
    }
    Ok(TwistGroup {
        label: e.label.clone(),
        level: e.level,
        prime_bound: bound,
        elements,
        inconclusive,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub equal: bool,
    /// A usable prime where the two characters differ.
    pub witness: Option<u64>,
}

/// Compares two characters claimed for the same `γ`. When they differ, a
/// prime with `a_p ≠ 0` separating them is exhibited if the data has one;
/// at such a prime at most one of them satisfies `γ(a_p) = χ(p)a_p`.
pub fn verify_uniqueness(
    e: &EigenSystem,
    _g: &FieldAutomorphism,
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    bound: u64,
) -> UniquenessReport {
    if chi1.same_primitive(chi2) {
        return UniquenessReport { equal: true, witness: None };
    }
    let witness = usable_primes(e, bound)
        .into_iter()
        .find(|&p| chi1.eval(p as i64) != chi2.eval(p as i64));
    UniquenessReport { equal: false, witness }
}

/// Whether `γ ↦ χ_γ` is a twist of `e` at every usable prime.
pub fn is_twist(e: &EigenSystem, g: &FieldAutomorphism, chi: &DirichletCharacter, bound: u64) -> bool {
    e.good_primes(bound).into_iter().all(|p| {
        let a = &e.ap[&p];
        g.apply(a) == &chi.eval(p as i64) * a
    })
}

fn coprime_primes(level: u64, bound: u64) -> Vec<u64> {
    crate::arith::primes_up_to(bound).into_iter().filter(|&p| gcd(p, level) == 1).collect()
}

/// Closure under composition, identity with trivial character, inverses.
pub fn group_axioms_check(t: &TwistGroup) -> bool {
    let Some(first) = t.elements.first() else { return false };
    if !first.automorphism.is_identity() || !first.character.is_trivial() {
        return false;
    }
    let mut seen = Vec::new();
    for x in &t.elements {
        if seen.contains(&&x.automorphism) {
            return false;
        }
        seen.push(&x.automorphism);
        if t.find(&x.automorphism.inverse()).is_none() {
            return false;
        }
        for y in &t.elements {
            if t.find(&x.automorphism.compose(&y.automorphism)).is_none() {
                return false;
            }
        }
    }
    true
}

/// `χ_{γδ}(p) = χ_γ(p)·γ(χ_δ(p))` for all pairs and primes `p ∤ N`, with
/// `(γδ)(x) = γ(δ(x))`. False when the group is not closed.
pub fn cocycle_check(t: &TwistGroup) -> bool {
    let primes = coprime_primes(t.level, t.prime_bound);
    for x in &t.elements {
        for y in &t.elements {
            let Some(z) = t.find(&x.automorphism.compose(&y.automorphism)) else {
                return false;
            };
            for &p in &primes {
                let lhs = z.character.eval(p as i64);
                let rhs = &x.character.eval(p as i64) * &x.automorphism.apply(&y.character.eval(p as i64));
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// `χ_γ(p)²·ε(p) = γ(ε(p))` for every element and usable prime.
pub fn determinant_relation_check(e: &EigenSystem, t: &TwistGroup) -> bool {
    let primes = e.good_primes(t.prime_bound);
    t.elements.iter().all(|x| {
        primes.iter().all(|&p| {
            let c = x.character.eval(p as i64);
            let eps = e.epsilon(p);
            &(&c * &c) * &eps == x.automorphism.apply(&eps)
        })
    })
}

/// Every detected `γ` has a unique primitive character: re-fitting at each
/// candidate modulus never produces a different one.
pub fn uniqueness_check(e: &EigenSystem, t: &TwistGroup, moduli: &[u64]) -> Result<bool> {
    let primes = usable_primes(e, t.prime_bound);
    for x in &t.elements {
        let ratios: Vec<(u64, NfElem)> = primes
            .iter()
            .map(|&p| {
                let a = &e.ap[&p];
                (p, &x.automorphism.apply(a) * &a.inverse().expect("nonzero"))
            })
            .collect();
        for &m in moduli {
            if let Fit::Found(c) = fit_character(e, &ratios, m)? {
                if !c.same_primitive(&x.character) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The subfield of `K_f` fixed by every automorphism in the group.
pub fn fixed_field(e: &EigenSystem, t: &TwistGroup) -> Subfield {
    aut_fixed_field(&e.field, &t.automorphisms())
}

/// `a_p²/ε(p) ∈ F` for every usable prime.
pub fn fixed_field_membership(e: &EigenSystem, t: &TwistGroup, f: &Subfield) -> bool {
    usable_primes(e, t.prime_bound).into_iter().all(|p| {
        let a = &e.ap[&p];
        let eps = e.epsilon(p);
        f.contains(&(&(a * a) * &eps.inverse().expect("ε(p) is a root of unity")))
    })
}

/// `lcm` of the conductors of all `χ_γ`.
pub fn conductor_lcm(t: &TwistGroup) -> u64 {
    t.elements.iter().fold(1, |acc, x| lcm(acc, x.character.conductor()))
}
