//! Spin characteristic polynomials of a Yoshida lift and the fields and
//! twists they determine.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::compositum::{compositum, Compositum};
use crate::algebra::nfpoly::roots_in_field;
use crate::algebra::rational::rat;
use crate::algebra::subfield::Subfield;
use crate::algebra::{field_automorphisms, subfield_generated, FieldAutomorphism, FieldEmbedding, NfElem, NumberField};
use crate::arith::{divisors, gcd, lcm, primes_up_to};
use crate::characters::{all_characters, DirichletCharacter};
use crate::error::{Error, Result};
use crate::newforms::EigenSystem;
use crate::twists::{character_in, is_twist, Inconclusive, InconclusiveReason, InnerTwist, TwistGroup};

use super::conditions::{check_conditions_asserting, ConditionReport};

/// Monic quartic `c_0 + c_1 x + c_2 x^2 + c_3 x^3 + x^4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinPolynomial {
    coeffs: [NfElem; 5],
}

impl SpinPolynomial {
    /// `(x² − a x + χ p^(k1−1))(x² − b x + χ p^(k2−1))`.
    pub fn from_factors(a: &NfElem, b: &NfElem, chi_p: &NfElem, p: u64, k1: u64, k2: u64) -> Self {
        let k = a.field();
        let u = chi_p * &k.from_rational(rat(p as i64).pow((k1 - 1) as i32));
        let v = chi_p * &k.from_rational(rat(p as i64).pow((k2 - 1) as i32));
        let c0 = &u * &v;
        let c1 = -&(&(a * &v) + &(b * &u));
        let c2 = &(&u + &v) + &(a * b);
        let c3 = -&(a + b);
        SpinPolynomial { coeffs: [c0, c1, c2, c3, k.one()] }
    }

    pub fn from_coeffs(coeffs: [NfElem; 5]) -> Result<Self> {
        if !coeffs[4].is_one() {
            return Err(Error::domain("spin polynomial must be monic"));
        }
        let k = coeffs[0].field();
        if coeffs.iter().any(|c| !c.field().same(k)) {
            return Err(Error::domain("spin polynomial coefficients lie in different fields"));
        }
        Ok(SpinPolynomial { coeffs })
    }

    /// Ascending coefficients, `c_4 = 1` last.
    pub fn coeffs(&self) -> &[NfElem; 5] {
        &self.coeffs
    }

    /// `a_p + b_p`.
    pub fn trace(&self) -> NfElem {
        -&self.coeffs[3]
    }

    pub fn apply(&self, g: &FieldAutomorphism) -> Self {
        SpinPolynomial { coeffs: self.coeffs.clone().map(|c| g.apply(&c)) }
    }

    /// The polynomial whose roots are those of `self` times `t`:
    /// `c_i ↦ t^(4−i) c_i`.
    pub fn twist(&self, t: &NfElem) -> Self {
        let mut out = self.coeffs.clone();
        let mut s = t.field().one();
        for i in (0..4).rev() {
            s = &s * t;
            out[i] = &out[i] * &s;
        }
        SpinPolynomial { coeffs: out }
    }
}

impl fmt::Display for SpinPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^4")?;
        for i in (0..4).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            match i {
                0 => write!(f, " + ({c})")?,
                1 => write!(f, " + ({c})*x")?,
                _ => write!(f, " + ({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Compositum of the two coefficient fields, built in an order that does
/// not depend on which system is called left.
pub fn ordered_compositum(e1: &EigenSystem, e2: &EigenSystem) -> Compositum {
    let (k1, k2) = (&e1.field, &e2.field);
    if k1.poly().canonical_cmp(k2.poly()).is_le() {
        compositum(k1, k2)
    } else {
        let c = compositum(k2, k1);
        Compositum { field: c.field, left: c.right, right: c.left }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LiftOptions {
    /// Accept both weights even `≥ 2` instead of requiring `(2, even > 2)`.
    pub relaxed_weights: bool,
    /// Prime at which both local components are asserted discrete series.
    pub discrete_series_prime: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct YoshidaLift {
    pub left: EigenSystem,
    pub right: EigenSystem,
    pub compositum: Compositum,
    /// Common nebentypus over the compositum, modulus `lcm(N1, N2)`.
    pub nebentypus: DirichletCharacter,
    pub prime_bound: u64,
    /// Keyed by primes `p ≤ prime_bound` coprime to both levels.
    pub spin_polys: BTreeMap<u64, SpinPolynomial>,
    pub conditions: ConditionReport,
    pub options: LiftOptions,
    pub warnings: Vec<String>,
}

impl YoshidaLift {
    pub fn field(&self) -> &NumberField {
        &self.compositum.field
    }

    pub fn level(&self) -> u64 {
        lcm(self.left.level, self.right.level)
    }

    /// `a_p` and `b_p` in the compositum.
    pub fn eigenvalues(&self, p: u64) -> Option<(NfElem, NfElem)> {
        let a = self.left.a(p)?;
        let b = self.right.a(p)?;
        Some((self.compositum.left.apply(a), self.compositum.right.apply(b)))
    }

    fn primes(&self, bound: u64) -> impl Iterator<Item = (&u64, &SpinPolynomial)> {
        self.spin_polys.range(..=bound)
    }
}

/// Builds the lift with the relaxed weight rule, warning when the strict
/// rule fails.
pub fn build_lift(e1: &EigenSystem, e2: &EigenSystem, prime_bound: u64) -> Result<YoshidaLift> {
    build_lift_with(e1, e2, prime_bound, LiftOptions { relaxed_weights: true, ..Default::default() })
}

pub fn build_lift_with(e1: &EigenSystem, e2: &EigenSystem, prime_bound: u64, opts: LiftOptions) -> Result<YoshidaLift> {
    for (side, e) in [("left", e1), ("right", e2)] {
        if !e.covers(prime_bound) {
            return Err(Error::domain(format!(
                "{side} system {} has data only up to {}, below the bound {prime_bound}",
                e.label,
                e.prime_bound()
            )));
        }
    }
    let conditions = check_conditions_asserting(e1, e2, opts.discrete_series_prime);
    if !conditions.same_primitive_character {
        return Err(Error::precondition(format!(
            "{} and {} do not share a primitive nebentypus: {}",
            e1.label,
            e2.label,
            conditions.notes.join("; ")
        )));
    }
    let w = &conditions.weight_condition;
    let mut warnings = Vec::new();
    if !w.strict_ok {
        if !(opts.relaxed_weights && w.relaxed_ok) {
            return Err(Error::precondition(format!(
                "weights ({}, {}) fail the {} weight rule",
                e1.weight,
                e2.weight,
                if opts.relaxed_weights { "relaxed" } else { "strict" }
            )));
        }
        warnings.push(format!("weights ({}, {}) accepted by the relaxed rule only", e1.weight, e2.weight));
    }
    if !conditions.not_scalar_multiple {
        warnings.push("the two systems coincide on all shared primes".into());
    }
    if conditions.discrete_series_at_prime.status != super::DiscreteSeriesStatus::Yes {
        warnings.push("no common discrete-series prime asserted".into());
    }

    let comp = ordered_compositum(e1, e2);
    let n = lcm(e1.level, e2.level);
    let nebentypus = e1.nebentypus.embed(&comp.left).primitive().induce(n)?;
    let mut spin_polys = BTreeMap::new();
    for p in primes_up_to(prime_bound) {
        if gcd(p, n) != 1 {
            continue;
        }
        let (Some(a), Some(b)) = (e1.a(p), e2.a(p)) else {
            return Err(Error::domain(format!("missing eigenvalue at p = {p}")));
        };
        let a = comp.left.apply(a);
        let b = comp.right.apply(b);
        let chi = nebentypus.eval(p as i64);
        spin_polys.insert(p, SpinPolynomial::from_factors(&a, &b, &chi, p, e1.weight, e2.weight));
    }
    Ok(YoshidaLift {
        left: e1.clone(),
        right: e2.clone(),
        compositum: comp,
        nebentypus,
        prime_bound,
        spin_polys,
        conditions,
        options: opts,
        warnings,
    })
}

/// Re-expands every spin polynomial from the two factors.
pub fn factorization_check(y: &YoshidaLift) -> bool {
    y.spin_polys.iter().all(|(&p, s)| {
        y.eigenvalues(p).is_some_and(|(a, b)| {
            let chi = y.nebentypus.eval(p as i64);
            &SpinPolynomial::from_factors(&a, &b, &chi, p, y.left.weight, y.right.weight) == s
        })
    })
}

/// `c_0 = χ(p)² p^(k1+k2−2)` at every prime.
pub fn constant_term_check(y: &YoshidaLift) -> bool {
    let k = y.field();
    y.spin_polys.iter().all(|(&p, s)| {
        let chi = y.nebentypus.eval(p as i64);
        let pw = k.from_rational(rat(p as i64).pow((y.left.weight + y.right.weight - 2) as i32));
        s.coeffs()[0] == &(&chi * &chi) * &pw
    })
}

/// Whether swapping the two systems leaves every spin polynomial unchanged.
pub fn swap_symmetric(e1: &EigenSystem, e2: &EigenSystem, prime_bound: u64) -> Result<bool> {
    let a = build_lift(e1, e2, prime_bound)?;
    let b = build_lift(e2, e1, prime_bound)?;
    Ok(a.compositum.field.same(&b.compositum.field) && a.spin_polys == b.spin_polys)
}

/// Subfield of the compositum generated by `a_p + b_p` for the primes of
/// the lift up to `bound`.
pub fn trace_field(y: &YoshidaLift, bound: u64) -> Subfield {
    let traces: Vec<NfElem> = y.primes(bound).map(|(_, s)| s.trace()).collect();
    subfield_generated(y.field(), &traces)
}

/// Subfield generated by every coefficient of every spin polynomial up to
/// `bound`.
pub fn full_hecke_field(y: &YoshidaLift, bound: u64) -> Subfield {
    let coeffs: Vec<NfElem> = y.primes(bound).flat_map(|(_, s)| s.coeffs()[..4].to_vec()).collect();
    subfield_generated(y.field(), &coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceComparison {
    pub field: String,
    pub degree: usize,
    /// Whether the reference field embeds in the compositum at all.
    pub embeds: bool,
    pub trace_contained: bool,
    pub trace_equal: bool,
    pub full_contained: bool,
    pub full_equal: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldComparison {
    pub prime_bound: u64,
    pub compositum: String,
    pub compositum_degree: usize,
    pub trace_field: String,
    pub trace_degree: usize,
    pub full_field: String,
    pub full_degree: usize,
    /// Trace field strictly inside the compositum.
    pub strict_inclusion: bool,
    /// Full Hecke field strictly inside the compositum.
    pub full_strict_inclusion: bool,
    /// Trace field ⊆ full field, checked on generators.
    pub chain_ok: bool,
    pub reference_comparison: Option<ReferenceComparison>,
}

fn contained_in(inner: &Subfield, outer: &Option<Subfield>) -> bool {
    match outer {
        Some(o) => o.contains_subfield(inner),
        None => inner.degree() == 1,
    }
}

/// Trace and full Hecke fields, compared with each other, with the
/// compositum and optionally with a reference field.
pub fn compare_fields(y: &YoshidaLift, bound: u64, reference: Option<&NumberField>) -> FieldComparison {
    let t = trace_field(y, bound);
    let f = full_hecke_field(y, bound);
    let n = y.field().degree();
    let reference_comparison = reference.map(|r| {
        let image = roots_in_field(r.poly(), y.field())
            .into_iter()
            .next()
            .map(|root| subfield_generated(y.field(), &[root]));
        let mut notes = Vec::new();
        if image.is_none() {
            notes.push(format!("{} has no root in the compositum", r.poly()));
        }
        let trace_contained = contained_in(&t, &image);
        let full_contained = contained_in(&f, &image);
        let trace_equal = trace_contained && t.degree() == r.degree();
        let full_equal = full_contained && f.degree() == r.degree();
        if !trace_equal {
            notes.push(format!("trace field has degree {} (reference degree {})", t.degree(), r.degree()));
        }
        if !full_equal {
            notes.push(format!("full Hecke field has degree {} (reference degree {})", f.degree(), r.degree()));
        }
        ReferenceComparison {
            field: r.poly().to_string(),
            degree: r.degree(),
            embeds: image.is_some(),
            trace_contained,
            trace_equal,
            full_contained,
            full_equal,
            notes,
        }
    });
    FieldComparison {
        prime_bound: bound,
        compositum: y.field().poly().to_string(),
        compositum_degree: n,
        trace_field: t.field().poly().to_string(),
        trace_degree: t.degree(),
        full_field: f.field().poly().to_string(),
        full_degree: f.degree(),
        strict_inclusion: t.degree() < n,
        full_strict_inclusion: f.degree() < n,
        chain_ok: f.contains_subfield(&t),
        reference_comparison,
    }
}

/// Pairs `(γ, χ)` satisfying `γ(P_p) = P_p` twisted by `χ(p)` at every
/// prime of the lift. Several characters may belong to one `γ`.
#[derive(Clone, Debug)]
pub struct LiftTwistGroup {
    pub level: u64,
    pub prime_bound: u64,
    /// Sorted by automorphism, then by conductor.
    pub elements: Vec<InnerTwist>,
    pub inconclusive: Vec<Inconclusive>,
    pub warnings: Vec<String>,
}

impl LiftTwistGroup {
    pub fn contains(&self, g: &FieldAutomorphism, chi: &DirichletCharacter) -> bool {
        self.elements.iter().any(|t| &t.automorphism == g && t.character.same_primitive(chi))
    }

    pub fn characters_for(&self, g: &FieldAutomorphism) -> Vec<&DirichletCharacter> {
        self.elements.iter().filter(|t| &t.automorphism == g).map(|t| &t.character).collect()
    }

    /// Distinct automorphisms carrying at least one character.
    pub fn automorphisms(&self) -> Vec<FieldAutomorphism> {
        let mut out: Vec<FieldAutomorphism> = Vec::new();
        for t in &self.elements {
            if !out.contains(&t.automorphism) {
                out.push(t.automorphism.clone());
            }
        }
        out
    }
}

/// Whether `(γ, χ)` maps every spin polynomial up to `bound` to its twist.
pub fn spin_twist_holds(y: &YoshidaLift, g: &FieldAutomorphism, chi: &DirichletCharacter, bound: u64) -> bool {
    y.primes(bound).all(|(&p, s)| s.apply(g) == s.twist(&chi.eval(p as i64)))
}

/// Primitive characters of conductor dividing some modulus in `moduli`,
/// with values in `k`.
fn primitive_characters(moduli: &[u64], k: &NumberField) -> Result<Vec<DirichletCharacter>> {
    let mut conductors: Vec<u64> = moduli.iter().flat_map(|&m| divisors(m)).collect();
    conductors.sort_unstable();
    conductors.dedup();
    let mut out = Vec::new();
    for m in conductors {
        out.extend(all_characters(m, k)?.into_iter().filter(|c| c.conductor() == m));
    }
    Ok(out)
}

enum LiftOutcome {
    Twists(Vec<InnerTwist>),
    Inconclusive(Inconclusive),
}

fn classify_lift(
    y: &YoshidaLift,
    g: &FieldAutomorphism,
    chars: &[DirichletCharacter],
    primes: &[u64],
    bound: u64,
) -> LiftOutcome {
    if primes.is_empty() && !g.is_identity() {
        return LiftOutcome::Inconclusive(Inconclusive {
            automorphism: g.clone(),
            reason: InconclusiveReason::NoUsablePrimes,
        });
    }
    let passing: Vec<&DirichletCharacter> = chars.iter().filter(|c| spin_twist_holds(y, g, c, bound)).collect();
    // two passing characters that agree on every tested prime cannot be told apart
    for (i, c) in passing.iter().enumerate() {
        for d in &passing[i + 1..] {
            if primes.iter().all(|&p| c.eval(p as i64) == d.eval(p as i64)) {
                return LiftOutcome::Inconclusive(Inconclusive {
                    automorphism: g.clone(),
                    reason: InconclusiveReason::Indistinguishable { characters: passing.len() },
                });
            }
        }
    }
    LiftOutcome::Twists(
        passing
            .into_iter()
            .map(|c| InnerTwist { automorphism: g.clone(), character: c.clone(), verified_primes: primes.to_vec() })
            .collect(),
    )
}

/// Searches `Aut(L) ×` primitive characters of conductor dividing a
/// modulus in `moduli` (default: divisors of `lcm(N1, N2)`).
pub fn lift_twist_group(y: &YoshidaLift, moduli: Option<&[u64]>, bound: u64) -> Result<LiftTwistGroup> {
    if bound > y.prime_bound {
        return Err(Error::domain(format!("bound {bound} exceeds the lift's bound {}", y.prime_bound)));
    }
    let n = y.level();
    let default_moduli = [n];
    let chars = primitive_characters(moduli.unwrap_or(&default_moduli), y.field())?;
    let primes: Vec<u64> = y.primes(bound).map(|(&p, _)| p).collect();
    let auts = field_automorphisms(y.field());
    let outcomes: Vec<LiftOutcome> = std::thread::scope(|s| {
        let handles: Vec<_> = auts
            .iter()
            .map(|g| {
                let (chars, primes) = (&chars, &primes);
                s.spawn(move || classify_lift(y, g, chars, primes, bound))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("lift twist thread panicked")).collect()
    });
    let mut elements = Vec::new();
    let mut inconclusive = Vec::new();
    for o in outcomes {
        match o {
            LiftOutcome::Twists(t) => elements.extend(t),
            LiftOutcome::Inconclusive(i) => inconclusive.push(i),
        }
    }
    elements.sort_by(|a, b| {
        a.automorphism
            .canonical_cmp(&b.automorphism)
            .then(a.character.modulus().cmp(&b.character.modulus()))
    });
    let mut warnings = Vec::new();
    if !crate::algebra::is_galois(y.field()) {
        warnings.push("compositum is not Galois; only its automorphisms are searched".into());
    }
    Ok(LiftTwistGroup { level: n, prime_bound: bound, elements, inconclusive, warnings })
}

/// The automorphism of `K` whose transport along `emb` agrees with `g` on
/// the image of `K`, if `g` preserves that image.
pub fn restrict_automorphism(g: &FieldAutomorphism, emb: &FieldEmbedding) -> Option<FieldAutomorphism> {
    let target = g.apply(emb.image());
    field_automorphisms(emb.source()).into_iter().find(|h| emb.apply(h.image()) == target)
}

/// Pairs `(γ, χ)` with `γ ∈ Aut(L)` restricting to `γ1 ∈ Γ1` and
/// `γ2 ∈ Γ2` whose characters agree: the image of `Γ1 ∩ Γ2` in `Aut(L)`.
pub fn common_twists(y: &YoshidaLift, g1: &TwistGroup, g2: &TwistGroup) -> Vec<(FieldAutomorphism, DirichletCharacter)> {
    let mut out = Vec::new();
    for g in field_automorphisms(y.field()) {
        let (Some(h1), Some(h2)) = (
            restrict_automorphism(&g, &y.compositum.left),
            restrict_automorphism(&g, &y.compositum.right),
        ) else {
            continue;
        };
        let (Some(t1), Some(t2)) = (g1.find(&h1), g2.find(&h2)) else { continue };
        let c1 = t1.character.embed(&y.compositum.left);
        let c2 = t2.character.embed(&y.compositum.right);
        if c1.same_primitive(&c2) {
            out.push((g, c1.primitive()));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub common: usize,
    pub contained: bool,
    /// Automorphisms of the common twists missing from the lift's group.
    pub missing: Vec<String>,
}

/// Checks that every common twist of the two factors is a twist of the lift.
pub fn containment_check(y: &YoshidaLift, g1: &TwistGroup, g2: &TwistGroup, gy: &LiftTwistGroup) -> ContainmentReport {
    let common = common_twists(y, g1, g2);
    let missing: Vec<String> = common
        .iter()
        .filter(|(g, c)| !gy.contains(g, c))
        .map(|(g, c)| format!("{g} with conductor {}", c.conductor()))
        .collect();
    ContainmentReport { common: common.len(), contained: missing.is_empty(), missing }
}

/// For `(γ, χ)` a twist of both factors (over a common field), checks that
/// `γ` maps each spin polynomial to its `χ`-twist up to `bound`.
pub fn verify_lifted_twist(
    e1: &EigenSystem,
    e2: &EigenSystem,
    g: &FieldAutomorphism,
    chi: &DirichletCharacter,
    bound: u64,
) -> Result<bool> {
    if !e1.field.same(&e2.field) {
        return Err(Error::domain("both systems must have the same coefficient field"));
    }
    if !g.field().same(&e1.field) {
        return Err(Error::domain("automorphism of a different field"));
    }
    let chi = character_in(chi, &e1.field, chi.modulus())?;
    for (side, e) in [("left", e1), ("right", e2)] {
        if !is_twist(e, g, &chi, bound) {
            return Err(Error::precondition(format!(
                "({g}, conductor {}) is not a twist of the {side} factor {}",
                chi.conductor(),
                e.label
            )));
        }
    }
    let y = build_lift(e1, e2, bound)?;
    // the compositum of a field with itself is that field
    Ok(spin_twist_holds(&y, g, &chi, bound))
}
