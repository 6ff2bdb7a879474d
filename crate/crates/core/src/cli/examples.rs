//! The two worked examples (levels 30 and 100) recomputed on the bundled
//! fixtures. Each check is `pass`, `fail`, or `compare` when the published
//! statement and the computation are reported side by side without a
//! verdict.

use serde::Serialize;

use crate::algebra::factor::is_irreducible;
use crate::algebra::nfpoly::roots_in_field;
use crate::algebra::rational::{rat, ratio};
use crate::algebra::{complex_conjugation, complex_embeddings, subfield_generated, FieldAutomorphism, NfElem, QPoly};
use crate::characters::twist_hypotheses;
use crate::error::{Error, Result};
use crate::fixtures::{self, FixturePair};
use crate::newforms::{hecke_consistency, EigenSystem};
use crate::twists::{candidate_moduli, detect_inner_twists, determinant_relation_check, TwistGroup};
use crate::yoshida::{
    build_lift_with, compare_fields, containment_check, lift_twist_group, FieldComparison, LiftOptions, YoshidaLift,
};

/// Tolerance on `|μ| = √2` in every complex embedding.
pub const MODULUS_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Compare,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleCheck {
    pub id: String,
    pub description: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExamplesReport {
    pub prime_bound: u64,
    pub checks: Vec<ExampleCheck>,
    pub level30_fields: FieldComparison,
    pub level100_fields: FieldComparison,
}

impl ExamplesReport {
    /// No check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&ExampleCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                let tag = match c.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::Compare => "INFO",
                };
                format!("{tag:<5}{:<28}{}: {}", c.id, c.description, c.detail)
            })
            .collect();
        let fails = self.checks.iter().filter(|c| c.status == CheckStatus::Fail).count();
        out.push(format!("{} checks, {fails} failed", self.checks.len()));
        out
    }
}

struct Checks(Vec<ExampleCheck>);

impl Checks {
    fn verdict(&mut self, id: &str, description: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        self.push(id, description, status, detail);
    }

    fn compare(&mut self, id: &str, description: &str, detail: impl Into<String>) {
        self.push(id, description, CheckStatus::Compare, detail);
    }

    fn push(&mut self, id: &str, description: &str, status: CheckStatus, detail: impl Into<String>) {
        self.0.push(ExampleCheck { id: id.into(), description: description.into(), status, detail: detail.into() });
    }
}

fn relaxed() -> LiftOptions {
    LiftOptions { relaxed_weights: true, discrete_series_prime: None }
}

fn twists_of(e: &EigenSystem, bound: u64) -> Result<TwistGroup> {
    detect_inner_twists(e, &candidate_moduli(e.level, false), bound)
}

fn published_match(e: &EigenSystem, ap: &[(u64, NfElem)], apsq: &[(u64, NfElem)]) -> bool {
    ap.iter().all(|(p, a)| e.a(*p) == Some(a)) && apsq.iter().all(|(q, a)| e.apsq.get(q) == Some(a))
}

/// Common lift checks: containment of the factors' common twists and an
/// automorphism other than 1 and complex conjugation.
fn lift_twist_checks(c: &mut Checks, prefix: &str, y: &YoshidaLift, g1: &TwistGroup, g2: &TwistGroup, bound: u64) -> Result<()> {
    let gy = lift_twist_group(y, None, bound)?;
    let rep = containment_check(y, g1, g2, &gy);
    c.verdict(
        &format!("{prefix}.lift_twists"),
        "common twists lift",
        rep.contained && rep.common > 0,
        format!("{} common twists of the factors, all twists of the lift: {}", rep.common, rep.contained),
    );
    let conj = complex_conjugation(y.field())?;
    let extra: Vec<FieldAutomorphism> = gy
        .automorphisms()
        .into_iter()
        .filter(|g| !g.is_identity() && Some(g) != conj.as_ref())
        .collect();
    c.verdict(
        &format!("{prefix}.extra_twist"),
        "extra twist of the lift",
        !extra.is_empty(),
        format!(
            "{} automorphisms besides 1 and complex conjugation{}",
            extra.len(),
            extra.first().map(|g| format!(", e.g. {g}")).unwrap_or_default()
        ),
    );
    Ok(())
}

fn level30(c: &mut Checks, pair: &FixturePair, bound: u64) -> Result<FieldComparison> {
    let (f, g) = (&pair.left, &pair.right);
    let k = &f.field;
    let z = k.generator();
    let eps = &f.nebentypus;
    c.verdict(
        "level30.character",
        "nebentypus",
        eps.conductor() == 15 && eps.order() == 4,
        format!("conductor {}, order {}", eps.conductor(), eps.order()),
    );

    let h = twist_hypotheses(2, 2, 30)?;
    c.verdict(
        "level30.unit_order_4",
        "unit of order 4 mod 30",
        h.order_element_ok,
        match h.witness {
            Some(w) => format!("witness {w}, {w}^2 = {} mod 30", w * w % 30),
            None => "none".into(),
        },
    );

    let [(fa, fsq), (ga, gsq)] = fixtures::level30_published(k);
    let flat = |m: &std::collections::BTreeMap<u64, NfElem>| m.iter().map(|(p, a)| (*p, a.clone())).collect::<Vec<_>>();
    c.verdict(
        "level30.published",
        "published coefficients",
        published_match(f, &flat(&fa), &flat(&fsq)) && published_match(g, &flat(&ga), &flat(&gsq)),
        format!("f: a2 = {}, a3 = {}; g: a2 = {}, a3 = {}", fa[&2], fa[&3], ga[&2], ga[&3]),
    );

    let sigma = FieldAutomorphism::new(k, z.pow(3))?;
    let g_true = EigenSystem { nebentypus: eps.apply_automorphism(&sigma), ..g.clone() };
    let declared = hecke_consistency(g, None).hecke_ok;
    let conjugated = hecke_consistency(&g_true, None).hecke_ok;
    c.compare(
        "level30.g_nebentypus",
        "nebentypus of g",
        format!(
            "g = σ(f) for σ: ζ -> ζ^3, which sends ε to its conjugate; Hecke relation at 49 with declared ε: {declared}, with conjugate: {conjugated}"
        ),
    );

    let theta = &z + &z.pow(3);
    let sub = subfield_generated(k, &[theta]);
    let all_in = (1..=8).all(|i| sub.contains(&(&z.pow(i) + &z.pow(3 * i))));
    c.verdict(
        "level30.trace_expressions",
        "ζ^i + ζ^3i in Q(ζ + ζ^3)",
        all_in,
        "exact membership for i = 1..8",
    );
    let x2p2 = QPoly::from_i64s(&[2, 0, 1]);
    c.verdict(
        "level30.subfield",
        "Q(ζ + ζ^3)",
        sub.degree() == 2 && sub.field().poly() == &x2p2,
        format!("minimal polynomial {}, degree {}", sub.field().poly(), sub.degree()),
    );

    let y = build_lift_with(f, g, bound, relaxed())?;
    let cond = &y.conditions;
    c.verdict(
        "level30.conditions",
        "lift conditions",
        cond.not_scalar_multiple && cond.same_primitive_character && cond.weight_condition.relaxed_ok,
        format!(
            "not a multiple: {}, same character: {}, weights strict/relaxed: {}/{}",
            cond.not_scalar_multiple,
            cond.same_primitive_character,
            cond.weight_condition.strict_ok,
            cond.weight_condition.relaxed_ok
        ),
    );

    let cmp = compare_fields(&y, bound, None);
    c.verdict(
        "level30.trace_field",
        "trace field strictly inside",
        cmp.strict_inclusion && cmp.trace_degree == 2 && cmp.compositum_degree == 4,
        format!(
            "trace field {} (degree {}) in {} (degree {})",
            cmp.trace_field, cmp.trace_degree, cmp.compositum, cmp.compositum_degree
        ),
    );

    let gf = twists_of(f, bound)?;
    let gg = twists_of(g, bound)?;
    c.compare(
        "level30.factor_twists",
        "twist groups of f and g",
        format!(
            "f: {} twists (conductors {:?}), g: {} twists, determinant relation for g with declared ε: {}",
            gf.order(),
            gf.elements.iter().map(|t| t.character.conductor()).collect::<Vec<_>>(),
            gg.order(),
            determinant_relation_check(g, &gg)
        ),
    );
    lift_twist_checks(c, "level30", &y, &gf, &gg, bound)?;
    Ok(cmp)
}

fn level100(c: &mut Checks, pair: &FixturePair, bound: u64, precision: u32) -> Result<FieldComparison> {
    let (f1, f2) = (&pair.left, &pair.right);
    let k = &f1.field;
    let mu = k.generator();
    let eps = &f1.nebentypus;
    c.verdict(
        "level100.character",
        "nebentypus",
        eps.conductor() == 20,
        format!("conductor {}, order {}", eps.conductor(), eps.order()),
    );

    let mu4 = mu.pow(4);
    let quad = &(&(&mu4 * &mu4) - &mu4.scale(&rat(7))) + &k.from_int(16);
    c.verdict(
        "level100.field",
        "coefficient field",
        is_irreducible(k.poly()) && quad.is_zero(),
        format!("{} irreducible: {}, μ^4 root of x^2 - 7x + 16: {}", k.poly(), is_irreducible(k.poly()), quad.is_zero()),
    );

    let emb = complex_embeddings(k, precision)?;
    let worst = emb
        .evaluate(&mu)
        .iter()
        .map(|z| (z.norm() - std::f64::consts::SQRT_2).abs())
        .fold(0.0, f64::max);
    c.verdict(
        "level100.modulus",
        "|μ| = √2",
        worst <= MODULUS_TOLERANCE,
        format!("max deviation {worst:.2e} over {} embeddings", k.degree()),
    );

    let published = fixtures::level100_published(k);
    let flat: Vec<(u64, NfElem)> = published.iter().map(|(p, a)| (*p, a.clone())).collect();
    c.verdict(
        "level100.published",
        "published coefficients",
        published_match(f1, &flat, &[]),
        format!("a2 = {}, a3 = {}", published[&2], published[&3]),
    );

    let sum2 = f1.ap[&2].clone() + f2.ap[&2].clone();
    c.verdict(
        "level100.trace_at_2",
        "a2 + b2",
        sum2.is_zero() && f2.ap[&2] == -&mu,
        format!("b2 = {}, a2 + b2 = {sum2}", f2.ap[&2]),
    );

    let reference = fixtures::reference_field_level100();
    let roots = roots_in_field(reference.poly(), k);
    let Some(s) = roots.first().cloned() else {
        return Err(Error::Precondition("x^2 + 15 has no root in the coefficient field".into()));
    };
    let q15 = subfield_generated(k, std::slice::from_ref(&s));
    let in_q15 = |p: u64| q15.contains(&(&f1.ap[&p] + &f2.ap[&p]));
    let published_ok = pair.published_primes.iter().all(|&p| in_q15(p));
    c.verdict(
        "level100.trace_values",
        "a_p + b_p in Q(√-15)",
        published_ok,
        format!("published primes {:?}", pair.published_primes),
    );
    let good = f1.good_primes(bound);
    let inside = good.iter().filter(|&&p| in_q15(p)).count();

    let y = build_lift_with(f1, f2, bound, relaxed())?;
    let cmp = compare_fields(&y, bound, Some(&reference));
    let rc = cmp.reference_comparison.as_ref().expect("reference given");
    c.compare(
        "level100.field_comparison",
        "Hecke fields vs Q(√-15)",
        format!(
            "trace field {} (degree {}), full field {} (degree {}), compositum degree {}; Q(√-15) embeds: {}, contains trace field: {}; {inside} of {} good primes have a_p + b_p in Q(√-15)",
            cmp.trace_field,
            cmp.trace_degree,
            cmp.full_field,
            cmp.full_degree,
            cmp.compositum_degree,
            rc.embeds,
            rc.trace_contained,
            good.len()
        ),
    );

    let r = (&k.from_int(7) + &s).scale(&ratio(1, 2));
    let on_quadratic = (&(&(&r * &r) - &r.scale(&rat(7))) + &k.from_int(16)).is_zero();
    let on_octic = r.eval_qpoly(k.poly()).is_zero();
    c.compare(
        "level100.root",
        "(7 + √-15)/2",
        format!("root of x^2 - 7x + 16: {on_quadratic}, root of {}: {on_octic}; it is μ^4 up to conjugation", k.poly()),
    );

    let gt = twists_of(f1, bound)?;
    c.verdict(
        "level100.twist_order",
        "inner twists of f1",
        gt.order() == 8 && gt.inconclusive.is_empty(),
        format!(
            "{} twists, conductors {:?}",
            gt.order(),
            gt.elements.iter().map(|t| t.character.conductor()).collect::<Vec<_>>()
        ),
    );
    c.compare(
        "level100.conjugation",
        "complex conjugation and a3",
        format!(
            "{} admissible cocycles; one carrying ε^-1 on complex conjugation exists: {}",
            pair.cocycle_count, pair.conjugation_consistent
        ),
    );
    let g2 = twists_of(f2, bound)?;
    lift_twist_checks(c, "level100", &y, &gt, &g2, bound)?;
    Ok(cmp)
}

/// Runs every example check on the bundled fixtures, using primes up to
/// `prime_bound` (at most the fixture bound).
pub fn paper_examples(prime_bound: u64, precision: u32) -> Result<ExamplesReport> {
    let bound = prime_bound.min(fixtures::FIXTURE_BOUND);
    let mut c = Checks(Vec::new());
    let p30 = fixtures::level30()?;
    let p100 = fixtures::level100()?;
    let level30_fields = level30(&mut c, &p30, bound)?;
    let level100_fields = level100(&mut c, &p100, bound, precision)?;
    Ok(ExamplesReport { prime_bound: bound, checks: c.0, level30_fields, level100_fields })
}
