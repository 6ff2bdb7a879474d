//! Hecke eigenvalues `a_p` of a classical newform together with its level,
//! weight, nebentypus and coefficient field.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::rational::rat;
use crate::algebra::{complex_embeddings, NfElem, NumberField};
use crate::arith::{gcd, is_prime};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::json::{character_from_json, character_to_json, elem_from_json, elem_to_json, field_from_json, field_to_json};

/// Slack on the Ramanujan bound.
pub const RAMANUJAN_SLACK: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub label: String,
    pub level: u64,
    pub weight: u64,
    /// Nebentypus, induced to modulus `level`.
    pub nebentypus: DirichletCharacter,
    pub field: NumberField,
    pub ap: BTreeMap<u64, NfElem>,
    /// Optional `a_{p^2}` keyed by `p^2`.
    pub apsq: BTreeMap<u64, NfElem>,
}

impl EigenSystem {
    pub fn new(
        label: impl Into<String>,
        level: u64,
        weight: u64,
        nebentypus: DirichletCharacter,
        field: &NumberField,
        ap: BTreeMap<u64, NfElem>,
    ) -> Result<Self> {
        if level == 0 || weight == 0 {
            return Err(Error::domain("level and weight must be positive"));
        }
        if !level.is_multiple_of(nebentypus.modulus()) {
            return Err(Error::domain(format!(
                "nebentypus modulus {} does not divide the level {level}",
                nebentypus.modulus()
            )));
        }
        let neb = if nebentypus.field().same(field) {
            nebentypus
        } else if nebentypus.field().is_rational_field() {
            DirichletCharacter::from_unit_function(nebentypus.modulus(), field, |u| {
                field.from_rational(nebentypus.eval(u as i64).as_rational().expect("rational value"))
            })?
        } else {
            return Err(Error::domain("nebentypus values must lie in the coefficient field"));
        };
        let neb = neb.induce(level)?;
        for (&p, a) in &ap {
            if !is_prime(p) {
                return Err(Error::domain(format!("eigenvalue key {p} is not prime")));
            }
            if !a.field().same(field) {
                return Err(Error::domain(format!("a_{p} lies outside the coefficient field")));
            }
        }
        Ok(EigenSystem {
            label: label.into(),
            level,
            weight,
            nebentypus: neb,
            field: field.clone(),
            ap,
            apsq: BTreeMap::new(),
        })
    }

    pub fn with_prime_squares(mut self, apsq: BTreeMap<u64, NfElem>) -> Result<Self> {
        for (&q, a) in &apsq {
            let p = (q as f64).sqrt().round() as u64;
            if p * p != q || !is_prime(p) {
                return Err(Error::domain(format!("key {q} is not the square of a prime")));
            }
            if !a.field().same(&self.field) {
                return Err(Error::domain(format!("a_{q} lies outside the coefficient field")));
            }
        }
        self.apsq = apsq;
        Ok(self)
    }

    /// Largest prime with data, 0 when there is none.
    pub fn prime_bound(&self) -> u64 {
        self.ap.keys().next_back().copied().unwrap_or(0)
    }

    /// Whether no prime in `(prime_bound, bound]` is missing, so that data
    /// up to `bound` is as complete as the system's own data.
    pub fn covers(&self, bound: u64) -> bool {
        let pb = self.prime_bound();
        bound <= pb || !(pb + 1..=bound).any(is_prime)
    }

    pub fn a(&self, p: u64) -> Option<&NfElem> {
        self.ap.get(&p)
    }

    pub fn epsilon(&self, p: u64) -> NfElem {
        self.nebentypus.eval(p as i64)
    }

    /// Primes `p ≤ bound` with `p ∤ N` and data available.
    pub fn good_primes(&self, bound: u64) -> Vec<u64> {
        self.ap.keys().copied().filter(|&p| p <= bound && gcd(p, self.level) == 1).collect()
    }

    pub fn is_synthetic(&self) -> bool {
        self.label.contains("synthetic")
    }

    /// Same data restricted to primes `≤ bound`.
    pub fn truncate(&self, bound: u64) -> Self {
        let mut out = self.clone();
        out.ap.retain(|&p, _| p <= bound);
        out.apsq.retain(|&q, _| q <= bound * bound);
        out
    }

    /// Applies a field automorphism to every coefficient and the nebentypus.
    pub fn conjugate(&self, g: &crate::algebra::FieldAutomorphism, label: impl Into<String>) -> Self {
        EigenSystem {
            label: label.into(),
            level: self.level,
            weight: self.weight,
            nebentypus: self.nebentypus.apply_automorphism(g),
            field: self.field.clone(),
            ap: self.ap.iter().map(|(&p, a)| (p, g.apply(a))).collect(),
            apsq: self.apsq.iter().map(|(&q, a)| (q, g.apply(a))).collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("label".into(), json!(self.label));
        m.insert("level".into(), json!(self.level));
        m.insert("weight".into(), json!(self.weight));
        m.insert("char".into(), character_to_json(&self.nebentypus));
        m.insert("field".into(), field_to_json(&self.field));
        let ap: Map<String, Value> = self.ap.iter().map(|(p, a)| (p.to_string(), elem_to_json(a))).collect();
        m.insert("ap".into(), Value::Object(ap));
        if !self.apsq.is_empty() {
            let sq: Map<String, Value> =
                self.apsq.iter().map(|(q, a)| (q.to_string(), elem_to_json(a))).collect();
            m.insert("apsq".into(), Value::Object(sq));
        }
        Value::Object(m)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::parse(e.to_string()))?;
        load_eigensystem(&v)
    }
}

fn keyed_elements(field: &NumberField, v: &Value, what: &str) -> Result<BTreeMap<u64, NfElem>> {
    let obj = v.as_object().ok_or_else(|| Error::parse(format!("\"{what}\" must be an object")))?;
    let mut out = BTreeMap::new();
    for (k, x) in obj {
        let n: u64 = k.parse().map_err(|_| Error::parse(format!("key {k:?} in \"{what}\" is not an integer")))?;
        let e = elem_from_json(field, x).map_err(|e| Error::parse(format!("{what}[{k}]: {e}")))?;
        out.insert(n, e);
    }
    Ok(out)
}

/// Parses an eigen-system document.
pub fn load_eigensystem(v: &Value) -> Result<EigenSystem> {
    let get = |k: &str| v.get(k).ok_or_else(|| Error::parse(format!("eigen-system lacks \"{k}\"")));
    let label = get("label")?
        .as_str()
        .ok_or_else(|| Error::parse("\"label\" must be a string"))?
        .to_string();
    let level = get("level")?.as_u64().ok_or_else(|| Error::parse("\"level\" must be a positive integer"))?;
    let weight = get("weight")?.as_u64().ok_or_else(|| Error::parse("\"weight\" must be a positive integer"))?;
    let field = field_from_json(get("field")?)?;
    let chi = character_from_json(get("char")?, Some(&field))?;
    let ap = keyed_elements(&field, get("ap")?, "ap")?;
    for &p in ap.keys() {
        if !is_prime(p) {
            return Err(Error::parse(format!("\"ap\" key {p} is not prime")));
        }
    }
    let apsq = match v.get("apsq") {
        Some(x) => keyed_elements(&field, x, "apsq")?,
        None => BTreeMap::new(),
    };
    EigenSystem::new(label, level, weight, chi, &field, ap)
        .and_then(|e| e.with_prime_squares(apsq))
        .map_err(|e| match e {
            Error::Domain(m) => Error::Parse(m),
            other => other,
        })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EigenSystemReport {
    pub hecke_ok: bool,
    pub ramanujan_ok: bool,
    pub notes: Vec<String>,
}

/// Checks `a_{p²} = a_p² − ε(p)p^(k−1)` for the supplied prime squares, or
/// for those stored with the system when `extra` is `None`.
pub fn hecke_consistency(e: &EigenSystem, extra: Option<&BTreeMap<u64, NfElem>>) -> EigenSystemReport {
    let data = extra.unwrap_or(&e.apsq);
    let mut rep = EigenSystemReport { hecke_ok: true, ramanujan_ok: true, notes: vec![] };
    for (&q, aq) in data {
        let p = (q as f64).sqrt().round() as u64;
        let Some(ap) = e.a(p).filter(|_| p * p == q) else {
            rep.hecke_ok = false;
            rep.notes.push(format!("p={p}: no a_p for supplied a_{q}"));
            continue;
        };
        let pk = e.field.from_rational(rat(p as i64).pow((e.weight - 1) as i32));
        let expected = &(ap * ap) - &(&e.epsilon(p) * &pk);
        if &expected != aq {
            rep.hecke_ok = false;
            rep.notes.push(format!("p={p}: a_{q} = {aq} but a_p^2 - eps(p)p^(k-1) = {expected}"));
        }
    }
    rep
}

/// `|σ(a_p)| ≤ 2p^((k−1)/2)` in every complex embedding, for `p ∤ N`.
pub fn ramanujan_check(e: &EigenSystem, precision: u32) -> Result<EigenSystemReport> {
    let emb = complex_embeddings(&e.field, precision)?;
    let mut rep = EigenSystemReport { hecke_ok: true, ramanujan_ok: true, notes: vec![] };
    for (&p, a) in &e.ap {
        if e.level.is_multiple_of(p) {
            continue;
        }
        let bound = 2.0 * (p as f64).powf((e.weight as f64 - 1.0) / 2.0);
        let worst = emb.evaluate(a).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if worst > bound + RAMANUJAN_SLACK {
            rep.ramanujan_ok = false;
            rep.notes.push(format!("p={p}: |a_p| = {worst:.6} exceeds {bound:.6}"));
        }
    }
    Ok(rep)
}
