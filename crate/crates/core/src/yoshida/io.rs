//! JSON documents for lifts.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::json::{character_to_json, elem_from_json, elem_to_json, field_to_json};
use crate::newforms::load_eigensystem;

use super::lift::{build_lift_with, LiftOptions, SpinPolynomial, YoshidaLift};

pub fn lift_to_json(y: &YoshidaLift) -> Value {
    let polys: Map<String, Value> = y
        .spin_polys
        .iter()
        .map(|(p, s)| (p.to_string(), Value::Array(s.coeffs().iter().map(elem_to_json).collect())))
        .collect();
    json!({
        "kind": "yoshida_lift",
        "prime_bound": y.prime_bound,
        "options": y.options,
        "left": y.left.to_json(),
        "right": y.right.to_json(),
        "compositum": field_to_json(y.field()),
        "left_embedding": elem_to_json(y.compositum.left.image()),
        "right_embedding": elem_to_json(y.compositum.right.image()),
        "nebentypus": character_to_json(&y.nebentypus),
        "spin_polys": polys,
        "conditions": y.conditions,
        "warnings": y.warnings,
    })
}

/// Rebuilds the lift from its two factors and checks the stored spin
/// polynomials against the rebuilt ones.
pub fn lift_from_json(v: &Value) -> Result<YoshidaLift> {
    let get = |k: &str| v.get(k).ok_or_else(|| Error::parse(format!("lift document lacks \"{k}\"")));
    if get("kind")?.as_str() != Some("yoshida_lift") {
        return Err(Error::parse("document is not a yoshida_lift"));
    }
    let bound = get("prime_bound")?
        .as_u64()
        .ok_or_else(|| Error::parse("\"prime_bound\" must be a positive integer"))?;
    let opts = match v.get("options") {
        Some(o) => LiftOptions {
            relaxed_weights: o.get("relaxed_weights").and_then(Value::as_bool).unwrap_or(false),
            discrete_series_prime: o.get("discrete_series_prime").and_then(Value::as_u64),
        },
        None => LiftOptions::default(),
    };
    let left = load_eigensystem(get("left")?)?;
    let right = load_eigensystem(get("right")?)?;
    let y = build_lift_with(&left, &right, bound, opts)?;
    let stored = get("spin_polys")?
        .as_object()
        .ok_or_else(|| Error::parse("\"spin_polys\" must be an object"))?;
    let mut parsed = BTreeMap::new();
    for (k, cs) in stored {
        let p: u64 = k.parse().map_err(|_| Error::parse(format!("spin_polys key {k:?} is not an integer")))?;
        let arr = cs
            .as_array()
            .filter(|a| a.len() == 5)
            .ok_or_else(|| Error::parse(format!("spin_polys[{p}] must list 5 coefficients")))?;
        let coeffs: Vec<_> = arr.iter().map(|c| elem_from_json(y.field(), c)).collect::<Result<_>>()?;
        let coeffs: [_; 5] = coeffs.try_into().expect("length checked");
        parsed.insert(p, SpinPolynomial::from_coeffs(coeffs).map_err(|e| Error::parse(e.to_string()))?);
    }
    if parsed != y.spin_polys {
        return Err(Error::parse("stored spin polynomials do not match the factors"));
    }
    Ok(y)
}
