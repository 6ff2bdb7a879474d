//! JSON forms shared by every document the tool reads or writes.
//!
//! Rationals are `"num/den"` strings, polynomials are ascending coefficient
//! arrays, number-field elements are `{"rep": [...]}` coordinate arrays in
//! the power basis, matrices are row-major arrays of rational strings.

use serde_json::{json, Map, Value};

use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::{NfElem, NumberField, QPoly, Rational};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::siegel_fourier::{HalfIntegralMatrix, SiegelFourierExpansion};
use crate::symplectic::RMatrix;

/// Version tag written into every report header.
pub const SCHEMA_VERSION: &str = "twistkit/1";

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

/// Accepts `"n/d"` strings and JSON integers.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(crate::algebra::rational::rat(n.as_i64().unwrap())),
        _ => Err(Error::parse(format!("expected a rational string, found {v}"))),
    }
}

pub fn poly_to_json(p: &QPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn poly_from_json(v: &Value) -> Result<QPoly> {
    let arr = v.as_array().ok_or_else(|| Error::parse("polynomial must be an array"))?;
    Ok(QPoly::new(arr.iter().map(rational_from_json).collect::<Result<_>>()?))
}

pub fn field_to_json(k: &NumberField) -> Value {
    json!({ "poly": poly_to_json(k.poly()) })
}

pub fn field_from_json(v: &Value) -> Result<NumberField> {
    let p = v.get("poly").ok_or_else(|| Error::parse("field object needs \"poly\""))?;
    NumberField::new(poly_from_json(p)?)
}

pub fn elem_to_json(e: &NfElem) -> Value {
    json!({ "rep": e.coords().iter().map(rational_to_json).collect::<Vec<_>>() })
}

/// `{"rep": [...]}` with at most `degree` coordinates, or a bare rational.
pub fn elem_from_json(k: &NumberField, v: &Value) -> Result<NfElem> {
    if let Some(rep) = v.get("rep") {
        let arr = rep.as_array().ok_or_else(|| Error::parse("\"rep\" must be an array"))?;
        if arr.len() > k.degree() {
            return Err(Error::parse(format!(
                "element has {} coordinates but the field has degree {}",
                arr.len(),
                k.degree()
            )));
        }
        let mut coords: Vec<Rational> = arr.iter().map(rational_from_json).collect::<Result<_>>()?;
        coords.resize(k.degree(), Rational::from_integer(0.into()));
        Ok(k.from_coords(&coords))
    } else {
        Ok(k.from_rational(rational_from_json(v)?))
    }
}

pub fn character_to_json(c: &DirichletCharacter) -> Value {
    json!({
        "modulus": c.modulus(),
        "gens": c.group().generators(),
        "values": c.values().iter().map(elem_to_json).collect::<Vec<_>>(),
        "value_field": field_to_json(c.field()),
    })
}

/// Reads a character. Values are parsed in `value_field`; when `target` is
/// given they must lie in it, either because the fields coincide or
/// because the value field is `Q`.
pub fn character_from_json(v: &Value, target: Option<&NumberField>) -> Result<DirichletCharacter> {
    let modulus = v
        .get("modulus")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("character needs a positive integer \"modulus\""))?;
    let gens: Vec<i64> = v
        .get("gens")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("character needs \"gens\""))?
        .iter()
        .map(|g| g.as_i64().ok_or_else(|| Error::parse("generators must be integers")))
        .collect::<Result<_>>()?;
    let declared = match v.get("value_field") {
        Some(f) => field_from_json(f)?,
        None => target.cloned().unwrap_or_else(NumberField::rationals),
    };
    let field = match target {
        None => declared,
        Some(t) if t.same(&declared) => t.clone(),
        Some(t) if declared.is_rational_field() => t.clone(),
        Some(_) => {
            return Err(Error::parse("character value field differs from the coefficient field"));
        }
    };
    let values: Vec<NfElem> = v
        .get("values")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("character needs \"values\""))?
        .iter()
        .map(|x| elem_from_json(&field, x))
        .collect::<Result<_>>()?;
    if modulus == 1 && gens.is_empty() {
        return DirichletCharacter::trivial(1, &field);
    }
    DirichletCharacter::from_generator_values(modulus, &field, &gens, &values)
        .map_err(|e| Error::parse(format!("invalid character: {e}")))
}

pub fn matrix_to_json(m: &RMatrix) -> Value {
    Value::Array(
        m.row_vecs()
            .iter()
            .map(|r| Value::Array(r.iter().map(rational_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<RMatrix> {
    let rows = v.as_array().ok_or_else(|| Error::parse("matrix must be an array of rows"))?;
    let rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::parse("matrix row must be an array"))?
                .iter()
                .map(rational_from_json)
                .collect()
        })
        .collect::<Result<_>>()?;
    RMatrix::from_rows(rows).map_err(|e| Error::parse(e.to_string()))
}

/// `{"genus", "bound", "field"?, "terms": [{"A": [[..]], "t": ..}]}`.
/// The field defaults to `Q`; genus-0 indices are `[]`.
pub fn expansion_to_json(f: &SiegelFourierExpansion) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(a, t)| {
            let rows: Vec<Value> = a
                .rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(rational_to_json).collect()))
                .collect();
            let tv = if f.field().is_rational_field() {
                rational_to_json(&t.as_rational().expect("rational field"))
            } else {
                elem_to_json(t)
            };
            json!({ "A": rows, "t": tv })
        })
        .collect();
    let mut m = Map::new();
    m.insert("genus".into(), json!(f.genus()));
    m.insert("bound".into(), json!(f.bound()));
    if !f.field().is_rational_field() {
        m.insert("field".into(), field_to_json(f.field()));
    }
    m.insert("terms".into(), Value::Array(terms));
    Value::Object(m)
}

pub fn expansion_from_json(v: &Value) -> Result<SiegelFourierExpansion> {
    let genus = v
        .get("genus")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("expansion needs \"genus\""))? as usize;
    let bound = v
        .get("bound")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::parse("expansion needs \"bound\""))?;
    let field = match v.get("field") {
        Some(f) => field_from_json(f)?,
        None => NumberField::rationals(),
    };
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("expansion needs \"terms\""))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for t in terms {
        let a = t.get("A").ok_or_else(|| Error::parse("term needs \"A\""))?;
        let rows: Vec<Vec<Rational>> = a
            .as_array()
            .ok_or_else(|| Error::parse("\"A\" must be an array of rows"))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::parse("index row must be an array"))?
                    .iter()
                    .map(rational_from_json)
                    .collect()
            })
            .collect::<Result<_>>()?;
        let idx = HalfIntegralMatrix::from_rows(&rows).map_err(|e| Error::parse(e.to_string()))?;
        let c = elem_from_json(&field, t.get("t").ok_or_else(|| Error::parse("term needs \"t\""))?)?;
        parsed.push((idx, c));
    }
    SiegelFourierExpansion::new(genus, bound, &field, parsed).map_err(|e| Error::parse(e.to_string()))
}
