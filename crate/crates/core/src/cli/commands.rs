use std::path::Path;

use serde_json::{json, Value};

use super::examples::paper_examples;
use super::*;
use crate::algebra::factor::is_irreducible;
use crate::algebra::rational::parse_rational;
use crate::algebra::{
    complex_conjugation, factor_rational_polynomial, field_automorphisms, is_galois,
    roots_of_unity, FieldAutomorphism, NumberField, QPoly,
};
use crate::characters::{all_characters, twist_hypotheses, DirichletCharacter};
use crate::error::Result;
use crate::json::{
    character_from_json, character_to_json, elem_from_json, elem_to_json, expansion_from_json, expansion_to_json,
    field_from_json, matrix_from_json, poly_from_json, poly_to_json,
};
use crate::newforms::{hecke_consistency, load_eigensystem, ramanujan_check, EigenSystem};
use crate::siegel_fourier::{is_cusp_truncated, phi_operator};
use crate::symplectic::{in_congruence_subgroup, similitude_factor, CongruenceKind};
use crate::twists::{
    candidate_moduli, cocycle_check, determinant_relation_check, detect_inner_twists, fixed_field,
    fixed_field_membership, generate_synthetic_with, group_axioms_check, is_cm, uniqueness_check, SyntheticSpec,
    TwistGroup,
};
use crate::yoshida::{
    build_lift_with, compare_fields, constant_term_check, containment_check, factorization_check, lift_from_json,
    lift_to_json, lift_twist_group, swap_symmetric, LiftOptions, LiftTwistGroup, YoshidaLift,
};

pub(super) fn dispatch(cfg: &RunConfig) -> Result<Report> {
    match &cfg.command {
        Command::Algebra(AlgebraCmd::Factor(p)) => algebra_factor(&p.poly),
        Command::Algebra(AlgebraCmd::Field(p)) => algebra_field(&p.poly, cfg),
        Command::Char(CharCmd::Info { input }) => char_info(input),
        Command::Char(CharCmd::List { modulus, field }) => char_list(*modulus, field.as_deref()),
        Command::Char(CharCmd::Hypotheses { genus, weight, level }) => char_hypotheses(*genus, *weight, *level),
        Command::Gsp(GspCmd::Check { matrix, modulus, kind }) => gsp_check(matrix, *modulus, kind),
        Command::Siegel(SiegelCmd::Phi { input, out }) => siegel_phi(input, out.as_deref()),
        Command::Newform(NewformCmd::Check { input }) => newform_check(input, cfg),
        Command::Twists(TwistsCmd::Detect { input }) => twists_detect(input, cfg),
        Command::Twists(TwistsCmd::Synth { spec, out, seed }) => twists_synth(spec, out.as_deref(), *seed, cfg),
        Command::Yoshida(YoshidaCmd::Build { left, right, out }) => yoshida_build(left, right, out.as_deref(), cfg),
        Command::Yoshida(YoshidaCmd::Twists { input }) => yoshida_twists(input, cfg),
        Command::Yoshida(YoshidaCmd::Fields { input, reference }) => {
            yoshida_fields(input, reference.as_deref(), cfg)
        }
        Command::VerifyPaperExamples => verify_examples(cfg),
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    std::fs::write(path, s)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn read_system(path: &Path) -> Result<EigenSystem> {
    load_eigensystem(&read_json(path)?).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn read_lift(path: &Path) -> Result<YoshidaLift> {
    lift_from_json(&read_json(path)?)
}

/// Comma-separated ascending coefficients or a JSON array.
pub(super) fn parse_poly(s: &str) -> Result<QPoly> {
    let s = s.trim();
    if s.starts_with('[') {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("polynomial {s:?}: {e}")))?;
        return poly_from_json(&v);
    }
    let coeffs = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    let p = QPoly::new(coeffs);
    if p.is_zero() {
        return Err(Error::Domain("zero polynomial".into()));
    }
    Ok(p)
}

fn parse_field(s: &str) -> Result<NumberField> {
    NumberField::new(parse_poly(s)?)
}

fn algebra_factor(poly: &str) -> Result<Report> {
    let p = parse_poly(poly)?;
    let factors = factor_rational_polynomial(&p)?;
    let body = json!({
        "poly": poly_to_json(&p),
        "display": p.to_string(),
        "irreducible": is_irreducible(&p),
        "factors": factors.iter().map(|(f, e)| json!({
            "poly": poly_to_json(f),
            "display": f.to_string(),
            "multiplicity": e,
        })).collect::<Vec<_>>(),
    });
    let mut summary = vec![format!("{p}")];
    summary.extend(factors.iter().map(|(f, e)| format!("  ({f})^{e}")));
    Ok(Report::new("algebra factor", true, body, summary))
}

fn algebra_field(poly: &str, cfg: &RunConfig) -> Result<Report> {
    let k = parse_field(poly)?;
    let auts = field_automorphisms(&k);
    let (m, zeta) = roots_of_unity(&k);
    let conj = complex_conjugation(&k)?;
    // fail early on a precision the embedding code cannot honour
    crate::algebra::complex_embeddings(&k, cfg.precision)?;
    let body = json!({
        "poly": poly_to_json(k.poly()),
        "display": k.poly().to_string(),
        "degree": k.degree(),
        "galois": is_galois(&k),
        "automorphisms": auts.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "roots_of_unity": {"order": m, "generator": elem_to_json(&zeta)},
        "complex_conjugation": conj.as_ref().map(|g| g.to_string()),
    });
    let summary = vec![
        format!("field {} of degree {}", k.poly(), k.degree()),
        format!("automorphisms: {} (galois: {})", auts.len(), is_galois(&k)),
        format!("roots of unity: order {m}, generated by {zeta}"),
        format!(
            "complex conjugation: {}",
            conj.map(|g| g.to_string()).unwrap_or_else(|| "not an automorphism".into())
        ),
    ];
    Ok(Report::new("algebra field", true, body, summary))
}

fn character_summary(c: &DirichletCharacter) -> Value {
    json!({
        "modulus": c.modulus(),
        "conductor": c.conductor(),
        "order": c.order(),
        "parity": if c.parity().is_one() { "even" } else { "odd" },
        "character": character_to_json(c),
    })
}

fn char_info(input: &Path) -> Result<Report> {
    let c = character_from_json(&read_json(input)?, None)?;
    let body = character_summary(&c);
    let summary = vec![format!(
        "modulus {}, conductor {}, order {}, {}",
        c.modulus(),
        c.conductor(),
        c.order(),
        if c.parity().is_one() { "even" } else { "odd" }
    )];
    Ok(Report::new("char info", true, body, summary))
}

fn char_list(modulus: u64, field: Option<&str>) -> Result<Report> {
    let k = match field {
        Some(s) => parse_field(s)?,
        None => NumberField::rationals(),
    };
    let chars = all_characters(modulus, &k)?;
    let body = json!({
        "modulus": modulus,
        "field": poly_to_json(k.poly()),
        "count": chars.len(),
        "characters": chars.iter().map(character_summary).collect::<Vec<_>>(),
    });
    let values = if k.degree() == 1 { "Q".to_string() } else { format!("Q[x]/({})", k.poly()) };
    let mut summary = vec![format!("{} characters mod {modulus} with values in {values}", chars.len())];
    summary.extend(
        chars
            .iter()
            .enumerate()
            .map(|(i, c)| format!("  #{i}: conductor {}, order {}", c.conductor(), c.order())),
    );
    Ok(Report::new("char list", true, body, summary))
}

fn char_hypotheses(g: u64, k: u64, n: u64) -> Result<Report> {
    let r = twist_hypotheses(g, k, n)?;
    let summary = vec![
        format!("g={g} k={k} N={n}"),
        format!("  |g - k| odd: {}", r.parity_ok),
        format!(
            "  unit of order {}: {}{}",
            2 * g,
            r.order_element_ok,
            r.witness.map(|w| format!(" (witness {w})")).unwrap_or_default()
        ),
    ];
    Ok(Report::new("char hypotheses", true, serde_json::to_value(&r)?, summary))
}

fn gsp_check(path: &Path, modulus: Option<u64>, kind: &str) -> Result<Report> {
    let m = matrix_from_json(&read_json(path)?)?;
    let kind: CongruenceKind = kind.parse().map_err(|e: Error| Error::Parse(e.to_string()))?;
    let (mu, note) = match similitude_factor(&m) {
        Ok(mu) => (Some(mu), None),
        Err(Error::NotSimilitude(msg)) => (None, Some(msg)),
        Err(e) => return Err(e),
    };
    let symplectic = mu.as_ref().is_some_and(|x| x == &crate::algebra::rational::rat(1));
    let membership = match modulus {
        Some(n) if symplectic => Some(in_congruence_subgroup(&m, n, kind)?),
        Some(_) => Some(false),
        None => None,
    };
    let ok = mu.is_some() && membership.unwrap_or(true);
    let body = json!({
        "size": m.nrows(),
        "similitude": mu.as_ref().map(crate::json::rational_to_json),
        "symplectic": symplectic,
        "congruence": modulus.map(|n| json!({"modulus": n, "kind": kind, "member": membership})),
        "note": note,
    });
    let mut summary = vec![match &mu {
        Some(mu) => format!("similitude {}", crate::algebra::rational::format_rational(mu)),
        None => "not a similitude".to_string(),
    }];
    if let (Some(n), Some(b)) = (modulus, membership) {
        summary.push(format!("in {kind}({n}): {b}"));
    }
    Ok(Report::new("gsp check", ok, body, summary))
}

fn siegel_phi(input: &Path, out: Option<&Path>) -> Result<Report> {
    let f = expansion_from_json(&read_json(input)?)?;
    let phi = phi_operator(&f)?;
    let cusp = is_cusp_truncated(&f)?;
    let image = expansion_to_json(&phi);
    if let Some(p) = out {
        write_json(p, &image)?;
    }
    let body = json!({
        "genus": f.genus(),
        "terms": f.len(),
        "image_genus": phi.genus(),
        "image_terms": phi.len(),
        "cusp": cusp,
        "image": image,
    });
    let summary = vec![
        format!("genus {} expansion with {} terms", f.genus(), f.len()),
        format!("Φ has {} terms; cusp form (truncated): {cusp}", phi.len()),
    ];
    Ok(Report::new("siegel phi", true, body, summary))
}

fn newform_check(input: &Path, cfg: &RunConfig) -> Result<Report> {
    let e = read_system(input)?;
    let hecke = hecke_consistency(&e, None);
    let ram = ramanujan_check(&e, cfg.precision)?;
    let ok = hecke.hecke_ok && ram.ramanujan_ok;
    let notes: Vec<String> = hecke.notes.iter().chain(ram.notes.iter()).cloned().collect();
    let body = json!({
        "label": e.label,
        "level": e.level,
        "weight": e.weight,
        "field": poly_to_json(e.field.poly()),
        "prime_bound": e.prime_bound(),
        "nebentypus": {"conductor": e.nebentypus.conductor(), "order": e.nebentypus.order()},
        "hecke_ok": hecke.hecke_ok,
        "ramanujan_ok": ram.ramanujan_ok,
        "notes": notes,
    });
    let mut summary = vec![
        format!("{}: level {}, weight {}, field {}", e.label, e.level, e.weight, e.field.poly()),
        format!("  Hecke relations: {}", hecke.hecke_ok),
        format!("  Ramanujan bound: {}", ram.ramanujan_ok),
    ];
    summary.extend(notes.iter().map(|n| format!("  {n}")));
    Ok(Report::new("newform check", ok, body, summary))
}

fn twist_elements_json(t: &[crate::twists::InnerTwist]) -> Vec<Value> {
    t.iter()
        .map(|x| {
            json!({
                "automorphism": x.automorphism.to_string(),
                "image": elem_to_json(x.automorphism.image()),
                "conductor": x.character.conductor(),
                "order": x.character.order(),
                "character": character_to_json(&x.character),
                "verified_primes": x.verified_primes.len(),
            })
        })
        .collect()
}

fn inconclusive_json(t: &[crate::twists::Inconclusive]) -> Vec<Value> {
    t.iter()
        .map(|x| json!({"automorphism": x.automorphism.to_string(), "reason": x.reason}))
        .collect()
}

fn twist_lines(elements: &[crate::twists::InnerTwist]) -> Vec<String> {
    elements
        .iter()
        .map(|x| {
            format!(
                "  {}: conductor {}, order {}",
                x.automorphism,
                x.character.conductor(),
                x.character.order()
            )
        })
        .collect()
}

fn detect(e: &EigenSystem, cfg: &RunConfig) -> Result<(TwistGroup, Vec<u64>)> {
    let moduli = candidate_moduli(e.level, cfg.wide_moduli);
    Ok((detect_inner_twists(e, &moduli, cfg.prime_bound)?, moduli))
}

fn twists_detect(input: &Path, cfg: &RunConfig) -> Result<Report> {
    let e = read_system(input)?;
    let (t, moduli) = detect(&e, cfg)?;
    let fixed = fixed_field(&e, &t);
    let cm = is_cm(&e, cfg.prime_bound)?;
    let identities = json!({
        "group_axioms": group_axioms_check(&t),
        "cocycle": cocycle_check(&t),
        "determinant_relation": determinant_relation_check(&e, &t),
        "uniqueness": uniqueness_check(&e, &t, &moduli)?,
        "fixed_field_membership": fixed_field_membership(&e, &t, &fixed),
    });
    let ok = identities.as_object().unwrap().values().all(|v| v == &Value::Bool(true));
    let body = json!({
        "label": e.label,
        "level": e.level,
        "prime_bound": t.prime_bound,
        "order": t.order(),
        "elements": twist_elements_json(&t.elements),
        "inconclusive": inconclusive_json(&t.inconclusive),
        "fixed_field": {"poly": poly_to_json(fixed.field().poly()), "degree": fixed.degree()},
        "cm": cm.summary(),
        "identities": identities,
        "warnings": t.warnings,
    });
    let mut summary = vec![format!("{}: {} inner twists up to p <= {}", e.label, t.order(), t.prime_bound)];
    summary.extend(twist_lines(&t.elements));
    summary.extend(t.inconclusive.iter().map(|x| format!("  {}: inconclusive ({:?})", x.automorphism, x.reason)));
    summary.push(format!("fixed field {} (degree {})", fixed.field().poly(), fixed.degree()));
    summary.push(format!("CM: {}", cm.summary().status));
    summary.push(format!("identities hold: {ok}"));
    summary.extend(t.warnings.iter().map(|w| format!("warning: {w}")));
    Ok(Report::new("twists detect", ok, body, summary))
}

/// `{"field", "level", "weight", "seed"?, "prime_bound"?, "nebentypus"?,
/// "cm"?, "label"?, "twists": [{"image", "char"}]}`.
fn synthetic_spec(v: &Value, cfg: &RunConfig, seed: Option<u64>) -> Result<SyntheticSpec> {
    let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("spec lacks \"{k}\"")));
    let uint = |k: &str| get(k)?.as_u64().ok_or_else(|| Error::Parse(format!("\"{k}\" must be an integer")));
    let k = field_from_json(get("field")?)?;
    let mut twists = Vec::new();
    for t in get("twists")?.as_array().ok_or_else(|| Error::Parse("\"twists\" must be an array".into()))? {
        let image = elem_from_json(&k, t.get("image").ok_or_else(|| Error::Parse("twist lacks \"image\"".into()))?)?;
        let g = FieldAutomorphism::new(&k, image).map_err(|e| Error::Parse(e.to_string()))?;
        let c = character_from_json(t.get("char").ok_or_else(|| Error::Parse("twist lacks \"char\"".into()))?, None)?;
        twists.push((g, c));
    }
    let file_seed = v.get("seed").and_then(Value::as_u64);
    let bound = v.get("prime_bound").and_then(Value::as_u64).unwrap_or(cfg.prime_bound);
    let mut spec = SyntheticSpec::new(
        &k,
        twists,
        uint("level")?,
        uint("weight")?,
        bound,
        seed.or(cfg.env_seed).or(file_seed).unwrap_or(0),
    );
    spec.nebentypus = v.get("nebentypus").map(|c| character_from_json(c, None)).transpose()?;
    spec.cm = v.get("cm").map(|c| character_from_json(c, None)).transpose()?;
    spec.label = v.get("label").and_then(Value::as_str).map(str::to_string);
    Ok(spec)
}

fn twists_synth(path: &Path, out: Option<&Path>, seed: Option<u64>, cfg: &RunConfig) -> Result<Report> {
    let spec = synthetic_spec(&read_json(path)?, cfg, seed)?;
    let e = generate_synthetic_with(&spec)?;
    let doc = e.to_json();
    if let Some(p) = out {
        write_json(p, &doc)?;
    }
    let body = json!({
        "seed": spec.seed,
        "label": e.label,
        "prime_bound": e.prime_bound(),
        "system": doc,
    });
    let summary = vec![format!(
        "{}: level {}, {} primes up to {}, seed {}",
        e.label,
        e.level,
        e.ap.len(),
        e.prime_bound(),
        spec.seed
    )];
    Ok(Report::new("twists synth", true, body, summary))
}

fn lift_checks(y: &YoshidaLift) -> Result<Value> {
    Ok(json!({
        "factorization": factorization_check(y),
        "constant_term": constant_term_check(y),
        "swap_symmetric": swap_symmetric(&y.left, &y.right, y.prime_bound)?,
    }))
}

fn yoshida_build(left: &Path, right: &Path, out: Option<&Path>, cfg: &RunConfig) -> Result<Report> {
    let e1 = read_system(left)?;
    let e2 = read_system(right)?;
    let opts = LiftOptions { relaxed_weights: cfg.relaxed_weights, discrete_series_prime: cfg.assert_discrete_series };
    let y = build_lift_with(&e1, &e2, cfg.prime_bound, opts)?;
    let doc = lift_to_json(&y);
    if let Some(p) = out {
        write_json(p, &doc)?;
    }
    let checks = lift_checks(&y)?;
    let ok = checks.as_object().unwrap().values().all(|v| v == &Value::Bool(true));
    let body = json!({
        "left": e1.label,
        "right": e2.label,
        "compositum": poly_to_json(y.field().poly()),
        "primes": y.spin_polys.len(),
        "conditions": y.conditions,
        "checks": checks,
        "warnings": y.warnings,
    });
    let mut summary = vec![
        format!("lift of {} and {} over {}", e1.label, e2.label, y.field().poly()),
        format!("  spin polynomials at {} primes", y.spin_polys.len()),
        format!("  checks hold: {ok}"),
    ];
    summary.extend(y.warnings.iter().map(|w| format!("warning: {w}")));
    Ok(Report::new("yoshida build", ok, body, summary))
}

fn lift_group(y: &YoshidaLift, cfg: &RunConfig) -> Result<LiftTwistGroup> {
    let moduli = cfg.wide_moduli.then(|| candidate_moduli(y.level(), true));
    lift_twist_group(y, moduli.as_deref(), cfg.prime_bound.min(y.prime_bound))
}

fn yoshida_twists(input: &Path, cfg: &RunConfig) -> Result<Report> {
    let y = read_lift(input)?;
    let bound = cfg.prime_bound.min(y.prime_bound);
    let sub = RunConfig { prime_bound: bound, ..cfg.clone() };
    let (g1, _) = detect(&y.left, &sub)?;
    let (g2, _) = detect(&y.right, &sub)?;
    let gy = lift_group(&y, cfg)?;
    let containment = containment_check(&y, &g1, &g2, &gy);
    let conj = complex_conjugation(y.field())?;
    let extra: Vec<String> = gy
        .automorphisms()
        .into_iter()
        .filter(|g| !g.is_identity() && Some(g) != conj.as_ref())
        .map(|g| g.to_string())
        .collect();
    let body = json!({
        "prime_bound": bound,
        "left": {"label": y.left.label, "order": g1.order(), "elements": twist_elements_json(&g1.elements)},
        "right": {"label": y.right.label, "order": g2.order(), "elements": twist_elements_json(&g2.elements)},
        "lift": {
            "elements": twist_elements_json(&gy.elements),
            "inconclusive": inconclusive_json(&gy.inconclusive),
            "warnings": gy.warnings,
        },
        "containment": containment,
        "extra_automorphisms": extra,
    });
    let mut summary = vec![format!(
        "factor twist groups: {} has {}, {} has {}",
        y.left.label,
        g1.order(),
        y.right.label,
        g2.order()
    )];
    summary.push(format!("lift twists ({} pairs):", gy.elements.len()));
    summary.extend(twist_lines(&gy.elements));
    summary.push(format!(
        "common twists of the factors: {}, all twists of the lift: {}",
        containment.common, containment.contained
    ));
    summary.push(format!("automorphisms other than 1 and complex conjugation: {}", extra.len()));
    Ok(Report::new("yoshida twists", containment.contained, body, summary))
}

fn yoshida_fields(input: &Path, reference: Option<&str>, cfg: &RunConfig) -> Result<Report> {
    let y = read_lift(input)?;
    let r = reference.map(parse_field).transpose()?;
    let bound = cfg.prime_bound.min(y.prime_bound);
    let c = compare_fields(&y, bound, r.as_ref());
    let mut summary = vec![
        format!("compositum {} (degree {})", c.compositum, c.compositum_degree),
        format!("trace field {} (degree {})", c.trace_field, c.trace_degree),
        format!("full Hecke field {} (degree {})", c.full_field, c.full_degree),
        format!("trace field strictly smaller: {}", c.strict_inclusion),
    ];
    if let Some(rc) = &c.reference_comparison {
        summary.push(format!(
            "reference {}: embeds {}, contains trace field {}, contains full field {}",
            rc.field, rc.embeds, rc.trace_contained, rc.full_contained
        ));
    }
    let ok = c.chain_ok;
    Ok(Report::new("yoshida fields", ok, serde_json::to_value(&c)?, summary))
}

fn verify_examples(cfg: &RunConfig) -> Result<Report> {
    let r = paper_examples(cfg.prime_bound, cfg.precision)?;
    let ok = r.passed();
    let summary = r.summary_lines();
    Ok(Report::new("verify-paper-examples", ok, serde_json::to_value(&r)?, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_arguments() {
        assert_eq!(parse_poly("1,0,1").unwrap(), parse_poly("[1, 0, \"1/1\"]").unwrap());
        assert!(parse_poly("0,0").is_err());
        assert!(parse_poly("1,x").is_err());
    }
}
