//! Enumeration of maps `γ ↦ χ_γ` on `Aut(K)` satisfying the cocycle
//! identity, used to prescribe twist groups of synthetic systems.

use crate::algebra::{complex_conjugation, field_automorphisms, FieldAutomorphism, NfElem, NumberField};
use crate::arith::gcd;
use crate::characters::{all_characters, DirichletCharacter};
use crate::error::{Error, Result};

pub type Cocycle = Vec<(FieldAutomorphism, DirichletCharacter)>;

/// Subgroup generated by `gens`, identity included.
fn closure(gens: &[FieldAutomorphism], k: &NumberField) -> Vec<FieldAutomorphism> {
    let mut out = vec![FieldAutomorphism::identity(k)];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let h = out[i].compose(g);
            if !out.contains(&h) {
                out.push(h);
            }
        }
        i += 1;
    }
    out
}

/// Greedy generating set, in canonical order of the group.
fn generators(auts: &[FieldAutomorphism], k: &NumberField) -> Vec<FieldAutomorphism> {
    let mut gens: Vec<FieldAutomorphism> = Vec::new();
    for g in auts {
        if !closure(&gens, k).contains(g) {
            gens.push(g.clone());
        }
    }
    gens
}

/// Extends values on generators using `χ_{γs} = χ_γ·γ(χ_s)`; `None` when
/// the extension is inconsistent.
fn extend(
    k: &NumberField,
    n: u64,
    gens: &[FieldAutomorphism],
    on_gens: &[&DirichletCharacter],
    group_order: usize,
) -> Result<Option<Cocycle>> {
    let mut table: Cocycle = vec![(FieldAutomorphism::identity(k), DirichletCharacter::trivial(n, k)?)];
    let mut i = 0;
    while i < table.len() {
        let (x, cx) = table[i].clone();
        for (s, cs) in gens.iter().zip(on_gens) {
            let y = x.compose(s);
            let cy = cx.mul(&cs.apply_automorphism(&x))?;
            match table.iter().find(|(h, _)| h == &y) {
                Some((_, old)) if old != &cy => return Ok(None),
                Some(_) => {}
                None => table.push((y, cy)),
            }
        }
        i += 1;
    }
    debug_assert_eq!(table.len(), group_order);
    for (x, cx) in &table {
        for (y, cy) in &table {
            let xy = x.compose(y);
            let cxy = &table.iter().find(|(h, _)| h == &xy).expect("closed").1;
            if cxy != &cx.mul(&cy.apply_automorphism(x))? {
                return Ok(None);
            }
        }
    }
    table.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Some(table))
}

/// Every cocycle on all of `Aut(K)` with characters mod `n` valued in `K`,
/// in a fixed order.
pub fn cocycles(k: &NumberField, n: u64) -> Result<Vec<Cocycle>> {
    let auts = field_automorphisms(k);
    let gens = generators(&auts, k);
    let chars = all_characters(n, k)?;
    let mut out = Vec::new();
    let mut idx = vec![0usize; gens.len()];
    loop {
        let pick: Vec<&DirichletCharacter> = idx.iter().map(|&i| &chars[i]).collect();
        if let Some(c) = extend(k, n, &gens, &pick, auts.len())? {
            out.push(c);
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(out);
            }
            idx[j] += 1;
            if idx[j] < chars.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Cocycles compatible with a newform of nebentypus `eps` whose
/// coefficient field is all of `K`: only the identity carries the trivial
/// character, the determinant relation `χ_γ²ε = γ(ε)` holds, and
/// `γ(a_p) = χ_γ(p)a_p` at the given good primes.
pub fn admissible_cocycles(eps: &DirichletCharacter, n: u64, known: &[(u64, NfElem)]) -> Result<Vec<Cocycle>> {
    let k = eps.field().clone();
    if !n.is_multiple_of(eps.modulus()) {
        return Err(Error::domain("nebentypus modulus must divide the level"));
    }
    let eps = eps.induce(n)?;
    let mut out = Vec::new();
    for c in cocycles(&k, n)? {
        let det_ok = c.iter().all(|(g, x)| {
            x.mul(x).and_then(|y| y.mul(&eps)).is_ok_and(|y| y == eps.apply_automorphism(g))
        });
        let known_ok = known.iter().filter(|(p, _)| gcd(*p, n) == 1).all(|(p, a)| {
            c.iter().all(|(g, x)| g.apply(a) == &x.eval(*p as i64) * a)
        });
        let faithful = c.iter().all(|(g, x)| g.is_identity() || !x.is_trivial());
        if faithful && det_ok && known_ok {
            out.push(c);
        }
    }
    Ok(out)
}

/// Whether complex conjugation carries `ε^{-1}`, as it does for a newform
/// of nebentypus `ε`. `None` when conjugation is not an automorphism.
pub fn conjugation_matches(c: &Cocycle, eps: &DirichletCharacter) -> Result<Option<bool>> {
    let Some(conj) = complex_conjugation(eps.field())? else { return Ok(None) };
    Ok(c.iter()
        .find(|(g, _)| g == &conj)
        .map(|(_, x)| x.same_primitive(&eps.inverse())))
}
