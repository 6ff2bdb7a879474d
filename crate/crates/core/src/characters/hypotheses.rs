//! Checkable hypotheses on genus, weight and level for extra twists of
//! Siegel eigenforms: `|g - k|` odd, and an element of order `2g` in
//! `(Z/NZ)^×`.

use serde::Serialize;

use super::character::{unit_group, DirichletCharacter};
use crate::arith::{gcd, pow_mod};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub genus: u64,
    pub weight: u64,
    pub level: u64,
    pub parity_ok: bool,
    pub order_element_ok: bool,
    /// Least unit of order `2g`, preferring one with `a^g ≡ -1`.
    pub witness: Option<u64>,
    /// Whether the witness satisfies `a^g ≡ -1 (mod N)`.
    pub witness_is_minus_one_power: bool,
}

impl HypothesisReport {
    pub fn all_ok(&self) -> bool {
        self.parity_ok && self.order_element_ok
    }
}

/// Parity of `g - k` and the existence of a unit of order `2g` mod `N`, with
/// a witness.
pub fn twist_hypotheses(g: u64, k: u64, n: u64) -> Result<HypothesisReport> {
    if g == 0 || k == 0 || n == 0 {
        return Err(Error::domain("genus, weight and level must be positive"));
    }
    let group = unit_group(n)?;
    let parity_ok = g.abs_diff(k) % 2 == 1;
    // an abelian group has an element of order m iff m divides its exponent
    let order_element_ok = group.exponent() % (2 * g) == 0;
    let mut witness = None;
    let mut strong = false;
    if order_element_ok {
        let minus_one = (n - 1) % n;
        let of_order: Vec<u64> = group
            .units()
            .filter(|&a| group.element_order(a as i64) == Some(2 * g))
            .collect();
        if let Some(&a) = of_order.iter().find(|&&a| pow_mod(a, g, n) == minus_one) {
            witness = Some(a);
            strong = true;
        } else {
            witness = of_order.first().copied();
        }
    }
    Ok(HypothesisReport {
        genus: g,
        weight: k,
        level: n,
        parity_ok,
        order_element_ok,
        witness,
        witness_is_minus_one_power: strong,
    })
}

/// Least unit `a` of order `2g` with `a^g ≡ -1 (mod N)` and
/// `ψ(a) = (-1)^(k-g+1)`.
pub fn find_sigma(n: u64, g: u64, k: u64, psi: &DirichletCharacter) -> Result<Option<u64>> {
    if psi.modulus() != n {
        return Err(Error::domain(format!(
            "character modulus {} differs from N = {n}",
            psi.modulus()
        )));
    }
    if g == 0 {
        return Err(Error::domain("genus must be positive"));
    }
    let group = unit_group(n)?;
    let minus_one = (n - 1) % n;
    let sign = if (k as i64 - g as i64 + 1).rem_euclid(2) == 0 { 1 } else { -1 };
    let target = psi.field().from_int(sign);
    let found = group.units().find(|&a| {
        gcd(a, n) == 1
            && group.element_order(a as i64) == Some(2 * g)
            && pow_mod(a, g, n) == minus_one
            && psi.eval(a as i64) == target
    });
    Ok(found)
}
