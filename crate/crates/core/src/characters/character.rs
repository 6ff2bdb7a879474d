//! Dirichlet characters with values in an explicit number field.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::unit_group::UnitGroup;
use crate::algebra::{FieldAutomorphism, FieldEmbedding, NfElem, NumberField};
use crate::arith::{divisors, gcd, lcm};
use crate::error::{Error, Result};

/// Shared, cached unit group for a modulus.
pub fn unit_group(modulus: u64) -> Result<Arc<UnitGroup>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<UnitGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().unwrap().get(&modulus) {
        return Ok(g.clone());
    }
    let g = Arc::new(UnitGroup::new(modulus)?);
    cache.lock().unwrap().insert(modulus, g.clone());
    Ok(g)
}

/// A character of `(Z/NZ)^×`, stored by its values on the canonical
/// generators of [`UnitGroup`].
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    field: NumberField,
    values: Vec<NfElem>,
    /// `powers[i][e] = values[i]^e` for `e < orders[i]`.
    powers: Arc<Vec<Vec<NfElem>>>,
}

impl DirichletCharacter {
    /// From values on the canonical generators; each value must be a root of
    /// unity of order dividing the generator's order.
    pub fn from_canonical_values(modulus: u64, field: &NumberField, values: Vec<NfElem>) -> Result<Self> {
        let group = unit_group(modulus)?;
        if values.len() != group.generators().len() {
            return Err(Error::domain(format!(
                "expected {} generator values mod {modulus}, got {}",
                group.generators().len(),
                values.len()
            )));
        }
        let mut powers = Vec::with_capacity(values.len());
        for (v, &o) in values.iter().zip(group.orders()) {
            if !v.field().same(field) {
                return Err(Error::domain("character value outside the value field"));
            }
            let mut row = Vec::with_capacity(o as usize);
            let mut cur = field.one();
            for _ in 0..o {
                row.push(cur.clone());
                cur = &cur * v;
            }
            if !cur.is_one() {
                return Err(Error::domain(format!(
                    "value {v} is not a root of unity of order dividing {o}"
                )));
            }
            powers.push(row);
        }
        Ok(DirichletCharacter { group, field: field.clone(), values, powers: Arc::new(powers) })
    }

    pub fn trivial(modulus: u64, field: &NumberField) -> Result<Self> {
        let n = unit_group(modulus)?.generators().len();
        Self::from_canonical_values(modulus, field, vec![field.one(); n])
    }

    /// From values on arbitrary units generating `(Z/NZ)^×`. Consistency of
    /// the assignment is checked on the whole group.
    pub fn from_generator_values(
        modulus: u64,
        field: &NumberField,
        gens: &[i64],
        values: &[NfElem],
    ) -> Result<Self> {
        if gens.len() != values.len() {
            return Err(Error::domain("generator and value lists differ in length"));
        }
        let group = unit_group(modulus)?;
        let m = modulus as i64;
        let gs: Vec<u64> = gens.iter().map(|g| g.rem_euclid(m) as u64).collect();
        for (&g, &orig) in gs.iter().zip(gens) {
            if gcd(g, modulus) != 1 {
                return Err(Error::domain(format!("{orig} is not a unit mod {modulus}")));
            }
        }
        let table = assign_on_span(&group, field, &gs, values)?;
        if table.len() as u64 != group.order() {
            return Err(Error::domain(format!("{gens:?} do not generate (Z/{modulus}Z)^×")));
        }
        let canon = group
            .generators()
            .iter()
            .map(|g| table[g].clone())
            .collect();
        Self::from_canonical_values(modulus, field, canon)
    }

    /// From a function on units.
    pub fn from_unit_function(
        modulus: u64,
        field: &NumberField,
        f: impl Fn(u64) -> NfElem,
    ) -> Result<Self> {
        let group = unit_group(modulus)?;
        let vals = group.generators().iter().map(|&g| f(g)).collect();
        Self::from_canonical_values(modulus, field, vals)
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn group(&self) -> &UnitGroup {
        &self.group
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// Values on the canonical generators.
    pub fn values(&self) -> &[NfElem] {
        &self.values
    }

    /// `χ(n)`, zero when `gcd(n, N) > 1`.
    pub fn eval(&self, n: i64) -> NfElem {
        match self.group.dlog(n) {
            None => self.field.zero(),
            Some(e) => {
                let mut acc = self.field.one();
                for (row, &k) in self.powers.iter().zip(e) {
                    if k != 0 {
                        acc = &acc * &row[k as usize];
                    }
                }
                acc
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }

    /// Least `m` with `χ^m` trivial.
    pub fn order(&self) -> u64 {
        self.powers
            .iter()
            .zip(self.group.orders())
            .fold(1, |acc, (row, &o)| {
                let m = (1..=o).find(|&d| o % d == 0 && (d == o || row[d as usize].is_one())).unwrap();
                lcm(acc, m)
            })
    }

    pub fn is_quadratic(&self) -> bool {
        self.order() == 2
    }

    /// `χ(-1)`.
    pub fn parity(&self) -> NfElem {
        self.eval(-1)
    }

    /// Least `M | N` such that `χ` factors through `(Z/MZ)^×`.
    pub fn conductor(&self) -> u64 {
        let n = self.modulus();
        divisors(n)
            .into_iter()
            .find(|&m| self.trivial_on_kernel(m))
            .unwrap_or(n)
    }

    /// Whether `χ(u) = 1` for every unit `u ≡ 1 mod M`.
    fn trivial_on_kernel(&self, m: u64) -> bool {
        let n = self.modulus();
        let mut u = 1 % n;
        for _ in 0..n / m {
            if gcd(u, n) == 1 && !self.eval(u as i64).is_one() {
                return false;
            }
            u = (u + m) % n;
        }
        true
    }

    /// Whether `χ` is induced from a character mod `m` (`m | N`).
    pub fn factors_through(&self, m: u64) -> bool {
        self.modulus().is_multiple_of(m) && self.trivial_on_kernel(m)
    }

    /// The character mod `m` inducing `χ`; requires [`Self::factors_through`].
    pub fn restrict_to_modulus(&self, m: u64) -> Result<Self> {
        if !self.factors_through(m) {
            return Err(Error::domain(format!("character is not defined modulo {m}")));
        }
        let n = self.modulus();
        Self::from_unit_function(m, &self.field, |h| {
            // a unit mod n congruent to h mod m
            let mut u = h % m.max(1);
            while gcd(u, n) != 1 {
                u += m;
            }
            self.eval(u as i64)
        })
    }

    /// The primitive character inducing `χ`.
    pub fn primitive(&self) -> Self {
        self.restrict_to_modulus(self.conductor()).expect("conductor divides modulus")
    }

    /// The character mod `m` (a multiple of `N`) induced by `χ`.
    pub fn induce(&self, m: u64) -> Result<Self> {
        let n = self.modulus();
        if m == 0 || !m.is_multiple_of(n) {
            return Err(Error::domain(format!("{m} is not a multiple of {n}")));
        }
        Self::from_unit_function(m, &self.field, |u| self.eval((u % n) as i64))
    }

    /// Equality after primitivization.
    /// Equality after primitivization. Characters over different fields
    /// are compared through their values when those are rational.
    pub fn same_primitive(&self, other: &Self) -> bool {
        if self.field.same(&other.field) {
            return self.primitive() == other.primitive();
        }
        let (a, b) = (self.primitive(), other.primitive());
        a.modulus() == b.modulus()
            && a.group.units().all(|u| {
                let (x, y) = (a.eval(u as i64), b.eval(u as i64));
                x.as_rational().is_some_and(|r| Some(r) == y.as_rational())
            })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.modulus() != other.modulus() {
            return Err(Error::domain("characters have different moduli"));
        }
        if !self.field.same(&other.field) {
            return Err(Error::domain("characters have different value fields"));
        }
        Ok(())
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let vals = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Self::from_canonical_values(self.modulus(), &self.field, vals)
    }

    pub fn pow(&self, e: i64) -> Self {
        let vals = self
            .values
            .iter()
            .map(|v| v.powi(e).expect("roots of unity are invertible"))
            .collect();
        Self::from_canonical_values(self.modulus(), &self.field, vals).expect("powers of a character")
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// `γ ∘ χ` for an automorphism `γ` of the value field.
    pub fn apply_automorphism(&self, g: &FieldAutomorphism) -> Self {
        let vals = self.values.iter().map(|v| g.apply(v)).collect();
        Self::from_canonical_values(self.modulus(), &self.field, vals).expect("automorphisms preserve roots of unity")
    }

    /// Transports the values along a field embedding.
    pub fn embed(&self, e: &FieldEmbedding) -> Self {
        let vals = self.values.iter().map(|v| e.apply(v)).collect();
        Self::from_canonical_values(self.modulus(), e.target(), vals).expect("embeddings preserve roots of unity")
    }
}

/// Every character mod `modulus` with values in `field`, in a fixed order
/// (lexicographic in the generator values, each sorted canonically).
pub fn all_characters(modulus: u64, field: &NumberField) -> Result<Vec<DirichletCharacter>> {
    let group = unit_group(modulus)?;
    let mut choices: Vec<Vec<NfElem>> = Vec::new();
    for &o in group.orders() {
        choices.push(crate::algebra::roots_of_unity_dividing(field, o));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let vals = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        out.push(DirichletCharacter::from_canonical_values(modulus, field, vals)?);
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Value table on the subgroup generated by `gens`, checking consistency.
pub(crate) fn assign_on_span(
    group: &UnitGroup,
    field: &NumberField,
    gens: &[u64],
    values: &[NfElem],
) -> Result<HashMap<u64, NfElem>> {
    let m = group.modulus();
    let mut table: HashMap<u64, NfElem> = HashMap::new();
    table.insert(1 % m, field.one());
    let mut frontier = vec![1 % m];
    while let Some(x) = frontier.pop() {
        let vx = table[&x].clone();
        for (&g, v) in gens.iter().zip(values) {
            let y = crate::arith::mul_mod(x, g, m);
            let vy = &vx * v;
            match table.get(&y) {
                Some(old) if old != &vy => {
                    return Err(Error::domain(format!(
                        "inconsistent character values: two words for {y} mod {m} give {old} and {vy}"
                    )));
                }
                Some(_) => {}
                None => {
                    table.insert(y, vy);
                    frontier.push(y);
                }
            }
        }
    }
    Ok(table)
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.field.same(&other.field) && self.values == other.values
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ mod {}: ", self.modulus())?;
        for (i, (g, v)) in self.group.generators().iter().zip(&self.values).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g} -> {v}")?;
        }
        Ok(())
    }
}
