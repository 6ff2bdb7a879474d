//! The four conditions on a pair `(f, g)` under which a Yoshida lift exists.

use serde::Serialize;

use crate::algebra::compositum::Compositum;
use crate::arith::is_prime;
use crate::newforms::EigenSystem;

use super::lift::ordered_compositum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiscreteSeriesStatus {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCondition {
    /// One weight is 2, the other even and greater than 2.
    pub strict_ok: bool,
    /// Both weights even and at least 2.
    pub relaxed_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscreteSeries {
    pub status: DiscreteSeriesStatus,
    pub witness: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub not_scalar_multiple: bool,
    pub same_primitive_character: bool,
    pub weight_condition: WeightCondition,
    pub discrete_series_at_prime: DiscreteSeries,
    pub notes: Vec<String>,
}

impl ConditionReport {
    /// Conditions needed to build a lift: distinct forms are not required,
    /// and the relaxed weight rule suffices.
    pub fn buildable(&self) -> bool {
        self.same_primitive_character && self.weight_condition.relaxed_ok
    }

    /// All four conditions, strict weights, discrete series asserted.
    pub fn all_strict(&self) -> bool {
        self.not_scalar_multiple
            && self.same_primitive_character
            && self.weight_condition.strict_ok
            && self.discrete_series_at_prime.status == DiscreteSeriesStatus::Yes
    }
}

/// Whether the normalized eigenvalue sequences agree on every shared prime.
/// With `a_1 = b_1 = 1` the only admissible scalar is 1.
fn scalar_multiple(e1: &EigenSystem, e2: &EigenSystem, c: &Compositum) -> bool {
    e1.level == e2.level
        && e1.weight == e2.weight
        && e1
            .ap
            .iter()
            .filter_map(|(p, a)| e2.ap.get(p).map(|b| (a, b)))
            .all(|(a, b)| c.left.apply(a) == c.right.apply(b))
}

pub fn check_conditions(e1: &EigenSystem, e2: &EigenSystem) -> ConditionReport {
    check_conditions_asserting(e1, e2, None)
}

/// Like [`check_conditions`], with condition (4) asserted by the caller:
/// `Some(p)` claims both local components at `p` are discrete series.
pub fn check_conditions_asserting(
    e1: &EigenSystem,
    e2: &EigenSystem,
    discrete_series_prime: Option<u64>,
) -> ConditionReport {
    let comp = ordered_compositum(e1, e2);
    let mut notes = Vec::new();

    let not_scalar_multiple = !scalar_multiple(e1, e2, &comp);
    if !not_scalar_multiple {
        notes.push("the two eigenvalue sequences agree on every shared prime".to_string());
    }

    let c1 = e1.nebentypus.embed(&comp.left).primitive();
    let c2 = e2.nebentypus.embed(&comp.right).primitive();
    let same_primitive_character = c1.same_primitive(&c2);
    if !same_primitive_character {
        notes.push(format!(
            "nebentypus characters differ: conductors {} and {}",
            c1.modulus(),
            c2.modulus()
        ));
    }

    let (k1, k2) = (e1.weight, e2.weight);
    let even_ge2 = |k: u64| k >= 2 && k.is_multiple_of(2);
    let strict_ok = (k1 == 2 && even_ge2(k2) && k2 > 2) || (k2 == 2 && even_ge2(k1) && k1 > 2);
    let relaxed_ok = even_ge2(k1) && even_ge2(k2);
    if !strict_ok {
        notes.push(format!("weights ({k1}, {k2}): need one weight 2 and the other even and > 2"));
    }
    if !relaxed_ok {
        notes.push(format!("weights ({k1}, {k2}) are not both even and >= 2"));
    }

    let discrete = match discrete_series_prime {
        Some(p) if !is_prime(p) => {
            notes.push(format!("asserted discrete-series witness {p} is not prime"));
            DiscreteSeries { status: DiscreteSeriesStatus::No, witness: Some(p) }
        }
        Some(p) if !e1.level.is_multiple_of(p) || !e2.level.is_multiple_of(p) => {
            notes.push(format!(
                "asserted witness {p} does not divide both levels; unramified components are principal series"
            ));
            DiscreteSeries { status: DiscreteSeriesStatus::No, witness: Some(p) }
        }
        Some(p) => DiscreteSeries { status: DiscreteSeriesStatus::Yes, witness: Some(p) },
        None => {
            notes.push("discrete series at a common prime is not determined by eigenvalues at good primes".into());
            DiscreteSeries { status: DiscreteSeriesStatus::Unknown, witness: None }
        }
    };

    ConditionReport {
        not_scalar_multiple,
        same_primitive_character,
        weight_condition: WeightCondition { strict_ok, relaxed_ok },
        discrete_series_at_prime: discrete,
        notes,
    }
}
