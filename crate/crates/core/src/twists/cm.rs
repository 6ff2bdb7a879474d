//! Complex multiplication: a nontrivial self-twist `ρ ≅ ρ ⊗ ε`, visible as
//! `a_p = 0` whenever `ε(p) = -1`.

use serde::Serialize;

use crate::algebra::NumberField;
use crate::arith::divisors;
use crate::characters::{all_characters, DirichletCharacter};
use crate::error::{Error, Result};
use crate::newforms::EigenSystem;

/// Primes with `ε(p) = -1` needed before a vanishing pattern counts.
pub const MIN_CM_EVIDENCE: usize = 3;

#[derive(Clone, Debug)]
pub enum CmStatus {
    Cm(DirichletCharacter),
    NotCm,
    /// Some character fits, but on fewer than [`MIN_CM_EVIDENCE`] primes.
    Inconclusive(Vec<DirichletCharacter>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmSummary {
    pub status: String,
    pub conductor: Option<u64>,
}

impl CmStatus {
    pub fn character(&self) -> Option<&DirichletCharacter> {
        match self {
            CmStatus::Cm(c) => Some(c),
            _ => None,
        }
    }

    pub fn summary(&self) -> CmSummary {
        match self {
            CmStatus::Cm(c) => CmSummary { status: "cm".into(), conductor: Some(c.modulus()) },
            CmStatus::NotCm => CmSummary { status: "none".into(), conductor: None },
            CmStatus::Inconclusive(_) => CmSummary { status: "inconclusive".into(), conductor: None },
        }
    }
}

/// Primitive nontrivial quadratic characters of conductor dividing `n`,
/// ordered by conductor.
pub fn quadratic_characters(n: u64) -> Result<Vec<DirichletCharacter>> {
    let q = NumberField::rationals();
    let mut out: Vec<DirichletCharacter> = Vec::new();
    for m in divisors(n) {
        for c in all_characters(m, &q)? {
            if c.is_quadratic() && c.conductor() == m {
                out.push(c);
            }
        }
    }
    Ok(out)
}

pub fn is_cm(e: &EigenSystem, bound: u64) -> Result<CmStatus> {
    if !e.covers(bound) {
        return Err(Error::domain(format!("bound {bound} exceeds the available data")));
    }
    let primes = e.good_primes(bound);
    let mut weak = Vec::new();
    let minus_one = NumberField::rationals().from_int(-1);
    for c in quadratic_characters(e.level)? {
        let inert: Vec<u64> = primes.iter().copied().filter(|&p| c.eval(p as i64) == minus_one).collect();
        if inert.iter().all(|p| e.ap[p].is_zero()) {
            if inert.len() >= MIN_CM_EVIDENCE {
                return Ok(CmStatus::Cm(c));
            }
            weak.push(c);
        }
    }
    Ok(if weak.is_empty() { CmStatus::NotCm } else { CmStatus::Inconclusive(weak) })
}
