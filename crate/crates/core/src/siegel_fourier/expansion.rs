//! Truncated expansions `F(τ) = Σ t(A) exp(πi·tr(Aτ))` and the Φ operator.
//!
//! Indices are `g x g` half-integral matrices for a genus-`g` form, the
//! size that makes `tr(Aτ)` well defined for `τ ∈ H_g`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::index::HalfIntegralMatrix;
use crate::algebra::{complex_embeddings, NfElem, NumberField};
use crate::error::{Error, Result};
use crate::symplectic::SiegelPoint;

/// Precision used when coefficients are embedded into `C`.
const EMBEDDING_BITS: u32 = 128;

#[derive(Clone, Debug)]
pub struct SiegelFourierExpansion {
    genus: usize,
    bound: u64,
    field: NumberField,
    terms: BTreeMap<HalfIntegralMatrix, NfElem>,
}

impl PartialEq for SiegelFourierExpansion {
    fn eq(&self, o: &Self) -> bool {
        self.genus == o.genus && self.bound == o.bound && self.field.same(&o.field) && self.terms == o.terms
    }
}

impl SiegelFourierExpansion {
    pub fn zero(genus: usize, bound: u64, field: &NumberField) -> Self {
        SiegelFourierExpansion { genus, bound, field: field.clone(), terms: BTreeMap::new() }
    }

    /// Zero coefficients are dropped; repeated indices are rejected.
    pub fn new(
        genus: usize,
        bound: u64,
        field: &NumberField,
        terms: impl IntoIterator<Item = (HalfIntegralMatrix, NfElem)>,
    ) -> Result<Self> {
        let mut out = Self::zero(genus, bound, field);
        for (a, t) in terms {
            if a.genus() != genus {
                return Err(Error::domain(format!("index {a} has genus {} not {genus}", a.genus())));
            }
            if a.trace() < 0 || a.trace() as u64 > bound {
                return Err(Error::domain(format!("index {a} exceeds the truncation bound {bound}")));
            }
            if !a.is_positive_semidefinite() {
                return Err(Error::domain(format!("index {a} is not positive semidefinite")));
            }
            if !t.field().same(field) {
                return Err(Error::domain("coefficient lies in a different field"));
            }
            if out.terms.contains_key(&a) {
                return Err(Error::domain(format!("index {a} given twice")));
            }
            if !t.is_zero() {
                out.terms.insert(a, t);
            }
        }
        Ok(out)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HalfIntegralMatrix, &NfElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, a: &HalfIntegralMatrix) -> NfElem {
        self.terms.get(a).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `t(0)`; the whole function when the genus is 0.
    pub fn constant_term(&self) -> NfElem {
        self.coefficient(&HalfIntegralMatrix::zero(self.genus))
    }

    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.genus != o.genus || !self.field.same(&o.field) {
            return Err(Error::domain("expansions differ in genus or coefficient field"));
        }
        Ok(())
    }

    /// `aF + bG`, truncated at the smaller bound.
    pub fn linear_combination(&self, a: &NfElem, o: &Self, b: &NfElem) -> Result<Self> {
        self.check_compatible(o)?;
        let bound = self.bound.min(o.bound);
        let mut terms: BTreeMap<HalfIntegralMatrix, NfElem> = BTreeMap::new();
        for (k, v) in &self.terms {
            if k.trace() as u64 <= bound {
                terms.insert(k.clone(), a * v);
            }
        }
        for (k, v) in &o.terms {
            if k.trace() as u64 <= bound {
                let e = terms.entry(k.clone()).or_insert_with(|| self.field.zero());
                *e = &*e + &(b * v);
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Ok(SiegelFourierExpansion { genus: self.genus, bound, field: self.field.clone(), terms })
    }

    /// Coefficients under the complex embedding with the given index.
    pub fn complex_coefficients(&self, embedding: usize) -> Result<Vec<(HalfIntegralMatrix, Complex64)>> {
        let emb = complex_embeddings(&self.field, EMBEDDING_BITS)?;
        if embedding >= self.field.degree() {
            return Err(Error::domain(format!("no complex embedding with index {embedding}")));
        }
        Ok(self
            .terms
            .iter()
            .map(|(a, t)| (a.clone(), emb.evaluate(t)[embedding]))
            .collect())
    }

    /// `F(τ)` under the first complex embedding of the coefficient field.
    pub fn evaluate(&self, tau: &SiegelPoint) -> Result<Complex64> {
        self.evaluate_at_embedding(tau, 0)
    }

    pub fn evaluate_at_embedding(&self, tau: &SiegelPoint, embedding: usize) -> Result<Complex64> {
        if tau.genus() != self.genus {
            return Err(Error::domain(format!(
                "point of genus {} for an expansion of genus {}",
                tau.genus(),
                self.genus
            )));
        }
        let coeffs = self.complex_coefficients(embedding)?;
        Ok(coeffs.iter().map(|(a, c)| c * exp_term(a, tau)).sum())
    }
}

/// `tr(Aτ) = Σ a_ii τ_ii + Σ_{i<j} 2a_ij τ_ij`.
pub fn trace_pairing(a: &HalfIntegralMatrix, tau: &SiegelPoint) -> Complex64 {
    let g = a.genus();
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..g {
        s += tau.get(i, i) * (a.twice(i, i) / 2) as f64;
        for j in i + 1..g {
            s += tau.get(i, j) * a.twice(i, j) as f64;
        }
    }
    s
}

/// `exp(πi·tr(Aτ))`.
pub fn exp_term(a: &HalfIntegralMatrix, tau: &SiegelPoint) -> Complex64 {
    (Complex64::new(0.0, std::f64::consts::PI) * trace_pairing(a, tau)).exp()
}

/// `(ΦF)(τ') = t(A' ⊕ 0)` summed over `A'`.
pub fn phi_operator(f: &SiegelFourierExpansion) -> Result<SiegelFourierExpansion> {
    if f.genus == 0 {
        return Err(Error::domain("Φ is undefined in genus 0"));
    }
    let terms = f
        .terms
        .iter()
        .filter(|(a, _)| a.last_row_col_zero())
        .map(|(a, t)| (a.drop_last(), t.clone()))
        .collect();
    Ok(SiegelFourierExpansion { genus: f.genus - 1, bound: f.bound, field: f.field.clone(), terms })
}

pub fn is_cusp_truncated(f: &SiegelFourierExpansion) -> Result<bool> {
    Ok(phi_operator(f)?.is_zero())
}

/// `diag(τ', it)`, with `τ' = None` meaning genus 1.
pub fn limit_point(tau_prime: Option<&SiegelPoint>, t: f64) -> Result<SiegelPoint> {
    let h = tau_prime.map_or(0, |p| p.genus());
    let g = h + 1;
    let m = nalgebra::DMatrix::from_fn(g, g, |i, j| {
        if i < h && j < h {
            tau_prime.expect("h > 0").get(i, j)
        } else if i == h && j == h {
            Complex64::new(0.0, t)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    SiegelPoint::new(m)
}

/// `|F(diag(τ', it)) - (ΦF)(τ')|`, summed from the terms Φ discards.
///
/// The terms Φ keeps take the same value on both sides, so the difference
/// is exactly the sum of the discarded terms. Summing them directly keeps
/// the result meaningful far below `f64` resolution of `F` itself.
pub fn phi_limit_residual(
    f: &SiegelFourierExpansion,
    tau_prime: Option<&SiegelPoint>,
    t: f64,
    embedding: usize,
) -> Result<f64> {
    if tau_prime.map_or(0, |p| p.genus()) + 1 != f.genus {
        return Err(Error::domain("τ' must have genus one less than the expansion"));
    }
    let point = limit_point(tau_prime, t)?;
    let coeffs = f.complex_coefficients(embedding)?;
    let s: Complex64 = coeffs
        .iter()
        .filter(|(a, _)| !a.last_row_col_zero())
        .map(|(a, c)| c * exp_term(a, &point))
        .sum();
    Ok(s.norm())
}

/// The same gap computed as a plain difference of two evaluations.
pub fn phi_limit_gap_direct(
    f: &SiegelFourierExpansion,
    tau_prime: Option<&SiegelPoint>,
    t: f64,
    embedding: usize,
) -> Result<f64> {
    let point = limit_point(tau_prime, t)?;
    let lhs = f.evaluate_at_embedding(&point, embedding)?;
    let phi = phi_operator(f)?;
    let rhs = match tau_prime {
        Some(p) => phi.evaluate_at_embedding(p, embedding)?,
        None => {
            let emb = complex_embeddings(f.field(), EMBEDDING_BITS)?;
            emb.evaluate(&phi.constant_term())[embedding]
        }
    };
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::siegel_fourier::index::psd_indices;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    #[test]
    fn genus_one_single_term() {
        let k = q();
        let f = SiegelFourierExpansion::new(1, 1, &k, [(HalfIntegralMatrix::from_i64_diag(&[1]), k.one())])
            .unwrap();
        let tau = SiegelPoint::scalar_imaginary(1, 1.0).unwrap();
        let v = f.evaluate(&tau).unwrap();
        assert!((v.re - (-std::f64::consts::PI).exp()).abs() < 1e-15 && v.im.abs() < 1e-15);
        assert!((v.re - 0.0432139).abs() < 1e-7);
    }

    #[test]
    fn phi_rules() {
        let k = q();
        let f = SiegelFourierExpansion::new(2, 2, &k, [(HalfIntegralMatrix::from_i64_diag(&[1, 0]), k.from_int(5))])
            .unwrap();
        let p = phi_operator(&f).unwrap();
        assert_eq!(p.genus(), 1);
        assert_eq!(p.coefficient(&HalfIntegralMatrix::from_i64_diag(&[1])), k.from_int(5));
        assert!(!is_cusp_truncated(&f).unwrap());

        let pd = SiegelFourierExpansion::new(
            2,
            6,
            &k,
            psd_indices(2, 6).into_iter().filter(|a| a.is_positive_definite()).map(|a| (a, k.one())),
        )
        .unwrap();
        assert!(is_cusp_truncated(&pd).unwrap());

        let g1 = SiegelFourierExpansion::new(1, 3, &k, [(HalfIntegralMatrix::zero(1), k.from_int(7))]).unwrap();
        let c = phi_operator(&g1).unwrap();
        assert_eq!(c.genus(), 0);
        assert_eq!(c.constant_term(), k.from_int(7));
        assert!(phi_operator(&c).is_err());
    }

    #[test]
    fn residual_matches_direct_difference() {
        let k = q();
        let terms = psd_indices(2, 3).into_iter().enumerate().map(|(i, a)| (a, k.from_int(i as i64 + 1)));
        let f = SiegelFourierExpansion::new(2, 3, &k, terms).unwrap();
        let z = SiegelPoint::from_rows(&[vec![Complex64::new(0.3, 0.8)]]).unwrap();
        for t in [0.5, 1.0, 2.0] {
            let a = phi_limit_residual(&f, Some(&z), t, 0).unwrap();
            let b = phi_limit_gap_direct(&f, Some(&z), t, 0).unwrap();
            assert!((a - b).abs() < 1e-12 * (1.0 + a));
        }
    }
}
