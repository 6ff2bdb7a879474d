//! The Siegel upper half space `H_g` and the action of `Sp_2g(R)` on it.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::gsp::similitude_factor;
use super::matrix::RMatrix;
use crate::error::{Error, Result};

/// Tolerance for the smallest eigenvalue of `Im τ`.
pub const PD_TOLERANCE: f64 = 1e-10;
/// Tolerance for `|τ - τᵀ|` relative to `max(1, |τ|)`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// A point `τ = X + iY` of `H_g`: symmetric with `Y` positive definite.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoint {
    tau: DMatrix<Complex64>,
}

impl SiegelPoint {
    pub fn new(tau: DMatrix<Complex64>) -> Result<Self> {
        if tau.nrows() != tau.ncols() || tau.nrows() == 0 {
            return Err(Error::domain("τ must be a nonempty square matrix"));
        }
        let asym = symmetry_defect(&tau);
        if asym > SYMMETRY_TOLERANCE {
            return Err(Error::domain(format!("τ is not symmetric (defect {asym:e})")));
        }
        let tau = symmetrize(&tau);
        let ev = min_eigenvalue(&tau.map(|z| z.im));
        if ev <= PD_TOLERANCE {
            return Err(Error::domain(format!(
                "Im τ is not positive definite (least eigenvalue {ev:e})"
            )));
        }
        Ok(SiegelPoint { tau })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("τ must be square"));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// `i·t·I_g`.
    pub fn scalar_imaginary(g: usize, t: f64) -> Result<Self> {
        Self::new(DMatrix::from_fn(g, g, |i, j| {
            if i == j {
                Complex64::new(0.0, t)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn genus(&self) -> usize {
        self.tau.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.tau
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.tau[(i, j)]
    }

    /// Smallest eigenvalue of `Im τ`.
    pub fn min_imaginary_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.tau.map(|z| z.im))
    }

    pub fn symmetry_defect(&self) -> f64 {
        symmetry_defect(&self.tau)
    }

    pub fn distance(&self, other: &SiegelPoint) -> f64 {
        (&self.tau - &other.tau).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn symmetry_defect(t: &DMatrix<Complex64>) -> f64 {
    let scale = t.iter().map(|z| z.norm()).fold(1.0, f64::max);
    (t - t.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max) / scale
}

fn symmetrize(t: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    (t + t.transpose()).map(|z| z * 0.5)
}

fn min_eigenvalue(y: &DMatrix<f64>) -> f64 {
    let sym = (y + y.transpose()) * 0.5;
    SymmetricEigen::new(sym).eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

struct Blocks {
    a: DMatrix<Complex64>,
    b: DMatrix<Complex64>,
    c: DMatrix<Complex64>,
    d: DMatrix<Complex64>,
}

fn real_blocks(m: &RMatrix, g: usize) -> Result<Blocks> {
    if !m.is_square() || m.nrows() != 2 * g {
        return Err(Error::domain(format!("matrix must be {0}x{0} for genus {g}", 2 * g)));
    }
    let mu = similitude_factor(m)?;
    if mu != crate::algebra::rational::rat(1) {
        return Err(Error::NotSimilitude(format!("matrix is not in Sp (similitude {mu})")));
    }
    let f = m.to_f64();
    let blk = |r0: usize, c0: usize| DMatrix::from_fn(g, g, |i, j| Complex64::new(f[r0 + i][c0 + j], 0.0));
    Ok(Blocks { a: blk(0, 0), b: blk(0, g), c: blk(g, 0), d: blk(g, g) })
}

/// `Cτ + D` for `M` in `Sp_2g(Q)`.
fn ctd(bl: &Blocks, tau: &SiegelPoint) -> DMatrix<Complex64> {
    &bl.c * tau.matrix() + &bl.d
}

/// `M·τ = (Aτ + B)(Cτ + D)^{-1}`.
pub fn moebius_action(m: &RMatrix, tau: &SiegelPoint) -> Result<SiegelPoint> {
    let bl = real_blocks(m, tau.genus())?;
    let den = ctd(&bl, tau);
    if den.determinant().norm() < 1e-300 {
        return Err(Error::domain("Cτ + D is singular"));
    }
    let inv = den
        .try_inverse()
        .ok_or_else(|| Error::domain("Cτ + D is singular"))?;
    let num = &bl.a * tau.matrix() + &bl.b;
    SiegelPoint::new(num * inv)
}

/// `det(Cτ + D)^{-k}`.
pub fn automorphy_factor(m: &RMatrix, tau: &SiegelPoint, k: i32) -> Result<Complex64> {
    let bl = real_blocks(m, tau.genus())?;
    let det = ctd(&bl, tau).determinant();
    if det.norm() == 0.0 {
        return Err(Error::domain("Cτ + D is singular"));
    }
    Ok(det.powi(-k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::gsp::{random_symplectic_word, standard_j};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_and_j_fix_i() {
        let tau = SiegelPoint::scalar_imaginary(2, 1.0).unwrap();
        let id = RMatrix::identity(4);
        assert!(moebius_action(&id, &tau).unwrap().distance(&tau) < 1e-15);
        let j = standard_j(2);
        assert!(moebius_action(&j, &tau).unwrap().distance(&tau) < 1e-14);
        let f = automorphy_factor(&j, &tau, 2).unwrap();
        assert!((f - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn rejects_bad_points() {
        let bad = SiegelPoint::from_rows(&[
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 2.0)],
            vec![Complex64::new(0.0, 2.0), Complex64::new(0.0, 1.0)],
        ]);
        assert!(bad.is_err());
        let asym = SiegelPoint::from_rows(&[
            vec![Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
        ]);
        assert!(asym.is_err());
    }

    #[test]
    fn action_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let tau = SiegelPoint::from_rows(&[
            vec![Complex64::new(0.1, 1.3), Complex64::new(0.2, 0.3)],
            vec![Complex64::new(0.2, 0.3), Complex64::new(-0.4, 0.9)],
        ])
        .unwrap();
        for _ in 0..20 {
            let (_, a) = random_symplectic_word(2, 4, &mut rng);
            let (_, b) = random_symplectic_word(2, 4, &mut rng);
            let ab = a.mul(&b).unwrap();
            let lhs = moebius_action(&ab, &tau).unwrap();
            let rhs = moebius_action(&a, &moebius_action(&b, &tau).unwrap()).unwrap();
            assert!(lhs.distance(&rhs) < 1e-8 * (1.0 + lhs.matrix().norm()));
        }
    }
}
