//! Symplectic similitudes with respect to `J_g = [[0, I], [-I, 0]]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::matrix::{Matrix, RMatrix, Scalar};
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// `J_g` over the ring of `like`.
pub fn standard_j_like<T: Scalar>(g: usize, like: &T) -> Matrix<T> {
    assert!(g >= 1, "genus must be positive");
    let (z, o) = (like.zero_like(), like.one_like());
    let mo = o.neg_s();
    Matrix::from_fn(2 * g, 2 * g, |i, j| {
        if i < g && j == i + g {
            o.clone()
        } else if i >= g && j + g == i {
            mo.clone()
        } else {
            z.clone()
        }
    })
}

pub fn standard_j(g: usize) -> RMatrix {
    standard_j_like(g, &Rational::one())
}

/// The scalar `μ` with `MᵀJM = μJ`.
pub fn similitude_factor<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() || !m.nrows().is_multiple_of(2) {
        return Err(Error::domain("similitude factor needs a square matrix of even size"));
    }
    let g = m.nrows() / 2;
    let j = standard_j_like(g, m.get(0, 0));
    let mtjm = m.transpose().mul(&j)?.mul(m)?;
    let mu = mtjm.get(0, g).clone();
    if mu.is_zero_scalar() || mtjm != j.scale(&mu) {
        return Err(Error::NotSimilitude("MᵀJM is not a nonzero multiple of J".into()));
    }
    Ok(mu)
}

pub fn is_symplectic<T: Scalar>(m: &Matrix<T>) -> bool {
    matches!(similitude_factor(m), Ok(mu) if mu == m.get(0, 0).one_like())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CongruenceKind {
    /// All of `Sp_2g(Z)`.
    Full,
    /// `Γ(N)`: `M ≡ I (mod N)`.
    Principal,
    /// `Γ_0(N)`: `C ≡ 0 (mod N)`.
    Gamma0,
    /// `Γ_1(N)`: `C ≡ 0`, `A ≡ D ≡ I (mod N)`.
    Gamma1,
}

impl FromStr for CongruenceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Self::Full),
            "principal" => Ok(Self::Principal),
            "gamma0" => Ok(Self::Gamma0),
            "gamma1" => Ok(Self::Gamma1),
            _ => Err(Error::parse(format!(
                "unknown subgroup kind {s:?} (expected full, principal, gamma0 or gamma1)"
            ))),
        }
    }
}

impl fmt::Display for CongruenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Full => "full",
            Self::Principal => "principal",
            Self::Gamma0 => "gamma0",
            Self::Gamma1 => "gamma1",
        })
    }
}

/// Membership of an integral symplectic matrix in a congruence subgroup.
pub fn in_congruence_subgroup(m: &RMatrix, n: u64, kind: CongruenceKind) -> Result<bool> {
    if n == 0 {
        return Err(Error::domain("level must be positive"));
    }
    if !m.is_integral() {
        return Err(Error::domain("matrix is not integral"));
    }
    let mu = similitude_factor(m)?;
    if !mu.is_one() {
        return Err(Error::NotSimilitude(format!("similitude factor is {mu}, not 1")));
    }
    let g = m.nrows() / 2;
    let nb = BigInt::from(n);
    let divisible = |x: &Rational| (x.to_integer() % &nb).is_zero();
    let block_is = |r0: usize, c0: usize, identity: bool| {
        (0..g).all(|i| {
            (0..g).all(|j| {
                let x = m.get(r0 + i, c0 + j);
                let target = if identity && i == j { Rational::one() } else { Rational::zero() };
                divisible(&(x - target))
            })
        })
    };
    Ok(match kind {
        CongruenceKind::Full => true,
        CongruenceKind::Gamma0 => block_is(g, 0, false),
        CongruenceKind::Gamma1 => block_is(g, 0, false) && block_is(0, 0, true) && block_is(g, g, true),
        CongruenceKind::Principal => {
            block_is(g, 0, false) && block_is(0, 0, true) && block_is(g, g, true) && block_is(0, g, false)
        }
    })
}

/// `dU_g = diag(d^{-1} I_g, d I_g)`.
pub fn diamond_matrix<T: Scalar>(d: &T, g: usize) -> Result<Matrix<T>> {
    let inv = d
        .inv_s()
        .ok_or_else(|| Error::domain("diamond parameter is not invertible"))?;
    let z = d.zero_like();
    Ok(Matrix::from_fn(2 * g, 2 * g, |i, j| {
        if i != j {
            z.clone()
        } else if i < g {
            inv.clone()
        } else {
            d.clone()
        }
    }))
}

/// Embeds a pair of `2x2` matrices with equal determinant into `GSp_4`:
/// rows `(a,0,b,0), (0,a',0,b'), (c,0,d,0), (0,c',0,d')`.
pub fn yoshida_embed<T: Scalar>(g1: &Matrix<T>, g2: &Matrix<T>) -> Result<Matrix<T>> {
    for m in [g1, g2] {
        if m.nrows() != 2 || m.ncols() != 2 {
            return Err(Error::domain("Yoshida embedding takes 2x2 matrices"));
        }
    }
    let d1 = g1.determinant()?;
    let d2 = g2.determinant()?;
    if d1 != d2 {
        return Err(Error::domain(format!("determinants differ: {d1:?} vs {d2:?}")));
    }
    if d1.is_zero_scalar() {
        return Err(Error::domain("matrices are not invertible"));
    }
    let z = d1.zero_like();
    let mut out = Matrix::zeros_like(4, 4, &z);
    for (src, off) in [(g1, 0usize), (g2, 1usize)] {
        for i in 0..2 {
            for j in 0..2 {
                out.set(2 * i + off, 2 * j + off, src.get(i, j).clone());
            }
        }
    }
    Ok(out)
}

/// Generators used to build random elements of `Sp_2g(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpGenerator {
    J,
    /// `[[I, B], [0, I]]` with `B` symmetric.
    Translation(Vec<Vec<i64>>),
    /// `[[U, 0], [0, U^{-T}]]` with `U` unimodular.
    Levi(Vec<Vec<i64>>),
}

impl SpGenerator {
    pub fn matrix(&self, g: usize) -> RMatrix {
        let id = RMatrix::identity(g);
        let zero = Matrix::zeros_like(g, g, &Rational::zero());
        match self {
            SpGenerator::J => standard_j(g),
            SpGenerator::Translation(b) => {
                let b = RMatrix::from_i64(b).expect("square block");
                Matrix::from_blocks(&id, &b, &zero, &id)
            }
            SpGenerator::Levi(u) => {
                let u = RMatrix::from_i64(u).expect("square block");
                let uit = inverse_unimodular(&u).transpose();
                Matrix::from_blocks(&u, &zero, &zero, &uit)
            }
        }
    }

    pub fn random<R: Rng>(g: usize, rng: &mut R) -> Self {
        match rng.gen_range(0..3) {
            0 => SpGenerator::J,
            1 => {
                let mut b = vec![vec![0i64; g]; g];
                for i in 0..g {
                    for j in i..g {
                        let v = rng.gen_range(-2..=2);
                        b[i][j] = v;
                        b[j][i] = v;
                    }
                }
                SpGenerator::Translation(b)
            }
            _ => {
                let mut u: Vec<Vec<i64>> = (0..g).map(|i| (0..g).map(|j| (i == j) as i64).collect()).collect();
                if g > 1 && rng.gen_bool(0.5) {
                    let i = rng.gen_range(0..g);
                    let j = (i + rng.gen_range(1..g)) % g;
                    u[i][j] = if rng.gen_bool(0.5) { 1 } else { -1 };
                } else {
                    let i = rng.gen_range(0..g);
                    u[i][i] = -1;
                }
                SpGenerator::Levi(u)
            }
        }
    }
}

fn inverse_unimodular(u: &RMatrix) -> RMatrix {
    let n = u.nrows();
    // Gauss-Jordan over Q
    let mut a = u.row_vecs();
    let mut inv = RMatrix::identity(n).row_vecs();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("invertible");
        a.swap(p, c);
        inv.swap(p, c);
        let piv = a[c][c].recip();
        for k in 0..n {
            a[c][k] = &a[c][k] * &piv;
            inv[c][k] = &inv[c][k] * &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..n {
                    a[r][k] = &a[r][k] - &f * &a[c][k];
                    inv[r][k] = &inv[r][k] - &f * &inv[c][k];
                }
            }
        }
    }
    RMatrix::from_rows(inv).expect("square")
}

/// A random word of length `len` in the generators of `Sp_2g(Z)`, with its
/// product.
pub fn random_symplectic_word<R: Rng>(g: usize, len: usize, rng: &mut R) -> (Vec<SpGenerator>, RMatrix) {
    let mut m = RMatrix::identity(2 * g);
    let mut word = Vec::with_capacity(len);
    for _ in 0..len {
        let s = SpGenerator::random(g, rng);
        m = m.mul(&s.matrix(g)).expect("square");
        word.push(s);
    }
    (word, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, ratio};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn j_squares_to_minus_identity() {
        for g in 1..4 {
            let j = standard_j(g);
            assert_eq!(j.mul(&j).unwrap(), RMatrix::identity(2 * g).scale(&rat(-1)));
            assert_eq!(similitude_factor(&j).unwrap(), rat(1));
        }
        assert_eq!(standard_j(1), RMatrix::from_i64(&[vec![0, 1], vec![-1, 0]]).unwrap());
    }

    #[test]
    fn diamond() {
        let d = diamond_matrix(&rat(2), 2).unwrap();
        let expect = [ratio(1, 2), ratio(1, 2), rat(2), rat(2)];
        for i in 0..4 {
            assert_eq!(d.get(i, i), &expect[i]);
        }
        assert_eq!(similitude_factor(&d).unwrap(), rat(1));
        assert!(diamond_matrix(&rat(0), 2).is_err());
    }

    #[test]
    fn not_a_similitude() {
        let m = RMatrix::from_i64(&[vec![1, 1, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        assert!(matches!(similitude_factor(&m), Err(Error::NotSimilitude(_))));
        assert!(in_congruence_subgroup(&m, 5, CongruenceKind::Full).is_err());
    }

    #[test]
    fn congruence_subgroups() {
        let j = standard_j(2);
        assert!(!in_congruence_subgroup(&j, 5, CongruenceKind::Gamma0).unwrap());
        assert!(in_congruence_subgroup(&j, 1, CongruenceKind::Principal).unwrap());
        let id = RMatrix::identity(4);
        for kind in [CongruenceKind::Full, CongruenceKind::Principal, CongruenceKind::Gamma0, CongruenceKind::Gamma1] {
            assert!(in_congruence_subgroup(&id, 7, kind).unwrap());
        }
    }

    #[test]
    fn yoshida_embedding() {
        let g1 = RMatrix::from_i64(&[vec![1, 1], vec![0, 1]]).unwrap();
        let g2 = RMatrix::from_i64(&[vec![1, 0], vec![1, 1]]).unwrap();
        let e = yoshida_embed(&g1, &g2).unwrap();
        assert_eq!(similitude_factor(&e).unwrap(), rat(1));
        let prod = g1.charpoly().unwrap() * g2.charpoly().unwrap();
        assert_eq!(e.charpoly().unwrap(), prod);
        let g3 = RMatrix::from_i64(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(yoshida_embed(&g1, &g3).is_err());
    }

    #[test]
    fn random_words_are_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let (_, m) = random_symplectic_word(2, 8, &mut rng);
            assert!(is_symplectic(&m));
        }
    }
}
