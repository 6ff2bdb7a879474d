//! Half-integral matrices: symmetric, integer diagonal, off-diagonal
//! entries in `½Z`. Stored as the integer matrix `2A`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::rational::{rat, ratio};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::symplectic::RMatrix;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfIntegralMatrix {
    // ordered so that the derived `Ord` sorts by trace first
    trace: i64,
    genus: usize,
    twice: Vec<i64>,
}

impl HalfIntegralMatrix {
    /// From the entries of `2A` in row-major order.
    pub fn from_twice(genus: usize, twice: Vec<i64>) -> Result<Self> {
        if twice.len() != genus * genus {
            return Err(Error::domain(format!("expected {} entries for genus {genus}", genus * genus)));
        }
        for i in 0..genus {
            if twice[i * genus + i] % 2 != 0 {
                return Err(Error::domain("diagonal entries of a half-integral matrix must be integers"));
            }
            for j in 0..i {
                if twice[i * genus + j] != twice[j * genus + i] {
                    return Err(Error::domain("half-integral matrix must be symmetric"));
                }
            }
        }
        let trace = (0..genus).map(|i| twice[i * genus + i] / 2).sum();
        Ok(HalfIntegralMatrix { trace, genus, twice })
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let g = rows.len();
        if rows.iter().any(|r| r.len() != g) {
            return Err(Error::domain("half-integral matrix must be square"));
        }
        let mut twice = Vec::with_capacity(g * g);
        for r in rows {
            for x in r {
                let t = x * rat(2);
                if !t.is_integer() {
                    return Err(Error::domain(format!("entry {x} is not in (1/2)Z")));
                }
                let v: i64 = t
                    .numer()
                    .try_into()
                    .map_err(|_| Error::domain("half-integral entry out of range"))?;
                twice.push(v);
            }
        }
        Self::from_twice(g, twice)
    }

    pub fn from_i64_diag(diag: &[i64]) -> Self {
        let g = diag.len();
        let mut twice = vec![0; g * g];
        for (i, d) in diag.iter().enumerate() {
            twice[i * g + i] = 2 * d;
        }
        Self::from_twice(g, twice).expect("diagonal matrix")
    }

    pub fn zero(genus: usize) -> Self {
        Self::from_twice(genus, vec![0; genus * genus]).expect("zero matrix")
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn trace(&self) -> i64 {
        self.trace
    }

    /// `2·A[i][j]`.
    pub fn twice(&self, i: usize, j: usize) -> i64 {
        self.twice[i * self.genus + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        ratio(self.twice(i, j), 2)
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.genus).map(|i| (0..self.genus).map(|j| self.entry(i, j)).collect()).collect()
    }

    fn principal_minor(&self, idx: &[usize]) -> Rational {
        if idx.is_empty() {
            return rat(1);
        }
        let m = RMatrix::from_fn(idx.len(), idx.len(), |a, b| rat(self.twice(idx[a], idx[b])));
        m.determinant().expect("square")
    }

    /// Exact test: all principal minors are nonnegative.
    pub fn is_positive_semidefinite(&self) -> bool {
        let g = self.genus;
        (1u32..(1 << g)).all(|mask| {
            let idx: Vec<usize> = (0..g).filter(|i| mask & (1 << i) != 0).collect();
            !self.principal_minor(&idx).is_negative()
        })
    }

    /// Exact test: all leading principal minors are positive.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.genus).all(|n| {
            let idx: Vec<usize> = (0..n).collect();
            let m = self.principal_minor(&idx);
            !m.is_zero() && m.is_positive()
        })
    }

    /// Whether the last row and column vanish.
    pub fn last_row_col_zero(&self) -> bool {
        let g = self.genus;
        g > 0 && (0..g).all(|j| self.twice(g - 1, j) == 0)
    }

    /// `A'` with the last row and column removed.
    pub fn drop_last(&self) -> Self {
        let h = self.genus.saturating_sub(1);
        let mut twice = Vec::with_capacity(h * h);
        for i in 0..h {
            for j in 0..h {
                twice.push(self.twice(i, j));
            }
        }
        Self::from_twice(h, twice).expect("submatrix of a half-integral matrix")
    }

    /// `A ⊕ 0`.
    pub fn extend_by_zero(&self) -> Self {
        let g = self.genus + 1;
        let mut twice = vec![0; g * g];
        for i in 0..self.genus {
            for j in 0..self.genus {
                twice[i * g + j] = self.twice(i, j);
            }
        }
        Self::from_twice(g, twice).expect("direct sum with zero")
    }
}

impl fmt::Debug for HalfIntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HalfIntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.genus {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.genus)
                .map(|j| crate::algebra::rational::display_rational(&self.entry(i, j)))
                .collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// All positive semidefinite half-integral `g x g` matrices of trace at
/// most `bound`, sorted by (trace, entries).
pub fn psd_indices(genus: usize, bound: u64) -> Vec<HalfIntegralMatrix> {
    let mut out = Vec::new();
    let mut diag = vec![0i64; genus];
    diagonals(genus, 0, bound as i64, &mut diag, &mut |d| {
        let mut twice = vec![0i64; genus * genus];
        for i in 0..genus {
            twice[i * genus + i] = 2 * d[i];
        }
        let pairs: Vec<(usize, usize)> =
            (0..genus).flat_map(|i| (i + 1..genus).map(move |j| (i, j))).collect();
        off_diagonals(genus, &pairs, 0, d, &mut twice, &mut out);
    });
    out.sort();
    out
}

fn diagonals(g: usize, i: usize, left: i64, d: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if i == g {
        f(d);
        return;
    }
    for v in 0..=left {
        d[i] = v;
        diagonals(g, i + 1, left - v, d, f);
    }
}

fn off_diagonals(
    g: usize,
    pairs: &[(usize, usize)],
    k: usize,
    d: &[i64],
    twice: &mut Vec<i64>,
    out: &mut Vec<HalfIntegralMatrix>,
) {
    if k == pairs.len() {
        let m = HalfIntegralMatrix::from_twice(g, twice.clone()).expect("symmetric by construction");
        if m.is_positive_semidefinite() {
            out.push(m);
        }
        return;
    }
    let (i, j) = pairs[k];
    // 2x2 minor: (2a_ij)^2 <= 4 d_i d_j
    let cap = 4 * d[i] * d[j];
    let mut r = 0i64;
    while (r + 1) * (r + 1) <= cap {
        r += 1;
    }
    for v in -r..=r {
        twice[i * g + j] = v;
        twice[j * g + i] = v;
        off_diagonals(g, pairs, k + 1, d, twice, out);
    }
    twice[i * g + j] = 0;
    twice[j * g + i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(HalfIntegralMatrix::from_twice(2, vec![2, 1, 1, 2]).is_ok());
        assert!(HalfIntegralMatrix::from_twice(2, vec![1, 0, 0, 2]).is_err());
        assert!(HalfIntegralMatrix::from_twice(2, vec![2, 1, 0, 2]).is_err());
        let rows = vec![vec![rat(1), ratio(1, 2)], vec![ratio(1, 2), rat(1)]];
        let a = HalfIntegralMatrix::from_rows(&rows).unwrap();
        assert!(a.is_positive_definite());
        assert_eq!(a.rows(), rows);
    }

    #[test]
    fn genus_one_and_two_counts() {
        assert_eq!(psd_indices(1, 4).len(), 5);
        // trace <= 1 in genus 2: 0, diag(1,0), diag(0,1)
        assert_eq!(psd_indices(2, 1).len(), 3);
        let two = psd_indices(2, 2);
        // trace 2: diag(2,0), diag(0,2), [[1,b/2],[b/2,1]] for b in -2..=2
        assert_eq!(two.len(), 3 + 2 + 5);
        assert!(two.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn zero_diagonal_forces_zero_row() {
        for a in psd_indices(2, 6) {
            if a.twice(1, 1) == 0 {
                assert!(a.last_row_col_zero());
            }
            assert_eq!(a.is_positive_definite(), !(a.twice(0, 0) == 0 || a.twice(1, 1) == 0) && {
                a.twice(0, 0) * a.twice(1, 1) > a.twice(0, 1) * a.twice(0, 1)
            });
        }
    }
}
