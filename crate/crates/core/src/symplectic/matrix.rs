//! Dense matrices over exact rings (rationals or number-field elements).

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{NfElem, QPoly, Rational};
use crate::error::{Error, Result};

/// Exact scalars. Constants are produced from an existing value so that
/// number-field elements know their parent field.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero_scalar(&self) -> bool;
    fn add_s(&self, o: &Self) -> Self;
    fn sub_s(&self, o: &Self) -> Self;
    fn mul_s(&self, o: &Self) -> Self;
    fn neg_s(&self) -> Self;
    fn inv_s(&self) -> Option<Self>;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn int_like(&self, n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_s(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_s(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_s(&self) -> Self {
        -self
    }
    fn inv_s(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Scalar for NfElem {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn int_like(&self, n: i64) -> Self {
        self.field().from_int(n)
    }
    fn is_zero_scalar(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_s(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_s(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_s(&self) -> Self {
        -self
    }
    fn inv_s(&self) -> Option<Self> {
        self.inverse()
    }
}

/// Row-major matrix with at least one entry.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RMatrix = Matrix<Rational>;

impl<T: Scalar> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if r == 0 || c == 0 {
            return Err(Error::domain("empty matrix"));
        }
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::domain("ragged matrix rows"));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0);
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Identity of size `n` over the ring of `like`.
    pub fn identity_like(n: usize, like: &T) -> Self {
        let (z, o) = (like.zero_like(), like.one_like());
        Self::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn zeros_like(rows: usize, cols: usize, like: &T) -> Self {
        let z = like.zero_like();
        Self::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols).map(|c| c.to_vec()).collect()
    }

    fn sample(&self) -> &T {
        &self.data[0]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let z = self.sample().zero_like();
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = z.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero_scalar() {
                    acc = acc.add_s(&a.mul_s(o.get(k, j)));
                }
            }
            acc
        }))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add_s(o.get(i, j))))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub_s(o.get(i, j))))
    }

    fn check_same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::domain("matrix shapes differ"));
        }
        Ok(())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).mul_s(c))
    }

    /// Submatrix of size `h x w` starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Self::from_fn(h, w, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// `[[a, b], [c, d]]` from square blocks of equal size.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let g = a.rows;
        Self::from_fn(2 * g, 2 * g, |i, j| match (i < g, j < g) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - g).clone(),
            (false, true) => c.get(i - g, j).clone(),
            (false, false) => d.get(i - g, j - g).clone(),
        })
    }

    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::domain("determinant of a non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det = self.sample().one_like();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero_scalar()) else {
                return Ok(self.sample().zero_like());
            };
            if p != c {
                a.swap(p, c);
                det = det.neg_s();
            }
            det = det.mul_s(&a[c][c]);
            let inv = a[c][c].inv_s().expect("nonzero pivot");
            for r in c + 1..n {
                if a[r][c].is_zero_scalar() {
                    continue;
                }
                let f = a[r][c].mul_s(&inv);
                for k in c..n {
                    let v = a[r][k].sub_s(&f.mul_s(&a[c][k]));
                    a[r][k] = v;
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial `det(xI - M)`, ascending coefficients,
    /// by the Faddeev–LeVerrier recursion.
    pub fn charpoly_coeffs(&self) -> Result<Vec<T>> {
        if !self.is_square() {
            return Err(Error::domain("characteristic polynomial of a non-square matrix"));
        }
        let n = self.rows;
        let one = self.sample().one_like();
        let id = Self::identity_like(n, &one);
        let mut coeffs = vec![one.zero_like(); n + 1];
        coeffs[n] = one.clone();
        let mut m = Self::zeros_like(n, n, &one);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
            m = self.mul(&m)?.add(&id.scale(&coeffs[n - k + 1]))?;
            let am = self.mul(&m)?;
            let mut tr = one.zero_like();
            for i in 0..n {
                tr = tr.add_s(am.get(i, i));
            }
            let kinv = one.int_like(k as i64).inv_s().expect("characteristic zero");
            coeffs[n - k] = tr.mul_s(&kinv).neg_s();
        }
        Ok(coeffs)
    }
}

impl RMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::identity_like(n, &Rational::one())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn charpoly(&self) -> Result<QPoly> {
        Ok(QPoly::new(self.charpoly_coeffs()?))
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.row_vecs()
            .iter()
            .map(|r| r.iter().map(crate::algebra::rational::to_f64).collect())
            .collect()
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in self.data.chunks(self.cols) {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.data.chunks(self.cols).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", s.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_charpoly() {
        let m = RMatrix::from_i64(&[vec![2, 1], vec![1, 3]]).unwrap();
        assert_eq!(m.determinant().unwrap(), Rational::from_integer(5.into()));
        assert_eq!(m.charpoly().unwrap(), QPoly::from_i64s(&[5, -5, 1]));
        let p = RMatrix::from_i64(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]).unwrap();
        assert_eq!(p.charpoly().unwrap(), QPoly::from_i64s(&[-1, 0, 0, 1]));
        assert_eq!(p.determinant().unwrap(), Rational::one());
    }

    #[test]
    fn shape_errors() {
        let a = RMatrix::from_i64(&[vec![1, 2]]).unwrap();
        assert!(a.mul(&a).is_err());
        assert!(RMatrix::from_i64(&[vec![1, 2], vec![3]]).is_err());
        assert!(RMatrix::from_rows(vec![]).is_err());
    }
}
