//! Complex embeddings of a number field: all roots of the defining
//! polynomial to a requested binary precision.
//!
//! Roots are located in double precision (Aberth iteration) and then polished
//! by Newton steps in fixed-point big-integer arithmetic.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::automorphism::{field_automorphisms, FieldAutomorphism};
use super::field::{NfElem, NumberField};
use super::poly::QPoly;
use crate::error::{Error, Result};

const GUARD_BITS: u32 = 32;

/// A complex number `(re + i·im) / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedComplex {
    pub re: BigInt,
    pub im: BigInt,
    pub bits: u32,
}

impl FixedComplex {
    fn from_c64(z: Complex64, bits: u32) -> Self {
        FixedComplex { re: f64_to_fixed(z.re, bits), im: f64_to_fixed(z.im, bits), bits }
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(fixed_to_f64(&self.re, self.bits), fixed_to_f64(&self.im, self.bits))
    }

    fn zero(bits: u32) -> Self {
        FixedComplex { re: BigInt::zero(), im: BigInt::zero(), bits }
    }

    fn sub(&self, o: &Self) -> Self {
        FixedComplex { re: &self.re - &o.re, im: &self.im - &o.im, bits: self.bits }
    }

    fn mul(&self, o: &Self) -> Self {
        let re = (&self.re * &o.re - &self.im * &o.im) >> self.bits;
        let im = (&self.re * &o.im + &self.im * &o.re) >> self.bits;
        FixedComplex { re, im, bits: self.bits }
    }

    fn div(&self, o: &Self) -> Option<Self> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&self.re * &o.re + &self.im * &o.im) << self.bits) / &den;
        let im = ((&self.im * &o.re - &self.re * &o.im) << self.bits) / &den;
        Some(FixedComplex { re, im, bits: self.bits })
    }

    fn add_real(&self, r: &BigInt) -> Self {
        FixedComplex { re: &self.re + r, im: self.im.clone(), bits: self.bits }
    }

    /// `log2 |z|` estimate, or `-inf` for zero.
    fn log2_abs(&self) -> f64 {
        let m = self.re.abs().max(self.im.abs());
        if m.is_zero() {
            return f64::NEG_INFINITY;
        }
        m.bits() as f64 - self.bits as f64
    }

    fn with_bits(&self, bits: u32) -> Self {
        let shift = |x: &BigInt| {
            if bits >= self.bits {
                x << (bits - self.bits)
            } else {
                x >> (self.bits - bits)
            }
        };
        FixedComplex { re: shift(&self.re), im: shift(&self.im), bits }
    }
}

fn f64_to_fixed(x: f64, bits: u32) -> BigInt {
    // exact conversion of the double, then scaling
    let r = num_rational::BigRational::from_float(x).unwrap_or_default();
    (r.numer() << bits) / r.denom()
}

fn fixed_to_f64(x: &BigInt, bits: u32) -> f64 {
    let shift = x.bits().saturating_sub(60);
    let top = (x >> shift).to_f64().unwrap_or(0.0);
    top * 2f64.powi(shift as i32 - bits as i32)
}

fn rational_fixed(c: &num_rational::BigRational, bits: u32) -> BigInt {
    (c.numer() << bits) / c.denom()
}

/// Root approximations of a number field's defining polynomial.
#[derive(Clone, Debug)]
pub struct ComplexEmbeddings {
    pub precision: u32,
    pub roots: Vec<FixedComplex>,
}

impl ComplexEmbeddings {
    pub fn roots_c64(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.to_c64()).collect()
    }

    /// Values of `e` under every embedding, in root order.
    pub fn evaluate(&self, e: &NfElem) -> Vec<Complex64> {
        let p = e.to_qpoly();
        let bits = self.precision + GUARD_BITS;
        let coeffs: Vec<BigInt> = p.coeffs().iter().map(|c| rational_fixed(c, bits)).collect();
        self.roots
            .iter()
            .map(|r| horner_fixed(&coeffs, &r.with_bits(bits)).to_c64())
            .collect()
    }
}

fn horner_fixed(coeffs: &[BigInt], z: &FixedComplex) -> FixedComplex {
    let mut acc = FixedComplex::zero(z.bits);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add_real(c);
    }
    acc
}

/// All complex roots of the defining polynomial with
/// `|f(root)| < 2^(-precision/2)`, sorted by argument in `[0, 2π)` and then
/// modulus.
pub fn complex_embeddings(k: &NumberField, precision: u32) -> Result<ComplexEmbeddings> {
    if precision < 53 {
        return Err(Error::domain("precision must be at least 53 bits"));
    }
    let f = k.poly();
    let approx = aberth(f)?;
    let bits = precision + GUARD_BITS;
    let fc: Vec<BigInt> = f.coeffs().iter().map(|c| rational_fixed(c, bits)).collect();
    let df = f.derivative();
    let dc: Vec<BigInt> = df.coeffs().iter().map(|c| rational_fixed(c, bits)).collect();
    let target = -(precision as f64) / 2.0;
    let mut roots = Vec::with_capacity(approx.len());
    for z0 in approx {
        let mut z = FixedComplex::from_c64(z0, bits);
        let mut ok = false;
        for _ in 0..200 {
            let v = horner_fixed(&fc, &z);
            let d = horner_fixed(&dc, &z);
            let Some(step) = v.div(&d) else { break };
            z = z.sub(&step);
            if step.log2_abs() < -(bits as f64) + 8.0 {
                ok = true;
                break;
            }
        }
        let res = horner_fixed(&fc, &z).log2_abs();
        if !ok && res >= target {
            return Err(Error::Numeric(format!("Newton refinement did not converge for {f}")));
        }
        if res >= target {
            return Err(Error::Numeric(format!("residual 2^{res:.1} too large for {f}")));
        }
        roots.push(z.with_bits(precision));
    }
    roots.sort_by(|a, b| {
        let (za, zb) = (a.to_c64(), b.to_c64());
        let key = |z: Complex64| {
            let t = z.im.atan2(z.re);
            let t = if t < -1e-12 { t + 2.0 * std::f64::consts::PI } else { t.max(0.0) };
            (t, z.norm())
        };
        key(za).partial_cmp(&key(zb)).unwrap()
    });
    for w in roots.windows(2) {
        if (w[0].to_c64() - w[1].to_c64()).norm() < 1e-9 {
            return Err(Error::Numeric(format!("root approximations collided for {f}")));
        }
    }
    Ok(ComplexEmbeddings { precision, roots })
}

/// Simultaneous Aberth–Ehrlich iteration in double precision.
fn aberth(f: &QPoly) -> Result<Vec<Complex64>> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lc = super::rational::to_f64(&f.lc());
    let c: Vec<f64> = f.coeffs().iter().map(|x| super::rational::to_f64(x) / lc).collect();
    if n == 1 {
        return Ok(vec![Complex64::new(-c[0], 0.0)]);
    }
    // Cauchy bound for the initial circle
    let radius = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let r0 = radius.min(
        c[..n]
            .iter()
            .enumerate()
            .filter(|(_, x)| **x != 0.0)
            .map(|(i, x)| x.abs().powf(1.0 / (n - i) as f64))
            .fold(0.0, f64::max)
            .max(1e-3),
    );
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * (j as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for i in (0..n).rev() {
            dp = dp * x + p;
            p = p * x + c[i];
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut maxstep: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            maxstep = maxstep.max(w.norm() / z[i].norm().max(1.0));
        }
        if maxstep < 1e-15 {
            break;
        }
    }
    if z.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(Error::Numeric(format!("root finding failed for {f}")));
    }
    Ok(z)
}

/// The automorphism acting as complex conjugation in the first embedding,
/// if complex conjugation preserves the image of `K`.
pub fn complex_conjugation(k: &NumberField) -> Result<Option<FieldAutomorphism>> {
    let emb = complex_embeddings(k, 64)?;
    let z = emb.evaluate(&k.generator())[0].conj();
    let scale = 1.0 + z.norm();
    Ok(field_automorphisms(k)
        .into_iter()
        .find(|g| (emb.evaluate(g.image())[0] - z).norm() < 1e-9 * scale))
}
