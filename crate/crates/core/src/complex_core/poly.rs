use nalgebra::DMatrix;
use num_complex::Complex64;

use super::TruncatedSeries;
use crate::{Error, Result};

/// Real polynomial, ascending powers: `coeffs[k]` multiplies `w^k`.
///
/// Stored in canonical form: the highest stored coefficient is nonzero, and
/// the zero polynomial has no coefficients at all.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `c w^k`.
    pub fn monomial(k: usize, c: f64) -> Self {
        let mut v = vec![0.0; k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// Monic polynomial with the given roots. Roots off the real axis must
    /// come in conjugate pairs; the imaginary residue is discarded.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut acc = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
            for (k, &a) in acc.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * r;
            }
            acc = next;
        }
        Self::new(acc.iter().map(|c| c.re).collect())
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplicity of the root at the origin (number of leading zero
    /// coefficients). Zero for the zero polynomial.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 0.0).count().min(self.coeffs.len())
    }

    /// Horner evaluation.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * w + c)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `sum |c_k| |w|^k`, the natural scale for residuals at `w`.
    pub fn abs_scale(&self, w: Complex64) -> f64 {
        let r = w.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Polynomial long division: `(quotient, remainder)` with
    /// `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![0.0; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * d;
            }
            rem[k + dd] = 0.0;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Taylor jet of the polynomial at `z` (coefficients of `P(z + u)`).
    pub fn taylor_at(&self, z: Complex64, order: usize) -> TruncatedSeries {
        // repeated synthetic division by (w - z)
        let mut work: Vec<Complex64> = self.coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
        let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
        let n = work.len();
        for (k, slot) in out.iter_mut().enumerate() {
            if k >= n {
                break;
            }
            for i in (k..n - 1).rev() {
                let carry = work[i + 1];
                work[i] += carry * z;
            }
            *slot = work[k];
        }
        TruncatedSeries::new(out)
    }

    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::new((0..=order).map(|k| Complex64::new(self.coeff(k), 0.0)).collect())
    }

    /// All complex roots, with multiplicity.
    ///
    /// Roots at the origin are split off exactly; the rest are eigenvalues of
    /// the companion matrix followed by one Newton polish step per root.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 {
            return Ok(Vec::new());
        }
        let v = self.valuation();
        let mut roots = vec![Complex64::new(0.0, 0.0); v];
        let reduced = Self::new(self.coeffs[v..].to_vec());
        let d = deg - v;
        match d {
            0 => {}
            1 => roots.push(Complex64::new(-reduced.coeffs[0] / reduced.coeffs[1], 0.0)),
            _ => {
                let lead = reduced.coeffs[d];
                let mut companion = DMatrix::<f64>::zeros(d, d);
                for i in 1..d {
                    companion[(i, i - 1)] = 1.0;
                }
                for i in 0..d {
                    companion[(i, d - 1)] = -reduced.coeffs[i] / lead;
                }
                let eig = companion
                    .clone()
                    .try_schur(1e-15, 10_000)
                    .ok_or_else(|| Error::RootFinding("Schur iteration did not converge".into()))?
                    .complex_eigenvalues();
                let deriv = reduced.derivative();
                for z in eig.iter() {
                    roots.push(newton_polish(&reduced, &deriv, *z));
                }
            }
        }
        Ok(roots)
    }
}

fn newton_polish(p: &RealPolynomial, dp: &RealPolynomial, z: Complex64) -> Complex64 {
    let f = p.eval(z);
    let df = dp.eval(z);
    if df.norm() == 0.0 {
        return z;
    }
    let cand = z - f / df;
    if cand.is_finite() && p.eval(cand).norm() <= f.norm() {
        cand
    } else {
        z
    }
}

/// Ascending powers of `w`, e.g. `0.5w + w^2`.
impl std::fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs().iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let sign = if c < 0.0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if !first {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let coef = if mag == 1.0 && k > 0 { String::new() } else { format!("{mag}") };
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coef}w")?,
                _ => write!(f, "{coef}w^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}
