use num_complex::Complex64;

use super::{fmt_c, principal_power};
use crate::{Error, Result};

/// Complex power series `c0 + c1 u + ... + cN u^N` truncated at order `N`.
///
/// The order travels with the value. Binary operations require equal orders;
/// nothing is silently extended or truncated.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl TruncatedSeries {
    /// Series whose order is `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zeros(order: usize) -> Self {
        Self::new(vec![zero(); order + 1])
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// The jet of the identity map, `u`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zeros(order);
        if order >= 1 {
            s.coeffs[1] = Complex64::new(1.0, 0.0);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_else(zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Cauchy product truncated at the common order.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self::new(out))
    }

    /// Jet of `1/f`; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0 == zero() {
            return Err(Error::ZeroConstant);
        }
        let n = self.order();
        let inv0 = c0.inv();
        let mut out = vec![zero(); n + 1];
        out[0] = inv0;
        for k in 1..=n {
            let mut acc = zero();
            for j in 1..=k {
                acc += self.coeffs[j] * out[k - j];
            }
            out[k] = -acc * inv0;
        }
        Ok(Self::new(out))
    }

    pub fn divide(&self, other: &Self) -> Result<Self> {
        self.multiply(&other.reciprocal()?)
    }

    /// Jet of `self(inner(u))`. `inner` must vanish at the origin.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        let g0 = inner.coeffs[0];
        if g0 != zero() {
            return Err(Error::NonZeroConstant(g0.norm()));
        }
        let n = self.order();
        let mut acc = Self::constant(self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.multiply(inner)?;
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// The same series with the constant term set to zero.
    pub fn tail(&self) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = zero();
        s
    }

    /// Divides by `u^k`, dropping the first `k` coefficients. The order
    /// drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::InvalidArgument(format!("cannot divide a series of order {} by u^{k}", self.order())));
        }
        Ok(Self::new(self.coeffs[k..].to_vec()))
    }

    /// Keeps coefficients up to `order` (which must not exceed the current one).
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch(self.order(), order));
        }
        Ok(Self::new(self.coeffs[..=order].to_vec()))
    }

    /// Evaluates the truncated polynomial at `u`.
    pub fn eval(&self, u: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(zero(), |acc, c| acc * u + c)
    }

    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_real_symmetric(&self, tol: f64) -> bool {
        self.max_imag() < tol
    }

    /// Jet of the Mobius map `x -> (a x + b)/(c x + d)` at `x0`, in powers of
    /// `u = x - x0`.
    pub fn mobius_at(
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
        x0: Complex64,
        order: usize,
    ) -> Result<Self> {
        let den0 = c * x0 + d;
        if den0 == zero() {
            return Err(Error::Pole(fmt_c(x0)));
        }
        let mut num = Self::constant(a * x0 + b, order);
        let mut den = Self::constant(den0, order);
        if order >= 1 {
            num.coeffs[1] = a;
            den.coeffs[1] = c;
        }
        num.divide(&den)
    }

    /// Jet of the principal power `y -> y^beta` at `y0 != 0`:
    /// `y0^beta * sum_k binom(beta, k) (u / y0)^k`.
    pub fn power_at(beta: f64, y0: Complex64, order: usize) -> Result<Self> {
        if y0 == zero() {
            return Err(Error::Evaluation(format!("power jet at the branch point 0 (beta = {beta})")));
        }
        let lead = principal_power(y0, beta);
        let inv = y0.inv();
        let mut out = Vec::with_capacity(order + 1);
        let mut binom = 1.0;
        let mut ratio = Complex64::new(1.0, 0.0);
        for k in 0..=order {
            out.push(lead * ratio * binom);
            binom *= (beta - k as f64) / (k as f64 + 1.0);
            ratio *= inv;
        }
        Ok(Self::new(out))
    }
}
