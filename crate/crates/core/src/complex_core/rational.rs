use num_complex::Complex64;

use super::{fmt_c, RealPolynomial, TruncatedSeries};
use crate::{Error, Result};

const REDUCE_TOL: f64 = 1e-10;
const POLE_TOL: f64 = 1e-14;

/// `num / den` with real coefficients, kept in reduced form.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: RealPolynomial,
    den: RealPolynomial,
}

impl RationalFunction {
    /// Builds the reduced quotient; common roots (within 1e-10) are cancelled.
    pub fn new(num: RealPolynomial, den: RealPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(Self::polynomial(RealPolynomial::zero()));
        }
        let mut f = Self { num, den };
        f.reduce()?;
        Ok(f)
    }

    pub fn polynomial(p: RealPolynomial) -> Self {
        Self { num: p, den: RealPolynomial::constant(1.0) }
    }

    pub fn constant(c: f64) -> Self {
        Self::polynomial(RealPolynomial::constant(c))
    }

    pub fn num(&self) -> &RealPolynomial {
        &self.num
    }

    pub fn den(&self) -> &RealPolynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Cancels common factors. Real common roots are removed as linear
    /// factors, complex ones as conjugate quadratic factors.
    fn reduce(&mut self) -> Result<()> {
        loop {
            if self.den.degree().unwrap_or(0) == 0 || self.num.degree().unwrap_or(0) == 0 {
                return Ok(());
            }
            let num_roots = self.num.roots()?;
            let den_roots = self.den.roots()?;
            let common = den_roots.iter().find_map(|d| {
                num_roots.iter().find(|n| (*n - d).norm() <= REDUCE_TOL * d.norm().max(1.0)).map(|n| (n + d) / 2.0)
            });
            let Some(r) = common else {
                return Ok(());
            };
            let factor = if r.im.abs() <= REDUCE_TOL {
                RealPolynomial::new(vec![-r.re, 1.0])
            } else {
                RealPolynomial::new(vec![r.norm_sqr(), -2.0 * r.re, 1.0])
            };
            self.num = self.num.div_rem(&factor)?.0;
            self.den = self.den.div_rem(&factor)?.0;
        }
    }

    /// Horner evaluation of `num(w)/den(w)`.
    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        let d = self.den.eval(w);
        if d.norm() <= POLE_TOL * self.den.abs_scale(w) {
            return Err(Error::Pole(fmt_c(w)));
        }
        Ok(self.num.eval(w) / d)
    }

    pub fn poles(&self) -> Result<Vec<Complex64>> {
        self.den.roots()
    }

    /// Poles strictly outside the closed unit disc (by a 1e-10 margin).
    pub fn check_stable(&self, what: &'static str) -> Result<()> {
        for p in self.poles()? {
            if p.norm() <= 1.0 + 1e-10 {
                return Err(Error::Unstable(what, fmt_c(p)));
            }
        }
        Ok(())
    }

    /// Taylor jet at `z`; `z` must not be a pole.
    pub fn taylor_at(&self, z: Complex64, order: usize) -> Result<TruncatedSeries> {
        let n = self.num.taylor_at(z, order);
        let d = self.den.taylor_at(z, order);
        if d.coeff(0).norm() <= POLE_TOL * self.den.abs_scale(z) {
            return Err(Error::Pole(fmt_c(z)));
        }
        n.divide(&d)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { num: self.num.scale(k), den: self.den.clone() }
    }
}

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_polynomial() && self.den().coeffs() == [1.0] {
            write!(f, "{}", self.num())
        } else {
            write!(f, "({}) / ({})", self.num(), self.den())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> RealPolynomial {
        RealPolynomial::new(c.to_vec())
    }

    #[test]
    fn square_at_j() {
        let f = RationalFunction::polynomial(poly(&[0.0, 0.0, 1.0]));
        let v = f.eval(Complex64::new(0.0, 1.0)).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn half_w_at_one() {
        let f = RationalFunction::polynomial(poly(&[0.0, 0.5]));
        assert_eq!(f.eval(Complex64::new(1.0, 0.0)).unwrap(), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn hand_evaluated_quotient() {
        let f = RationalFunction::new(poly(&[1.0, 1.0]), poly(&[1.0, -0.5])).unwrap();
        let v = f.eval(Complex64::new(0.5, 0.0)).unwrap();
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pole_is_reported() {
        let f = RationalFunction::new(poly(&[1.0]), poly(&[-0.5, 1.0])).unwrap();
        assert!(matches!(f.eval(Complex64::new(0.5, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RationalFunction::new(poly(&[1.0]), RealPolynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn common_factors_cancel() {
        // (w - 0.5)(w + 2) / ((w - 0.5)(w^2 + 4))
        let a = poly(&[-0.5, 1.0]);
        let num = a.mul(&poly(&[2.0, 1.0]));
        let den = a.mul(&poly(&[4.0, 0.0, 1.0]));
        let f = RationalFunction::new(num, den).unwrap();
        assert_eq!(f.den().degree(), Some(2));
        assert_eq!(f.num().degree(), Some(1));
        // complex pair
        let q = poly(&[0.25, 0.0, 1.0]);
        let f = RationalFunction::new(q.mul(&poly(&[1.0, 3.0])), q.mul(&poly(&[3.0, 1.0]))).unwrap();
        assert_eq!(f.den().degree(), Some(1));
        let v = f.eval(Complex64::new(0.2, 0.1)).unwrap();
        let w = Complex64::new(0.2, 0.1);
        assert!((v - (1.0 + 3.0 * w) / (3.0 + w)).norm() < 1e-12);
    }

    #[test]
    fn stability() {
        let f = RationalFunction::new(poly(&[1.0]), poly(&[2.0, 1.0])).unwrap();
        assert!(f.check_stable("f").is_ok());
        let g = RationalFunction::new(poly(&[1.0]), poly(&[0.5, 1.0])).unwrap();
        assert!(matches!(g.check_stable("g"), Err(Error::Unstable(..))));
    }

    #[test]
    fn rational_jet() {
        // 1/(1 - w) at 0
        let f = RationalFunction::new(poly(&[1.0]), poly(&[1.0, -1.0])).unwrap();
        let s = f.taylor_at(Complex64::new(0.0, 0.0), 4).unwrap();
        assert!(s.coeffs().iter().all(|c| (c - 1.0).norm() < 1e-15));
    }
}
