use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

/// A 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl Matrix2 {
    pub fn new(m11: Complex64, m12: Complex64, m21: Complex64, m22: Complex64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new(one, zero, zero, one)
    }

    /// `[[1, g2], [g1, 1]]`, the closed-loop matrix for off-diagonal entries
    /// `g1` (lower) and `g2` (upper).
    pub fn unit_diagonal(g1: Complex64, g2: Complex64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::new(one, g2, g1, one)
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.m11.conj(), self.m21.conj(), self.m12.conj(), self.m22.conj())
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.m11 * k, self.m12 * k, self.m21 * k, self.m22 * k)
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// `M^H M`.
    pub fn gram(&self) -> Self {
        self.adjoint() * *self
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [self.m11 - other.m11, self.m12 - other.m12, self.m21 - other.m21, self.m22 - other.m22]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.m11.is_finite() && self.m12.is_finite() && self.m21.is_finite() && self.m22.is_finite()
    }

    pub fn sigma_max(&self) -> f64 {
        sigma_max_2x2(self)
    }
}

/// Largest singular value in closed form.
///
/// The squared value is the top eigenvalue of the Hermitian Gram matrix
/// `[[p, r], [conj r, s]]`, i.e. `(p + s)/2 + hypot((p - s)/2, |r|)`; this
/// avoids the cancellation in `T^2 - 4 det` when the singular values nearly
/// coincide.
pub fn sigma_max_2x2(m: &Matrix2) -> f64 {
    let p = m.m11.norm_sqr() + m.m21.norm_sqr();
    let s = m.m12.norm_sqr() + m.m22.norm_sqr();
    let r = m.m11.conj() * m.m12 + m.m21.conj() * m.m22;
    (0.5 * (p + s) + (0.5 * (p - s)).hypot(r.norm())).sqrt()
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(self.m11 + o.m11, self.m12 + o.m12, self.m21 + o.m21, self.m22 + o.m22)
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(self.m11 - o.m11, self.m12 - o.m12, self.m21 - o.m21, self.m22 - o.m22)
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }
}
