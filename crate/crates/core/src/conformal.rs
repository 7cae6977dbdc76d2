//! The lens region `Omega_gamma = { s : |1 - s| < gamma, |1 + s| < gamma }`
//! and the conformal map `F_gamma = U_alpha o R_alpha o V` from the unit disc
//! onto it, with `gamma = 1 / cos(alpha)`:
//!
//! ```text
//! V(w)       = (1 + jw) / (1 - jw)            disc  -> right half-plane
//! R_alpha(s) = s^(2 alpha / pi)               half-plane -> cone |arg| < alpha
//! U_alpha(y) = j tan(alpha) (1 - y) / (1 + y) cone -> lens
//! ```
//!
//! All fractional powers use the principal branch from
//! [`principal_power`]. The map extends continuously to the closed disc; the
//! points `w = +-j` land on the lens corners `+-j tan(alpha)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::complex_core::{fmt_c, principal_power, TruncatedSeries, J};
use crate::{Error, Result};

/// Distance below which a point is snapped onto a lens corner (or its
/// preimage `+-j`).
const CORNER_TOL: f64 = 1e-14;
/// Points with `|w| <= 1 + BOUNDARY_TOL` are accepted as closed-disc points.
const BOUNDARY_TOL: f64 = 1e-12;

/// `gamma > 1` together with `alpha = arccos(1/gamma)` in `(0, pi/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LensParams {
    gamma: f64,
    alpha: f64,
    tan_alpha: f64,
}

impl LensParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 1.0 && gamma.is_finite()) {
            return Err(Error::InvalidGamma(gamma));
        }
        let alpha = (1.0 / gamma).acos();
        // tan(arccos(1/g)) = sqrt(g^2 - 1), evaluated without cancellation
        let tan_alpha = ((gamma - 1.0) * (gamma + 1.0)).sqrt();
        Ok(Self { gamma, alpha, tan_alpha })
    }

    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < FRAC_PI_2) {
            return Err(Error::InvalidArgument(format!("alpha must lie in (0, pi/2), got {alpha}")));
        }
        Self::new(1.0 / alpha.cos())
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn tan_alpha(&self) -> f64 {
        self.tan_alpha
    }

    /// Exponent of `R_alpha`.
    pub fn exponent(&self) -> f64 {
        2.0 * self.alpha / PI
    }

    /// Upper lens corner `j tan(alpha)`.
    pub fn corner(&self) -> Complex64 {
        J * self.tan_alpha
    }
}

/// A point of the extended complex plane. Only `V(-j)` and the maps
/// downstream of it ever produce `Infinity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(Complex64),
    Infinity,
}

impl Extended {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Extended::Finite(z) => Some(z),
            Extended::Infinity => None,
        }
    }
}

pub fn mobius_v(w: Complex64) -> Extended {
    let den = 1.0 - J * w;
    if den.norm() <= CORNER_TOL {
        return Extended::Infinity;
    }
    Extended::Finite((1.0 + J * w) / den)
}

/// `V^{-1}(z) = -j (z - 1)/(z + 1)`; `V^{-1}(inf) = -j`.
pub fn mobius_v_inv(z: Extended) -> Result<Complex64> {
    match z {
        Extended::Infinity => Ok(-J),
        Extended::Finite(z) => {
            let den = z + 1.0;
            if den.norm() <= CORNER_TOL {
                return Err(Error::Pole(fmt_c(z)));
            }
            Ok(-J * (z - 1.0) / den)
        }
    }
}

pub fn power_r(params: &LensParams, s: Extended) -> Extended {
    match s {
        Extended::Infinity => Extended::Infinity,
        Extended::Finite(s) => Extended::Finite(principal_power(s, params.exponent())),
    }
}

/// `U_alpha(y) = j tan(alpha) (1 - y)/(1 + y)`, with `U_alpha(inf) = -j tan(alpha)`.
pub fn mobius_u(params: &LensParams, y: Extended) -> Result<Complex64> {
    match y {
        Extended::Infinity => Ok(-params.corner()),
        Extended::Finite(y) => {
            let den = 1.0 + y;
            if den.norm() <= CORNER_TOL {
                return Err(Error::Pole(fmt_c(y)));
            }
            Ok(params.corner() * (1.0 - y) / den)
        }
    }
}

/// `U_alpha^{-1}(s) = (j tan(alpha) - s)/(j tan(alpha) + s)`.
fn mobius_u_inv(params: &LensParams, s: Complex64) -> Extended {
    let den = params.corner() + s;
    if den.norm() <= CORNER_TOL * params.tan_alpha.max(1.0) {
        return Extended::Infinity;
    }
    Extended::Finite((params.corner() - s) / den)
}

/// `F_gamma(w)` on the closed unit disc.
pub fn lens_map(params: &LensParams, w: Complex64) -> Result<Complex64> {
    if w.norm() > 1.0 + BOUNDARY_TOL {
        return Err(Error::OutsideDisc(fmt_c(w)));
    }
    if (w - J).norm() <= CORNER_TOL {
        return Ok(params.corner());
    }
    if (w + J).norm() <= CORNER_TOL {
        return Ok(-params.corner());
    }
    mobius_u(params, power_r(params, mobius_v(w)))
}

/// `F_gamma^{-1}(s)` by the explicit inverse composition
/// `V^{-1} o R_alpha^{-1} o U_alpha^{-1}`.
pub fn lens_map_inv(params: &LensParams, s: Complex64) -> Result<Complex64> {
    if !lens_contains(params, s, 1e-10 * params.gamma) {
        return Err(Error::OutsideLens(fmt_c(s)));
    }
    if (s - params.corner()).norm() <= CORNER_TOL * params.gamma {
        return Ok(J);
    }
    let y = mobius_u_inv(params, s);
    let z = match y {
        Extended::Infinity => Extended::Infinity,
        Extended::Finite(y) => Extended::Finite(principal_power(y, 1.0 / params.exponent())),
    };
    mobius_v_inv(z)
}

/// `|1 - s| < gamma + tol` and `|1 + s| < gamma + tol`.
pub fn lens_contains(params: &LensParams, s: Complex64, tol: f64) -> bool {
    let g = params.gamma + tol;
    (1.0 - s).norm() < g && (1.0 + s).norm() < g
}

/// `max(|1 - s|, |1 + s|) - gamma`: zero on the lens boundary, negative inside.
pub fn lens_boundary_distance(params: &LensParams, s: Complex64) -> f64 {
    (1.0 - s).norm().max((1.0 + s).norm()) - params.gamma
}

/// `F_gamma'(0) = 2 alpha tan(alpha) / pi`.
pub fn lens_derivative_at_zero(params: &LensParams) -> f64 {
    2.0 * params.alpha * params.tan_alpha / PI
}

/// Pushes a jet through a map whose own jet is available at any base point.
fn push_jet(
    inner: &TruncatedSeries,
    outer_at: impl FnOnce(Complex64) -> Result<TruncatedSeries>,
) -> Result<TruncatedSeries> {
    outer_at(inner.coeff(0))?.compose(&inner.tail())
}

/// Taylor jet of `F_gamma` at an interior point `w0` (`w0 != +-j`).
pub fn lens_map_jet(params: &LensParams, w0: Complex64, order: usize) -> Result<TruncatedSeries> {
    if w0.norm() >= 1.0 {
        return Err(Error::OutsideDisc(fmt_c(w0)));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut jet = TruncatedSeries::variable(order);
    jet = jet.add(&TruncatedSeries::constant(w0, order))?;
    jet = push_jet(&jet, |x| TruncatedSeries::mobius_at(J, one, -J, one, x, order))?;
    jet = push_jet(&jet, |x| TruncatedSeries::power_at(params.exponent(), x, order))?;
    let t = params.corner();
    push_jet(&jet, |x| TruncatedSeries::mobius_at(-t, t, one, one, x, order))
}

/// Taylor jet of `F_gamma^{-1}` at a point `s0` of the open lens.
pub fn lens_map_inv_jet(params: &LensParams, s0: Complex64, order: usize) -> Result<TruncatedSeries> {
    if !lens_contains(params, s0, 0.0) {
        return Err(Error::OutsideLens(fmt_c(s0)));
    }
    let one = Complex64::new(1.0, 0.0);
    let t = params.corner();
    let mut jet = TruncatedSeries::variable(order);
    jet = jet.add(&TruncatedSeries::constant(s0, order))?;
    jet = push_jet(&jet, |x| TruncatedSeries::mobius_at(-one, t, one, t, x, order))?;
    jet = push_jet(&jet, |x| TruncatedSeries::power_at(1.0 / params.exponent(), x, order))?;
    push_jet(&jet, |x| TruncatedSeries::mobius_at(-J, J, one, one, x, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sqrt2() -> LensParams {
        LensParams::new(SQRT_2).unwrap()
    }

    /// Cauchy-integral derivative at 0 on a circle of the given radius.
    fn contour_derivative(f: impl Fn(Complex64) -> Complex64, radius: f64, n: usize) -> Complex64 {
        let mut acc = c(0.0, 0.0);
        for m in 0..n {
            let t = 2.0 * PI * m as f64 / n as f64;
            let e = Complex64::from_polar(1.0, t);
            acc += f(e * radius) * e.conj();
        }
        acc / (n as f64 * radius)
    }

    #[test]
    fn params_invariants() {
        for &g in &[1.1, SQRT_2, 2.0, 5.0] {
            let p = LensParams::new(g).unwrap();
            assert!((p.alpha() - (1.0 / g).acos()).abs() < 1e-14);
            assert!((p.tan_alpha() - p.alpha().tan()).abs() < 1e-12);
        }
        assert!(LensParams::new(1.0).is_err());
        assert!(LensParams::new(f64::INFINITY).is_err());
        assert!((LensParams::from_alpha(FRAC_PI_4).unwrap().gamma() - SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn v_values() {
        assert_eq!(mobius_v(c(0.0, 0.0)), Extended::Finite(c(1.0, 0.0)));
        assert_eq!(mobius_v(J), Extended::Finite(c(0.0, 0.0)));
        assert_eq!(mobius_v(-J), Extended::Infinity);
        let w = c(0.3, -0.45);
        let a = mobius_v(w.conj()).finite().unwrap();
        let b = mobius_v(w).finite().unwrap();
        assert!((a * b.conj() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn v_inverse() {
        assert_eq!(mobius_v_inv(Extended::Finite(c(1.0, 0.0))).unwrap(), c(0.0, 0.0));
        assert!((mobius_v_inv(Extended::Finite(c(0.0, 0.0))).unwrap() - J).norm() < 1e-16);
        assert!(mobius_v_inv(Extended::Finite(c(-1.0, 0.0))).is_err());
        let w = c(-0.2, 0.6);
        let back = mobius_v_inv(mobius_v(w)).unwrap();
        assert!((back - w).norm() < 1e-15);
    }

    #[test]
    fn r_values() {
        let p = sqrt2();
        assert_eq!(power_r(&p, Extended::Finite(c(1.0, 0.0))), Extended::Finite(c(1.0, 0.0)));
        let z = power_r(&p, Extended::Finite(J)).finite().unwrap();
        assert!((z - Complex64::from_polar(1.0, FRAC_PI_4)).norm() < 1e-15);
        let s = c(0.4, 1.3);
        let lhs = power_r(&p, Extended::Finite(1.0 / s.conj())).finite().unwrap();
        let rhs = 1.0 / power_r(&p, Extended::Finite(s)).finite().unwrap().conj();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn u_values() {
        let p = LensParams::new(2.0).unwrap();
        assert_eq!(mobius_u(&p, Extended::Finite(c(1.0, 0.0))).unwrap(), c(0.0, 0.0));
        let top = mobius_u(&p, Extended::Finite(c(0.0, 0.0))).unwrap();
        assert!((top - J * FRAC_PI_3.tan()).norm() < 1e-14);
        assert!(mobius_u(&p, Extended::Finite(c(-1.0, 0.0))).is_err());
        let y = c(0.7, 0.2);
        let lhs = mobius_u(&p, Extended::Finite(1.0 / y.conj())).unwrap();
        let rhs = mobius_u(&p, Extended::Finite(y)).unwrap().conj();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn lens_map_special_points() {
        let p = sqrt2();
        assert_eq!(lens_map(&p, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((lens_map(&p, J).unwrap() - J).norm() < 1e-15);
        assert!((lens_map(&p, -J).unwrap() + J).norm() < 1e-15);
        assert!(matches!(lens_map(&p, c(1.1, 0.0)), Err(Error::OutsideDisc(_))));
    }

    #[test]
    fn lens_map_at_one_for_gamma_two() {
        // V(1) = j, R(j) = e^{j alpha}, and U puts it on the lens boundary
        let p = LensParams::new(2.0).unwrap();
        let f = lens_map(&p, c(1.0, 0.0)).unwrap();
        let expected = mobius_u(&p, Extended::Finite(Complex64::from_polar(1.0, p.alpha()))).unwrap();
        assert!((f - expected).norm() < 1e-14);
        assert!(lens_boundary_distance(&p, f).abs() < 1e-12);
    }

    #[test]
    fn inverse_special_points() {
        let p = sqrt2();
        assert_eq!(lens_map_inv(&p, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((lens_map_inv(&p, J).unwrap() - J).norm() < 1e-12);
        assert!((lens_map_inv(&p, -J).unwrap() + J).norm() < 1e-12);
        assert!(matches!(lens_map_inv(&p, c(0.5, 0.0)), Err(Error::OutsideLens(_))));
    }

    #[test]
    fn containment_examples() {
        let p = sqrt2();
        assert!(lens_contains(&p, c(0.0, 0.0), 0.0));
        // |1 + 0.5| = 1.5 exceeds sqrt(2)
        assert!(!lens_contains(&p, c(0.5, 0.0), 0.0));
        assert!(lens_contains(&p, c(0.0, 0.99), 0.0));
    }

    #[test]
    fn derivative_formula() {
        assert!((lens_derivative_at_zero(&sqrt2()) - 0.5).abs() < 1e-15);
        let p = LensParams::new(2.0).unwrap();
        let expected = 2.0 * 3f64.sqrt() / 3.0;
        assert!((lens_derivative_at_zero(&p) - expected).abs() < 1e-14);
        let p = LensParams::new(1.0 + 1e-12).unwrap();
        assert!(lens_derivative_at_zero(&p) < 1e-10);
        // contour cross-check
        let d = contour_derivative(|w| lens_map(&p, w).unwrap(), 0.5, 4096);
        assert!((d.re - lens_derivative_at_zero(&p)).abs() < 1e-8);
    }

    #[test]
    fn composed_jet_at_origin() {
        // order-3 jet for alpha = pi/4 is (0, 0.5, 0, c3); c3 by contour integral
        let p = sqrt2();
        let jet = lens_map_jet(&p, c(0.0, 0.0), 3).unwrap();
        let r = 0.5;
        let n = 4096;
        let mut c3 = c(0.0, 0.0);
        for m in 0..n {
            let e = Complex64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64);
            c3 += lens_map(&p, e * r).unwrap() * e.powi(-3);
        }
        c3 /= n as f64 * r.powi(3);
        assert!(jet.coeff(0).norm() < 1e-15);
        assert!((jet.coeff(1) - 0.5).norm() < 1e-14);
        assert!(jet.coeff(2).norm() < 1e-14);
        assert!((jet.coeff(3) - c3).norm() < 1e-10);
        assert!(jet.is_real_symmetric(1e-14));
    }

    #[test]
    fn inverse_jet_inverts_forward_jet() {
        let p = LensParams::new(1.7).unwrap();
        let w0 = c(0.2, -0.3);
        let fwd = lens_map_jet(&p, w0, 6).unwrap();
        let inv = lens_map_inv_jet(&p, fwd.coeff(0), 6).unwrap();
        let round = inv.compose(&fwd.tail()).unwrap();
        assert!((round.coeff(0) - w0).norm() < 1e-13);
        assert!((round.coeff(1) - 1.0).norm() < 1e-12);
        for k in 2..=6 {
            assert!(round.coeff(k).norm() < 1e-10, "k={k}: {}", round.coeff(k));
        }
    }
}
