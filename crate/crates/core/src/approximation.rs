//! Contour Taylor extraction, normalization of polynomials into the
//! constraint set, and the gap sequence of polynomial approximants to the
//! optimal closed loop.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::complex_core::{RationalFunction, RealPolynomial};
use crate::conformal::lens_map_jet;
use crate::hinf_norm::{hinf_norm, DiagonalController, ProblemInstance};
use crate::interpolation::{InterpolationData, SolveResult};
use crate::{Error, Result};

/// Largest tolerated noise in an extracted coefficient.
const COEFF_NOISE: f64 = 1e-8;
const REMAINDER_TOL: f64 = 1e-10;
/// Grid tolerance for the norms recorded in a gap sequence.
pub const GAP_NORM_TOL: f64 = 1e-12;

/// Taylor coefficients recovered from samples on a circle.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorExtract {
    pub radius: f64,
    pub count: usize,
    /// Real parts of the kept coefficients.
    pub coeffs: Vec<f64>,
    /// Largest imaginary part discarded from the kept coefficients.
    pub residual_imag: f64,
}

fn sample_circle(f: &impl Fn(Complex64) -> Result<Complex64>, radius: f64, count: usize) -> Result<Vec<Complex64>> {
    (0..count).map(|m| f(Complex64::from_polar(radius, 2.0 * PI * m as f64 / count as f64))).collect()
}

fn check_contour(radius: f64, count: usize, min_count: usize) -> Result<()> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::InvalidArgument(format!("contour radius must lie in (0, 1), got {radius}")));
    }
    if count < min_count || !count.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("sample count must be a power of two >= {min_count}, got {count}")));
    }
    Ok(())
}

/// `c_k ~ (1 / (N r^k)) sum_m f(r e^{j t_m}) e^{-j k t_m}`, computed with one
/// FFT.
///
/// Rounding noise in `c_k` grows like `eps * max|f| / r^k`; coefficients past
/// the index where that exceeds 1e-8 (or past `count / 2`) are dropped.
pub fn taylor_coeffs(f: impl Fn(Complex64) -> Result<Complex64>, radius: f64, count: usize) -> Result<TaylorExtract> {
    check_contour(radius, count, 64)?;
    let mut buf = sample_circle(&f, radius, count)?;
    let scale = buf.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    FftPlanner::new().plan_fft_forward(count).process(&mut buf);

    let mut coeffs = Vec::new();
    let mut residual_imag: f64 = 0.0;
    let mut rk = 1.0;
    for (k, x) in buf.iter().take(count / 2).enumerate() {
        if k > 0 && f64::EPSILON * scale / rk > COEFF_NOISE {
            break;
        }
        let c = x / (count as f64 * rk);
        residual_imag = residual_imag.max(c.im.abs());
        coeffs.push(c.re);
        rk *= radius;
    }
    Ok(TaylorExtract { radius, count, coeffs, residual_imag })
}

/// `ṗ(0) = (1 / (2 pi r)) \int e^{-jt} p(r e^{jt}) dt`, by the trapezoid rule.
pub fn schwarz_derivative(p: impl Fn(Complex64) -> Result<Complex64>, radius: f64, count: usize) -> Result<Complex64> {
    check_contour(radius, count, 64)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..count {
        let e = Complex64::from_polar(1.0, 2.0 * PI * m as f64 / count as f64);
        acc += p(e * radius)? * e.conj();
    }
    Ok(acc / (count as f64 * radius))
}

/// `(R - R(0)) / (2 R'(0))`: the normalization that puts a polynomial into
/// `{ G : G(0) = 0, G'(0) = 0.5 }`.
pub fn normalize_to_x(r: &RealPolynomial) -> Result<RealPolynomial> {
    rescale_linear(r, 0.5)
}

/// `slope * (R - R(0)) / R'(0)`.
fn rescale_linear(r: &RealPolynomial, slope: f64) -> Result<RealPolynomial> {
    let d = r.coeff(1);
    if d.abs() <= 1e-12 {
        return Err(Error::InvalidArgument("linear coefficient vanishes; cannot normalize".into()));
    }
    Ok(r.sub(&RealPolynomial::constant(r.coeff(0))).scale(slope / d))
}

/// Smallest change that makes `g` satisfy the interpolation constraints.
///
/// Jets `(0, c)` use the multiplicative normalization; longer jets get an
/// additive correction in degrees `< n`; node data gets the interpolating
/// correction of degree `< #nodes`.
pub fn match_constraints(g: &RealPolynomial, data: &InterpolationData) -> Result<RealPolynomial> {
    match data {
        InterpolationData::Jet { targets } => {
            if targets.len() == 2 && targets[0].norm() == 0.0 && targets[1].re != 0.0 {
                return rescale_linear(g, targets[1].re);
            }
            let fix: Vec<f64> = targets.iter().enumerate().map(|(k, t)| t.re - g.coeff(k)).collect();
            Ok(g.add(&RealPolynomial::new(fix)))
        }
        InterpolationData::Nodes { nodes } => {
            let resid: Vec<Complex64> = nodes.iter().map(|&(z, a)| a - g.eval(z)).collect();
            let fix = interpolating_polynomial(nodes.iter().map(|n| n.0).collect::<Vec<_>>().as_slice(), &resid)?;
            Ok(g.add(&fix))
        }
    }
}

/// Polynomial of degree `< n` through `(z_i, v_i)`; real coefficients when
/// the data is conjugate symmetric.
fn interpolating_polynomial(z: &[Complex64], v: &[Complex64]) -> Result<RealPolynomial> {
    let n = z.len();
    let vander = nalgebra::DMatrix::from_fn(n, n, |i, k| z[i].powu(k as u32));
    let rhs = nalgebra::DVector::from_column_slice(v);
    let sol =
        vander.lu().solve(&rhs).ok_or_else(|| Error::InvalidArgument("interpolation nodes are not distinct".into()))?;
    Ok(RealPolynomial::new(sol.iter().map(|c| c.re).collect()))
}

/// Default contour for Taylor sections of the optimal closed loop.
pub const SECTION_RADIUS: f64 = 0.9;
pub const SECTION_COUNT: usize = 8192;

fn recovered(result: &SolveResult) -> Result<&std::sync::Arc<crate::interpolation::OptimalController>> {
    result.s_star.as_ref().ok_or_else(|| Error::Unsupported("no inner function recovered for this instance".into()))
}

/// Taylor section of degree `order` of `G* = F_gamma o p`, from contour
/// samples at radius 0.9.
pub fn optimal_section(result: &SolveResult, order: usize) -> Result<RealPolynomial> {
    let s = recovered(result)?;
    let ex = taylor_coeffs(|w| s.closed_loop(w), SECTION_RADIUS, SECTION_COUNT)?;
    if order >= ex.coeffs.len() {
        return Err(Error::InvalidArgument(format!(
            "order {order} exceeds the {} reliably extracted coefficients",
            ex.coeffs.len()
        )));
    }
    Ok(RealPolynomial::new(ex.coeffs[..=order].to_vec()))
}

/// The same section through jet composition. Nested compositions cancel
/// badly at high order, so this is only trustworthy up to order ~30.
pub fn optimal_jet(result: &SolveResult, order: usize) -> Result<RealPolynomial> {
    let s = recovered(result)?;
    let pj = s.inner().taylor_at(Complex64::new(0.0, 0.0), order)?;
    let g = lens_map_jet(s.params(), pj.coeff(0), order)?.compose(&pj.tail())?;
    Ok(RealPolynomial::new(g.coeffs().iter().map(|c| c.re).collect()))
}

/// `S = (G - a) / b` as an exact rational function. The zeros of `b` in the
/// disc are divided out of `G - a` by polynomial division.
pub fn controller_from_closed_loop(
    g: &RealPolynomial,
    inst: &ProblemInstance,
    data: &InterpolationData,
) -> Result<RationalFunction> {
    let (a, b) = (inst.a(), inst.b());
    let disc_factor = match data {
        InterpolationData::Jet { targets } => RealPolynomial::monomial(targets.len(), 1.0),
        InterpolationData::Nodes { nodes } => {
            RealPolynomial::from_roots(&nodes.iter().map(|n| n.0).collect::<Vec<_>>())
        }
    };
    let top = g.mul(a.den()).sub(a.num());
    let (q, r) = top.div_rem(&disc_factor)?;
    let rem = r.coeffs().iter().map(|c| c.abs()).fold(0.0, f64::max);
    if rem > REMAINDER_TOL {
        return Err(Error::DivisionRemainder(rem));
    }
    let (unit, r2) = b.num().div_rem(&disc_factor)?;
    let rem2 = r2.coeffs().iter().map(|c| c.abs()).fold(0.0, f64::max);
    if rem2 > REMAINDER_TOL * b.num().coeffs().iter().map(|c| c.abs()).fold(1.0, f64::max) {
        return Err(Error::DivisionRemainder(rem2));
    }
    RationalFunction::new(q.mul(b.den()), a.den().mul(&unit))
}

/// One approximant of the gap sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapPoint {
    pub order: usize,
    pub norm_value: f64,
    /// `norm_value - gamma*`.
    pub excess: f64,
}

/// The order-`order` Taylor section of `G*` with the constraints re-imposed.
pub fn gap_approximant(result: &SolveResult, order: usize) -> Result<RealPolynomial> {
    match_constraints(&optimal_section(result, order)?, &result.data)
}

/// For each order: truncate `G*`, re-impose the constraints, convert to the
/// rational controller `S_N`, and record the cost of `diag(S_N, S_N)`.
pub fn gap_sequence(inst: &ProblemInstance, result: &SolveResult, orders: &[usize]) -> Result<Vec<GapPoint>> {
    if orders.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("orders must be strictly ascending".into()));
    }
    orders
        .iter()
        .map(|&order| {
            let s = controller_from_closed_loop(&gap_approximant(result, order)?, inst, &result.data)?;
            let est = hinf_norm(inst, &DiagonalController::symmetric(s)?, GAP_NORM_TOL)?;
            Ok(GapPoint { order, norm_value: est.value, excess: est.value - result.gamma_star })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{lens_map, LensParams};
    use crate::interpolation::{solve_gamma, DEFAULT_TOL};
    use std::f64::consts::SQRT_2;

    fn sqrt2() -> LensParams {
        LensParams::new(SQRT_2).unwrap()
    }

    #[test]
    fn monomial_coefficients() {
        let ex = taylor_coeffs(|w| Ok(w * w), 0.9, 256).unwrap();
        assert!(ex.coeffs.len() > 10);
        for (k, &c) in ex.coeffs.iter().enumerate() {
            let expected = if k == 2 { 1.0 } else { 0.0 };
            let tol = if k < 20 { 1e-12 } else { COEFF_NOISE };
            assert!((c - expected).abs() < tol, "k = {k}: {c}");
        }
    }

    #[test]
    fn lens_map_coefficients() {
        let p = sqrt2();
        let ex = taylor_coeffs(|w| lens_map(&p, w), 0.9, 4096).unwrap();
        assert!(ex.coeffs[0].abs() < 1e-10);
        assert!((ex.coeffs[1] - 0.5).abs() < 1e-10);
        assert!(ex.residual_imag < 1e-8);
        for k in (0..ex.coeffs.len()).step_by(2) {
            assert!(ex.coeffs[k].abs() < 1e-10, "even coefficient {k}");
        }
    }

    #[test]
    fn radius_stability() {
        let p = LensParams::new(1.6).unwrap();
        let a = taylor_coeffs(|w| lens_map(&p, w), 0.8, 8192).unwrap();
        let b = taylor_coeffs(|w| lens_map(&p, w), 0.9, 8192).unwrap();
        let n = a.coeffs.len().min(b.coeffs.len()) / 4;
        for k in 0..n {
            assert!((a.coeffs[k] - b.coeffs[k]).abs() < 1e-7, "k = {k}");
        }
    }

    #[test]
    fn contour_validation() {
        assert!(taylor_coeffs(Ok, 1.0, 256).is_err());
        assert!(taylor_coeffs(Ok, 0.5, 100).is_err());
        assert!(schwarz_derivative(Ok, 0.5, 32).is_err());
    }

    #[test]
    fn normalize_examples() {
        let g = normalize_to_x(&RealPolynomial::new(vec![0.0, 1.0])).unwrap();
        assert_eq!(g.coeffs(), &[0.0, 0.5]);
        let g = normalize_to_x(&RealPolynomial::new(vec![0.1, 0.4, 0.0, 1.0])).unwrap();
        assert!((g.coeff(1) - 0.5).abs() < 1e-15 && (g.coeff(3) - 1.25).abs() < 1e-15);
        assert_eq!(g.coeff(0), 0.0);
        assert!(normalize_to_x(&RealPolynomial::new(vec![1.0, 0.0, 2.0])).is_err());
    }

    #[test]
    fn section_is_nearly_normalized() {
        let res = solve_gamma(&ProblemInstance::canonical(), DEFAULT_TOL).unwrap();
        let sec = optimal_section(&res, 15).unwrap();
        let g = normalize_to_x(&sec).unwrap();
        for k in 0..=15 {
            assert!((g.coeff(k) - sec.coeff(k)).abs() < 1e-9);
        }
    }

    #[test]
    fn contour_and_jet_sections_agree() {
        let res = solve_gamma(&ProblemInstance::canonical(), DEFAULT_TOL).unwrap();
        let a = optimal_section(&res, 20).unwrap();
        let b = optimal_jet(&res, 20).unwrap();
        for k in 0..=20 {
            assert!((a.coeff(k) - b.coeff(k)).abs() < 1e-8, "k = {k}");
        }
    }

    #[test]
    fn schwarz_examples() {
        assert!((schwarz_derivative(Ok, 0.5, 256).unwrap() - 1.0).norm() < 1e-14);
        assert!(schwarz_derivative(|w| Ok(w * w), 0.5, 256).unwrap().norm() < 1e-14);
    }

    #[test]
    fn first_gap_point_is_analytic() {
        let inst = ProblemInstance::canonical();
        let res = solve_gamma(&inst, DEFAULT_TOL).unwrap();
        let gaps = gap_sequence(&inst, &res, &[1]).unwrap();
        assert!((gaps[0].norm_value - 1.5).abs() < 1e-9);
        assert!((gaps[0].excess - (1.5 - SQRT_2)).abs() < 1e-9);
    }

    #[test]
    fn orders_must_ascend() {
        let inst = ProblemInstance::canonical();
        let res = solve_gamma(&inst, DEFAULT_TOL).unwrap();
        assert!(gap_sequence(&inst, &res, &[3, 1]).is_err());
    }

    #[test]
    fn node_instance_gap() {
        let a = RationalFunction::polynomial(RealPolynomial::new(vec![0.0, 0.5]));
        let b = RationalFunction::polynomial(RealPolynomial::new(vec![0.25, 0.0, 1.0]));
        let inst = ProblemInstance::new(a, b).unwrap();
        let res = solve_gamma(&inst, DEFAULT_TOL).unwrap();
        let gaps = gap_sequence(&inst, &res, &[3, 9, 25]).unwrap();
        for g in &gaps {
            assert!(g.excess > 0.0, "{g:?}");
        }
    }
}
