//! The solver.
//!
//! Any closed-loop entry `G = a + b S` with cost at most `gamma` takes values
//! in the lens `Omega_gamma`, so `p = F_gamma^{-1} o G` is a Schur function
//! (`|p| <= 1` on the disc). The constraint `G in a + b H^inf` fixes `G`
//! (hence `p`) at the zeros of `b` inside the disc, which turns the question
//! "is cost `gamma` achievable?" into a classical interpolation problem:
//!
//! * all zeros of `b` at the origin (`b = c w^n * unit`): the first `n`
//!   Taylor coefficients of `p` are fixed, and feasibility is the
//!   Caratheodory-Fejer test `sigma_max(Toeplitz(p_0..p_{n-1})) <= 1`;
//! * simple zeros `z_i`: the values `p(z_i) = F_gamma^{-1}(a(z_i))` are
//!   fixed, and feasibility is positive semidefiniteness of the Pick matrix.
//!
//! Feasibility is monotone in `gamma` (the lenses are nested), so the optimal
//! cost is found by bisection. At the optimum the interpolant is a unique
//! finite Blaschke product, and the optimal controller is
//! `S* = (F_gamma o p - a) / b`.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::complex_core::{fmt_c, RationalFunction, RealPolynomial, TruncatedSeries};
use crate::conformal::{lens_contains, lens_map, lens_map_inv, lens_map_inv_jet, lens_map_jet, LensParams};
use crate::hinf_norm::{hinf_norm, DiagonalController, ProblemInstance};
use crate::{Error, Result};

/// Slack on the feasibility tests (Toeplitz norm above one, Pick eigenvalue
/// below zero).
pub const FEASIBILITY_TOL: f64 = 1e-12;
/// Lower end of the gamma bracket.
pub const GAMMA_FLOOR: f64 = 1.0 + 1e-12;
/// Default bracket width for [`solve_gamma`].
pub const DEFAULT_TOL: f64 = 1e-10;
/// Largest feasibility margin at which recovery still treats the problem as
/// sitting on the boundary.
pub const BOUNDARY_MARGIN: f64 = 1e-6;

const ROOT_SEPARATION: f64 = 1e-6;
const PATCH_RADIUS: f64 = 0.05;
const PATCH_ORDER: usize = 8;
const MISMATCH_TOL: f64 = 1e-8;

/// Interpolation constraints on `G` induced by the zeros of `b` in the disc.
#[derive(Debug, Clone, PartialEq)]
pub enum InterpolationData {
    /// `G = targets[0] + targets[1] w + ... + O(w^n)`.
    Jet { targets: Vec<Complex64> },
    /// `G(z_i) = a_i`; closed under conjugation.
    Nodes { nodes: Vec<(Complex64, Complex64)> },
}

impl InterpolationData {
    pub fn jet(targets: Vec<Complex64>) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::InvalidArgument("a jet constraint needs n >= 1".into()));
        }
        Ok(Self::Jet { targets })
    }

    pub fn nodes(nodes: Vec<(Complex64, Complex64)>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidArgument("node data needs at least one node".into()));
        }
        for (i, &(z, a)) in nodes.iter().enumerate() {
            if z.norm() >= 1.0 {
                return Err(Error::OutsideDisc(fmt_c(z)));
            }
            for &(z2, _) in &nodes[..i] {
                if (z - z2).norm() <= ROOT_SEPARATION {
                    return Err(Error::InvalidArgument(format!("duplicate node {}", fmt_c(z))));
                }
            }
            let mirrored =
                nodes.iter().any(|&(zc, ac)| (zc - z.conj()).norm() <= 1e-12 && (ac - a.conj()).norm() <= 1e-10);
            if !mirrored {
                return Err(Error::InvalidArgument(format!(
                    "node set is not closed under conjugation at {}",
                    fmt_c(z)
                )));
            }
        }
        Ok(Self::Nodes { nodes })
    }

    /// Number of zeros of `b` in the disc, with multiplicity.
    pub fn constraint_count(&self) -> usize {
        match self {
            Self::Jet { targets } => targets.len(),
            Self::Nodes { nodes } => nodes.len(),
        }
    }

    /// Zeros of `b` in the disc with multiplicities.
    fn zeros(&self) -> Vec<(Complex64, usize)> {
        match self {
            Self::Jet { targets } => vec![(Complex64::new(0.0, 0.0), targets.len())],
            Self::Nodes { nodes } => nodes.iter().map(|&(z, _)| (z, 1)).collect(),
        }
    }
}

fn snap_real(z: Complex64) -> Complex64 {
    if z.im.abs() <= 1e-12 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Reads off the interpolation constraints from the zeros of `b` in the disc.
pub fn reduce_instance(inst: &ProblemInstance) -> Result<InterpolationData> {
    let b_num = inst.b().num();
    let v = b_num.valuation();
    let rest = RealPolynomial::new(b_num.coeffs()[v..].to_vec());
    let mut disc: Vec<Complex64> = rest.roots()?.into_iter().filter(|r| r.norm() < 1.0).map(snap_real).collect();

    if disc.is_empty() {
        if v == 0 {
            return Err(Error::Degenerate("b has no zeros in the unit disc".into()));
        }
        let jet = inst.a().taylor_at(Complex64::new(0.0, 0.0), v - 1)?;
        return InterpolationData::jet(jet.coeffs().to_vec());
    }
    if v >= 2 {
        return Err(Error::Unsupported("b mixes a multiple zero at the origin with other zeros in the disc".into()));
    }
    if v == 1 {
        disc.push(Complex64::new(0.0, 0.0));
    }
    for (i, z) in disc.iter().enumerate() {
        if disc[..i].iter().any(|z2| (z - z2).norm() <= ROOT_SEPARATION) {
            return Err(Error::Unsupported(format!("repeated zero of b at {}", fmt_c(*z))));
        }
    }
    // make conjugate pairs exact
    let mut fixed = disc.clone();
    for (i, z) in disc.iter().enumerate() {
        if z.im < 0.0 {
            if let Some(partner) = disc.iter().find(|z2| (**z2 - z.conj()).norm() <= 1e-8) {
                fixed[i] = partner.conj();
            }
        }
    }
    let nodes = fixed.into_iter().map(|z| Ok((z, inst.a().eval(z)?))).collect::<Result<Vec<_>>>()?;
    InterpolationData::nodes(nodes)
}

/// The hypothesis that no constant belongs to `a + b RA`, decided exactly
/// from the interpolation data.
pub fn check_nondegenerate(data: &InterpolationData) -> Result<()> {
    let constant = match data {
        InterpolationData::Jet { targets } => targets[1..].iter().all(|c| c.norm() <= 1e-14),
        InterpolationData::Nodes { nodes } => nodes.iter().all(|&(_, a)| (a - nodes[0].1).norm() <= 1e-14),
    };
    if constant {
        return Err(Error::Degenerate("constant-achievable".into()));
    }
    Ok(())
}

/// Jet of `p = F_gamma^{-1} o G` at the origin from the target jet of `G`.
pub fn schur_jet(params: &LensParams, targets: &[Complex64]) -> Result<TruncatedSeries> {
    let order = targets.len() - 1;
    let g = TruncatedSeries::new(targets.to_vec());
    lens_map_inv_jet(params, targets[0], order)?.compose(&g.tail())
}

fn toeplitz_sigma_max(p: &TruncatedSeries) -> f64 {
    let n = p.order() + 1;
    let t = DMatrix::from_fn(n, n, |i, j| if i >= j { p.coeff(i - j) } else { Complex64::new(0.0, 0.0) });
    t.singular_values().max()
}

/// `1 - sigma_max` of the lower-triangular Toeplitz matrix of the `p`-jet.
/// Errors when the constant target lies outside the open lens.
pub fn cf_margin(params: &LensParams, data: &InterpolationData) -> Result<f64> {
    let InterpolationData::Jet { targets } = data else {
        return Err(Error::InvalidArgument("Caratheodory-Fejer test needs jet data".into()));
    };
    Ok(1.0 - toeplitz_sigma_max(&schur_jet(params, targets)?))
}

pub fn cf_feasible(params: &LensParams, data: &InterpolationData) -> Result<bool> {
    Ok(cf_margin(params, data)? >= -FEASIBILITY_TOL)
}

/// Smallest eigenvalue of the Pick matrix, or `None` when some target lies
/// outside the open lens (no interpolant exists).
pub fn pick_margin(params: &LensParams, data: &InterpolationData) -> Result<Option<f64>> {
    let InterpolationData::Nodes { nodes } = data else {
        return Err(Error::InvalidArgument("Pick test needs node data".into()));
    };
    let mut values = Vec::with_capacity(nodes.len());
    for &(z, a) in nodes {
        if z.norm() >= 1.0 {
            return Err(Error::OutsideDisc(fmt_c(z)));
        }
        if !lens_contains(params, a, 0.0) {
            return Ok(None);
        }
        let p = lens_map_inv(params, a)?;
        if !p.is_finite() || p.norm() >= 1.0 {
            return Ok(None);
        }
        values.push(p);
    }
    let n = nodes.len();
    let pick = DMatrix::from_fn(n, n, |i, j| {
        let (zi, zj) = (nodes[i].0, nodes[j].0);
        (1.0 - values[i] * values[j].conj()) / (1.0 - zi * zj.conj())
    });
    let eig = nalgebra::SymmetricEigen::new(pick);
    Ok(Some(eig.eigenvalues.min()))
}

pub fn pick_feasible(params: &LensParams, data: &InterpolationData) -> Result<bool> {
    Ok(pick_margin(params, data)?.is_some_and(|m| m >= -FEASIBILITY_TOL))
}

/// Feasibility margin for either kind of data; `None` when a target falls
/// outside the lens.
pub fn feasibility_margin(params: &LensParams, data: &InterpolationData) -> Result<Option<f64>> {
    match data {
        InterpolationData::Jet { targets } => {
            if !lens_contains(params, targets[0], 0.0) {
                return Ok(None);
            }
            cf_margin(params, data).map(Some)
        }
        InterpolationData::Nodes { .. } => pick_margin(params, data),
    }
}

pub fn is_feasible(params: &LensParams, data: &InterpolationData) -> Result<bool> {
    Ok(feasibility_margin(params, data)?.is_some_and(|m| m >= -FEASIBILITY_TOL))
}

/// `[lo, hi]` with the data infeasible at `lo` and feasible at `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

/// Bisects on gamma until the bracket is narrower than `tol`. `start_hi` is
/// a first guess for a feasible level; it is doubled until feasible.
pub fn feasibility_threshold(data: &InterpolationData, start_hi: f64, tol: f64) -> Result<Bracket> {
    let feasible = |g: f64| -> Result<bool> { is_feasible(&LensParams::new(g)?, data) };
    if feasible(GAMMA_FLOOR)? {
        return Err(Error::Degenerate("feasible for every gamma > 1".into()));
    }
    let mut hi = start_hi.max(GAMMA_FLOOR * 2.0);
    while !feasible(hi)? {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::Unsupported("no feasible gamma found below 1e12".into()));
        }
    }
    let mut lo = GAMMA_FLOOR;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Bracket { lo, hi })
}

/// Optimal cost, inner function and controller for one instance.
#[derive(Debug, Clone)]
pub struct SolveResult {
    /// Feasible end of the final bracket.
    pub gamma_star: f64,
    pub bracket: Bracket,
    /// Feasibility margin at `gamma_star` (Toeplitz `1 - sigma_max` or
    /// smallest Pick eigenvalue).
    pub margin: f64,
    pub data: InterpolationData,
    /// `None` when recovery is not implemented for the data's size.
    pub p: Option<RationalFunction>,
    pub s_star: Option<Arc<OptimalController>>,
}

impl SolveResult {
    pub fn params(&self) -> LensParams {
        LensParams::new(self.gamma_star).expect("gamma_star > 1")
    }

    pub fn supported(&self) -> bool {
        self.p.is_some()
    }
}

/// Finds the optimal cost by bisection over `(1, cost of Q = 0]`, then
/// recovers `p` and `S*` where supported.
pub fn solve_gamma(inst: &ProblemInstance, tol: f64) -> Result<SolveResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let data = reduce_instance(inst)?;
    check_nondegenerate(&data)?;
    let upper = hinf_norm(inst, &DiagonalController::zero(), 1e-12)?.value;
    let bracket = feasibility_threshold(&data, upper * (1.0 + 1e-9), tol)?;
    let params = LensParams::new(bracket.hi)?;
    let margin = feasibility_margin(&params, &data)?
        .ok_or_else(|| Error::OutsideLens("target at the feasible end of the bracket".into()))?;
    let p = match recover_p(&params, &data) {
        Ok(p) => Some(p),
        Err(Error::Unsupported(_)) => None,
        Err(e) => return Err(e),
    };
    let s_star = match &p {
        Some(p) => Some(Arc::new(construct_optimal_s(&params, p, inst, &data)?)),
        None => None,
    };
    Ok(SolveResult { gamma_star: bracket.hi, bracket, margin, data, p, s_star })
}

fn real_rational(num: [Complex64; 2], den: [Complex64; 2]) -> Result<RationalFunction> {
    let scale = den[0];
    let parts = [num[0] / scale, num[1] / scale, den[0] / scale, den[1] / scale];
    let imag = parts.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if imag > 1e-8 {
        return Err(Error::Evaluation(format!("recovered interpolant is not real (imag {imag:e})")));
    }
    RationalFunction::new(
        RealPolynomial::new(vec![parts[0].re, parts[1].re]),
        RealPolynomial::new(vec![parts[2].re, parts[3].re]),
    )
}

/// The inner function at the optimum: a degree-one Blaschke product for
/// jet order 2 or two nodes.
pub fn recover_p(params: &LensParams, data: &InterpolationData) -> Result<RationalFunction> {
    let margin = feasibility_margin(params, data)?.ok_or_else(|| Error::OutsideLens("interpolation target".into()))?;
    if margin.abs() > BOUNDARY_MARGIN {
        return Err(Error::NotAtBoundary(margin));
    }
    match data {
        InterpolationData::Jet { targets } => {
            if targets.len() != 2 {
                return Err(Error::Unsupported(format!(
                    "inner-function recovery for jet order {} (only 2 is implemented)",
                    targets.len()
                )));
            }
            let jet = schur_jet(params, targets)?;
            let (p0, p1) = (jet.coeff(0), jet.coeff(1));
            if p0.norm() >= 1.0 {
                return Err(Error::Degenerate("p(0) on the unit circle".into()));
            }
            // B(w) = (e w + p0)/(1 + conj(p0) e w) has B(0) = p0, B'(0) = e (1 - |p0|^2)
            let e = p1 / (1.0 - p0.norm_sqr());
            let e = e / e.norm();
            let one = Complex64::new(1.0, 0.0);
            real_rational([p0, e], [one, p0.conj() * e])
        }
        InterpolationData::Nodes { nodes } => {
            if nodes.len() != 2 {
                return Err(Error::Unsupported(format!(
                    "inner-function recovery for {} nodes (only 2 is implemented)",
                    nodes.len()
                )));
            }
            let (z1, z2) = (nodes[0].0, nodes[1].0);
            let p1 = lens_map_inv(params, nodes[0].1)?;
            let p2 = lens_map_inv(params, nodes[1].1)?;
            // one Schur step: p = phi_{p1}^{-1}(t b_{z1}) with the unimodular
            // constant t fixed by the second node
            let phi = (p2 - p1) / (1.0 - p1.conj() * p2);
            let bz = (z2 - z1) / (1.0 - z1.conj() * z2);
            let t = phi / bz;
            let t = t / t.norm();
            let one = Complex64::new(1.0, 0.0);
            real_rational([p1 - t * z1, t - p1 * z1.conj()], [one - p1.conj() * t * z1, p1.conj() * t - z1.conj()])
        }
    }
}

/// Local jet of `S*` around a zero of `b`, where the direct quotient loses
/// accuracy.
#[derive(Debug, Clone)]
struct Patch {
    center: Complex64,
    jet: TruncatedSeries,
}

/// `S*(w) = (F_gamma(p(w)) - a(w)) / b(w)`.
#[derive(Debug, Clone)]
pub struct OptimalController {
    params: LensParams,
    p: RationalFunction,
    a: RationalFunction,
    b: RationalFunction,
    patches: Vec<Patch>,
}

impl OptimalController {
    pub fn params(&self) -> &LensParams {
        &self.params
    }

    pub fn inner(&self) -> &RationalFunction {
        &self.p
    }

    /// The optimal closed-loop entry `G*(w) = F_gamma(p(w))`.
    pub fn closed_loop(&self, w: Complex64) -> Result<Complex64> {
        let pw = self.p.eval(w)?;
        // |p| = 1 on the circle up to rounding
        let pw = if pw.norm() > 1.0 { pw / pw.norm() } else { pw };
        lens_map(&self.params, pw)
    }

    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        if let Some(patch) = self.patches.iter().find(|p| (w - p.center).norm() < PATCH_RADIUS) {
            return Ok(patch.jet.eval(w - patch.center));
        }
        Ok((self.closed_loop(w)? - self.a.eval(w)?) / self.b.eval(w)?)
    }
}

/// Builds `S*` from the inner function `p`. Near each zero of `b` the
/// numerator and denominator are expanded in local jets and divided as
/// series.
pub fn construct_optimal_s(
    params: &LensParams,
    p: &RationalFunction,
    inst: &ProblemInstance,
    data: &InterpolationData,
) -> Result<OptimalController> {
    let mut patches = Vec::new();
    for (z, mult) in data.zeros() {
        let order = PATCH_ORDER + mult;
        let pj = p.taylor_at(z, order)?;
        let fj = lens_map_jet(params, pj.coeff(0), order)?.compose(&pj.tail())?;
        let num = fj.sub(&inst.a().taylor_at(z, order)?)?;
        let den = inst.b().taylor_at(z, order)?;
        let mismatch = (0..mult).map(|k| num.coeff(k).norm()).fold(0.0, f64::max);
        if mismatch > MISMATCH_TOL {
            return Err(Error::InterpolationMismatch(mismatch));
        }
        let jet = num.shift_down(mult)?.divide(&den.shift_down(mult)?)?;
        patches.push(Patch { center: z, jet });
    }
    Ok(OptimalController { params: *params, p: p.clone(), a: inst.a().clone(), b: inst.b().clone(), patches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::lens_derivative_at_zero;
    use std::f64::consts::{PI, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(v: &[f64]) -> RationalFunction {
        RationalFunction::polynomial(RealPolynomial::new(v.to_vec()))
    }

    fn instance(a: &[f64], b: &[f64]) -> ProblemInstance {
        ProblemInstance::new(poly(a), poly(b)).unwrap()
    }

    #[test]
    fn reduce_canonical() {
        let data = reduce_instance(&ProblemInstance::canonical()).unwrap();
        assert_eq!(data, InterpolationData::Jet { targets: vec![c(0.0, 0.0), c(0.5, 0.0)] });
    }

    #[test]
    fn reduce_single_node() {
        // b = (w - 0.5)(w + 3), a stable unit factor times the disc zero
        let b = RealPolynomial::new(vec![-0.5, 1.0]).mul(&RealPolynomial::new(vec![3.0, 1.0]));
        let inst = ProblemInstance::new(RationalFunction::constant(0.25), RationalFunction::polynomial(b)).unwrap();
        let data = reduce_instance(&inst).unwrap();
        let InterpolationData::Nodes { nodes } = data else { panic!("expected nodes") };
        assert_eq!(nodes.len(), 1);
        assert!((nodes[0].0 - 0.5).norm() < 1e-14);
        assert!((nodes[0].1 - 0.25).norm() < 1e-14);
    }

    #[test]
    fn reduce_simple_origin_zero() {
        let data = reduce_instance(&instance(&[0.0], &[0.0, 1.0])).unwrap();
        assert_eq!(data, InterpolationData::Jet { targets: vec![c(0.0, 0.0)] });
    }

    #[test]
    fn reduce_rejects_unsupported() {
        // repeated zero at 0.5
        let b = RealPolynomial::from_roots(&[c(0.5, 0.0), c(0.5, 0.0)]);
        let inst = ProblemInstance::new(poly(&[0.0, 0.5]), RationalFunction::polynomial(b)).unwrap();
        assert!(matches!(reduce_instance(&inst), Err(Error::Unsupported(_))));
        // w^2 (w - 0.5)
        let b = RealPolynomial::from_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
        let inst = ProblemInstance::new(poly(&[0.0, 0.5]), RationalFunction::polynomial(b)).unwrap();
        assert!(matches!(reduce_instance(&inst), Err(Error::Unsupported(_))));
        // no zeros in the disc
        let inst = instance(&[0.0, 0.5], &[2.0, 1.0]);
        assert!(matches!(reduce_instance(&inst), Err(Error::Degenerate(_))));
    }

    #[test]
    fn cf_examples() {
        let data = InterpolationData::jet(vec![c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        let at = |g: f64| LensParams::new(g).unwrap();
        let m = cf_margin(&at(SQRT_2), &data).unwrap();
        assert!(m.abs() < 1e-14, "margin at sqrt2 = {m}");
        assert!(cf_feasible(&at(SQRT_2), &data).unwrap());
        assert!(!cf_feasible(&at(1.3), &data).unwrap());
        let quarter = InterpolationData::jet(vec![c(0.0, 0.0), c(0.25, 0.0)]).unwrap();
        assert!((cf_margin(&at(SQRT_2), &quarter).unwrap() - 0.5).abs() < 1e-14);
        // p'(0) = 1 / (2 F'(0)) for the canonical jet
        let jet = schur_jet(&at(1.7), &[c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        assert!((jet.coeff(1).re - 0.5 / lens_derivative_at_zero(&at(1.7))).abs() < 1e-14);
        let outside = InterpolationData::jet(vec![c(0.9, 0.0), c(0.5, 0.0)]).unwrap();
        assert!(matches!(cf_margin(&at(SQRT_2), &outside), Err(Error::OutsideLens(_))));
    }

    #[test]
    fn pick_single_node() {
        let data = InterpolationData::nodes(vec![(c(0.5, 0.0), c(0.0, 0.0))]).unwrap();
        for g in [1.01, 1.5, 3.0] {
            let p = LensParams::new(g).unwrap();
            assert!((pick_margin(&p, &data).unwrap().unwrap() - 1.0 / 0.75).abs() < 1e-14);
        }
        let data = InterpolationData::nodes(vec![(c(-0.3, 0.0), c(0.2, 0.0))]).unwrap();
        assert!(pick_feasible(&LensParams::new(1.25).unwrap(), &data).unwrap());
        assert!(!pick_feasible(&LensParams::new(1.15).unwrap(), &data).unwrap());
    }

    #[test]
    fn node_validation() {
        assert!(InterpolationData::nodes(vec![(c(1.0, 0.0), c(0.0, 0.0))]).is_err());
        assert!(InterpolationData::nodes(vec![(c(0.0, 0.5), c(0.1, 0.0))]).is_err());
    }

    #[test]
    fn degenerate_instances() {
        let inst = instance(&[0.0], &[0.0, 0.0, 1.0]);
        assert!(matches!(solve_gamma(&inst, 1e-8), Err(Error::Degenerate(_))));
        let inst = instance(&[0.0], &[0.0, 1.0]);
        assert!(matches!(solve_gamma(&inst, 1e-8), Err(Error::Degenerate(_))));
    }

    #[test]
    fn canonical_solution() {
        let res = solve_gamma(&ProblemInstance::canonical(), DEFAULT_TOL).unwrap();
        assert!((res.gamma_star - SQRT_2).abs() < 1e-9);
        let p = res.p.as_ref().unwrap();
        assert!(p.num().coeff(0).abs() < 1e-12);
        assert!((p.num().coeff(1) / p.den().coeff(0) - 1.0).abs() < 1e-9);
        let s = res.s_star.as_ref().unwrap();
        assert!(s.eval(c(0.0, 0.0)).unwrap().norm() < 1e-12);
    }

    #[test]
    fn optimal_controller_is_continuous_across_patches() {
        let res = solve_gamma(&ProblemInstance::canonical(), DEFAULT_TOL).unwrap();
        let s = res.s_star.unwrap();
        let direct = |w: Complex64| (s.closed_loop(w).unwrap() - 0.5 * w) / (w * w);
        for k in 0..16 {
            let t = 2.0 * PI * k as f64 / 16.0;
            // the patch jet and the direct quotient agree where they meet
            let edge = Complex64::from_polar(0.0499999, t);
            let err = (s.eval(edge).unwrap() - direct(edge)).norm();
            assert!(err < 1e-9, "patch error {err:e} at t = {t}");
            let far = Complex64::from_polar(0.7, t);
            assert!((s.eval(far).unwrap() - direct(far)).norm() < 1e-12);
        }
    }

    #[test]
    fn two_node_solution_is_flat() {
        // b = w^2 + 0.25 has zeros +-0.5j
        let inst = instance(&[0.0, 0.5], &[0.25, 0.0, 1.0]);
        let res = solve_gamma(&inst, DEFAULT_TOL).unwrap();
        let p = res.p.clone().unwrap();
        let s = res.s_star.clone().unwrap();
        for k in 0..4096 {
            let w = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 4096.0);
            assert!((p.eval(w).unwrap().norm() - 1.0).abs() < 1e-8);
            let g = inst.a().eval(w).unwrap() + inst.b().eval(w).unwrap() * s.eval(w).unwrap();
            let cost = (1.0 - g).norm().max((1.0 + g).norm());
            assert!((cost - res.gamma_star).abs() < 1e-8);
        }
        // interpolation at the nodes
        let InterpolationData::Nodes { nodes } = &res.data else { panic!() };
        for &(z, a) in nodes {
            assert!((s.closed_loop(z).unwrap() - a).norm() < 1e-8);
        }
    }
}
