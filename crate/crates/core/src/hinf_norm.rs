//! Boundary-grid evaluation of the matching cost `||L0 + L1 Q||_inf` for
//! `L0 = I + a J2`, `L1 = b J2`, `Q = diag(S1, S2)`:
//!
//! ```text
//! L0 + L1 Q = [ 1          a + b S2 ]
//!             [ a + b S1   1        ]
//! ```
//!
//! Entries are continuous on the closed disc, so the supremum over the disc
//! is attained on the unit circle and is estimated there on nested uniform
//! grids.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use num_complex::Complex64;

use crate::complex_core::{fmt_c, sigma_max_2x2, Matrix2, RationalFunction, RealPolynomial};
use crate::interpolation::OptimalController;
use crate::{Error, Result};

const BOUNDARY_CHECK_GRID: usize = 1 << 16;
const MIN_BOUNDARY_MODULUS: f64 = 1e-8;
const START_GRID: usize = 1024;
const MAX_GRID: usize = 1 << 22;

/// The structured matching data `(a, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    a: RationalFunction,
    b: RationalFunction,
}

impl ProblemInstance {
    /// Checks that `a` and `b` are stable and that `b` does not vanish on
    /// the unit circle.
    pub fn new(a: RationalFunction, b: RationalFunction) -> Result<Self> {
        a.check_stable("a")?;
        b.check_stable("b")?;
        let mut min_b = f64::INFINITY;
        for m in 0..BOUNDARY_CHECK_GRID {
            let w = unit(m, BOUNDARY_CHECK_GRID);
            min_b = min_b.min(b.eval(w)?.norm());
        }
        if min_b <= MIN_BOUNDARY_MODULUS {
            return Err(Error::VanishesOnBoundary(min_b));
        }
        Ok(Self { a, b })
    }

    /// `a(w) = 0.5 w`, `b(w) = w^2`: the instance whose optimal cost is
    /// `sqrt(2)`, attained only by a non-rational controller.
    pub fn canonical() -> Self {
        Self::new(
            RationalFunction::polynomial(RealPolynomial::new(vec![0.0, 0.5])),
            RationalFunction::polynomial(RealPolynomial::monomial(2, 1.0)),
        )
        .expect("canonical instance is valid")
    }

    pub fn a(&self) -> &RationalFunction {
        &self.a
    }

    pub fn b(&self) -> &RationalFunction {
        &self.b
    }
}

/// Boundary samples `f(e^{2 pi j m / N})`, `m = 0..N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTable {
    samples: Vec<Complex64>,
}

impl BoundaryTable {
    /// Requires a power-of-two length of at least 256 and conjugate
    /// symmetry (`sample[N - m] = conj(sample[m])`) to 1e-8.
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        let n = samples.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        if n < 256 || !n.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("boundary tables need a power-of-two length >= 256, got {n}")));
        }
        for m in 0..=n / 2 {
            let mirror = (n - m) % n;
            if (samples[mirror] - samples[m].conj()).norm() > 1e-8 {
                return Err(Error::InvalidArgument(format!("boundary table is not conjugate symmetric at index {m}")));
            }
        }
        Ok(Self { samples })
    }

    pub fn sample(f: impl Fn(Complex64) -> Result<Complex64>, n: usize) -> Result<Self> {
        let samples = (0..n).map(|m| f(unit(m, n))).collect::<Result<Vec<_>>>()?;
        Self::new(samples)
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Periodic linear interpolation in the angle of `w`.
    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        if (w.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::Evaluation(format!("sampled entry needs |w| = 1, got {}", fmt_c(w))));
        }
        let n = self.samples.len();
        let t = w.im.atan2(w.re).rem_euclid(2.0 * PI);
        let x = t * n as f64 / (2.0 * PI);
        let i = (x.floor() as usize) % n;
        let frac = x - x.floor();
        Ok(self.samples[i] * (1.0 - frac) + self.samples[(i + 1) % n] * frac)
    }
}

/// Samples on concentric circles `r e^{2 pi j m / count}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscTable {
    radii: Vec<f64>,
    count: usize,
    values: Vec<Complex64>,
}

impl DiscTable {
    pub fn sample(f: impl Fn(Complex64) -> Result<Complex64>, radii: &[f64], count: usize) -> Result<Self> {
        let mut values = Vec::with_capacity(radii.len() * count);
        for &r in radii {
            for m in 0..count {
                values.push(f(unit(m, count) * r)?);
            }
        }
        Ok(Self { radii: radii.to_vec(), count, values })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `(r, w, value)` for every sample.
    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64, Complex64)> + '_ {
        self.radii.iter().enumerate().flat_map(move |(i, &r)| {
            (0..self.count).map(move |m| (r, unit(m, self.count) * r, self.values[i * self.count + m]))
        })
    }
}

/// One diagonal entry of the controller.
#[derive(Debug, Clone)]
pub enum ControllerEntry {
    Rational(RationalFunction),
    Sampled(BoundaryTable),
    Optimal(Arc<OptimalController>),
}

impl ControllerEntry {
    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        match self {
            ControllerEntry::Rational(f) => f.eval(w),
            ControllerEntry::Sampled(t) => t.eval(w),
            ControllerEntry::Optimal(s) => s.eval(w),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ControllerEntry::Rational(_) => "rational",
            ControllerEntry::Sampled(_) => "sampled",
            ControllerEntry::Optimal(_) => "optimal",
        }
    }

    fn check(&self, what: &'static str) -> Result<()> {
        match self {
            ControllerEntry::Rational(f) => f.check_stable(what),
            _ => Ok(()),
        }
    }
}

/// `Q = diag(s1, s2)`.
#[derive(Debug, Clone)]
pub struct DiagonalController {
    pub s1: ControllerEntry,
    pub s2: ControllerEntry,
}

impl DiagonalController {
    pub fn new(s1: ControllerEntry, s2: ControllerEntry) -> Result<Self> {
        s1.check("s1")?;
        s2.check("s2")?;
        Ok(Self { s1, s2 })
    }

    pub fn zero() -> Self {
        let z = ControllerEntry::Rational(RationalFunction::constant(0.0));
        Self { s1: z.clone(), s2: z }
    }

    /// `S1 = S2 = f`.
    pub fn symmetric(f: RationalFunction) -> Result<Self> {
        let e = ControllerEntry::Rational(f);
        Self::new(e.clone(), e)
    }

    pub fn optimal(s: Arc<OptimalController>) -> Self {
        let e = ControllerEntry::Optimal(s);
        Self { s1: e.clone(), s2: e }
    }

    pub fn swapped(&self) -> Self {
        Self { s1: self.s2.clone(), s2: self.s1.clone() }
    }

    fn has_optimal(&self) -> bool {
        matches!(self.s1, ControllerEntry::Optimal(_)) || matches!(self.s2, ControllerEntry::Optimal(_))
    }
}

/// A sampled lower bound on the boundary supremum, with refinement metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub grid_size: usize,
    pub converged: bool,
    pub last_delta: f64,
}

/// `L0(w) + L1(w) Q(w)`.
pub fn matching_value(inst: &ProblemInstance, q: &DiagonalController, w: Complex64) -> Result<Matrix2> {
    let a = inst.a.eval(w)?;
    let b = inst.b.eval(w)?;
    let g1 = a + b * q.s1.eval(w)?;
    let g2 = a + b * q.s2.eval(w)?;
    let m = Matrix2::unit_diagonal(g1, g2);
    if !m.is_finite() {
        return Err(Error::Evaluation(fmt_c(w)));
    }
    Ok(m)
}

fn unit(m: usize, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64)
}

/// Estimates `sup_T sigma_max(L0 + L1 Q)`.
///
/// Starts at 1024 uniform samples and doubles (up to 2^22) until two
/// successive estimates differ by less than `tol`. Each level also refines
/// around the current maximizer, and controllers built from the lens map get
/// extra samples clustered at the corner preimages `t = +-pi/2`. The value
/// is the running maximum over every sample taken, so it never decreases as
/// the grid grows.
pub fn hinf_norm(inst: &ProblemInstance, q: &DiagonalController, tol: f64) -> Result<NormEstimate> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let cost = |t: f64| -> Result<f64> { Ok(sigma_max_2x2(&matching_value(inst, q, Complex64::from_polar(1.0, t))?)) };

    let mut best = f64::NEG_INFINITY;
    let mut best_t = 0.0;
    let take = |t: f64, best: &mut f64, best_t: &mut f64| -> Result<()> {
        let v = cost(t)?;
        if v > *best {
            *best = v;
            *best_t = t;
        }
        Ok(())
    };

    let mut n = START_GRID;
    for m in 0..n {
        take(2.0 * PI * m as f64 / n as f64, &mut best, &mut best_t)?;
    }
    if q.has_optimal() {
        for side in [FRAC_PI_2, -FRAC_PI_2] {
            for k in 0..64 {
                let d = 2.0 * PI / n as f64 * 0.5f64.powi(k);
                take(side + d, &mut best, &mut best_t)?;
                take(side - d, &mut best, &mut best_t)?;
            }
        }
    }
    refine(&cost, best_t, 2.0 * PI / n as f64, &mut best, &mut best_t)?;

    let mut last_delta = f64::INFINITY;
    let mut converged = false;
    while n < MAX_GRID {
        let prev = best;
        let next = 2 * n;
        for m in (1..next).step_by(2) {
            take(2.0 * PI * m as f64 / next as f64, &mut best, &mut best_t)?;
        }
        refine(&cost, best_t, 2.0 * PI / next as f64, &mut best, &mut best_t)?;
        n = next;
        last_delta = best - prev;
        if last_delta < tol {
            converged = true;
            break;
        }
    }
    Ok(NormEstimate { value: best, grid_size: n, converged, last_delta })
}

/// Golden-section search for a local maximum within one grid cell of `t0`.
fn refine(cost: &impl Fn(f64) -> Result<f64>, t0: f64, h: f64, best: &mut f64, best_t: &mut f64) -> Result<()> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (t0 - h, t0 + h);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = cost(x1)?;
    let mut f2 = cost(x2)?;
    for _ in 0..40 {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = cost(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = cost(x2)?;
        }
    }
    for (x, f) in [(x1, f1), (x2, f2)] {
        if f > *best {
            *best = f;
            *best_t = x;
        }
    }
    Ok(())
}

/// `max_m max(|1 - g_m|, |1 + g_m|)`: the cost of `[[1, g], [g, 1]]` over a
/// boundary table.
pub fn symmetric_norm(g: &BoundaryTable) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(g.samples().iter().map(|&z| (1.0 - z).norm().max((1.0 + z).norm())).fold(f64::NEG_INFINITY, f64::max))
}

/// Necessary condition for a pair `(G1, G2)` to reach cost `sqrt(2)` on the
/// canonical instance: with `D = (G1 - G2)/2`, `|D(w)|^2 <= 1 - |w|^2`.
pub fn uniqueness_gap_check(g1: &DiscTable, g2: &DiscTable, tol: f64) -> Result<bool> {
    if g1.radii != g2.radii || g1.count != g2.count {
        return Err(Error::GridMismatch);
    }
    if g1.values.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(g1.iter().zip(g2.values()).all(|((r, _, a), b)| ((a - b) / 2.0).norm_sqr() <= 1.0 - r * r + tol))
}
