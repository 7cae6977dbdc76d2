//! Embedded invariant suite for `lensmatch selftest`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::complex_core::{sigma_max_2x2, Matrix2, TruncatedSeries};
use crate::conformal::{
    lens_boundary_distance, lens_contains, lens_derivative_at_zero, lens_map, lens_map_inv, LensParams,
};
use crate::hinf_norm::{hinf_norm, DiagonalController, ProblemInstance};
use crate::interpolation::{solve_gamma, DEFAULT_TOL};

pub struct GroupResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

const GAMMAS: [f64; 4] = [1.1, SQRT_2, 2.0, 5.0];
const POINTS: usize = 500;

/// Deterministic low-discrepancy points (additive recurrence).
fn weyl(i: usize, k: usize) -> f64 {
    const ALPHAS: [f64; 4] =
        [0.618_033_988_749_895, 0.414_213_562_373_095, 0.732_050_807_568_877, 0.236_067_977_499_79];
    (0.5 + ALPHAS[k % 4] * i as f64).fract()
}

fn disc_point(i: usize) -> Complex64 {
    Complex64::from_polar(0.999 * weyl(i, 0).sqrt(), 2.0 * PI * weyl(i, 1))
}

fn box_point(i: usize, k: usize) -> Complex64 {
    Complex64::new(4.0 * weyl(i, k) - 2.0, 4.0 * weyl(i, k + 1) - 2.0)
}

fn group(name: &'static str, worst: f64, tol: f64) -> GroupResult {
    GroupResult { name, passed: worst <= tol, detail: format!("worst {worst:.3e} vs tol {tol:.0e}") }
}

fn conformal_symmetry() -> GroupResult {
    let mut worst: f64 = 0.0;
    for g in GAMMAS {
        let p = LensParams::new(g).unwrap();
        for i in 0..POINTS {
            let w = disc_point(i);
            let f = lens_map(&p, w).unwrap();
            worst = worst.max((lens_map(&p, w.conj()).unwrap() - f.conj()).norm());
            worst = worst.max((lens_map(&p, -w).unwrap() + f).norm());
        }
    }
    group("conformal real/odd symmetry", worst, 1e-12)
}

fn conformal_geometry() -> GroupResult {
    let mut worst: f64 = 0.0;
    let mut outside = 0;
    for g in GAMMAS {
        let p = LensParams::new(g).unwrap();
        for i in 0..POINTS {
            if !lens_contains(&p, lens_map(&p, disc_point(i)).unwrap(), 0.0) {
                outside += 1;
            }
            let t = 2.0 * PI * weyl(i, 2);
            if (t - PI / 2.0).abs() < 1e-6 || (t - 3.0 * PI / 2.0).abs() < 1e-6 {
                continue;
            }
            let f = lens_map(&p, Complex64::from_polar(1.0, t)).unwrap();
            worst = worst.max(lens_boundary_distance(&p, f).abs());
        }
    }
    let mut r = group("conformal containment and boundary", worst, 1e-10);
    r.passed &= outside == 0;
    r.detail = format!("{}; {outside} interior points escaped", r.detail);
    r
}

fn conformal_inverse() -> GroupResult {
    let mut worst: f64 = 0.0;
    for g in GAMMAS {
        let p = LensParams::new(g).unwrap();
        for i in 0..POINTS {
            let w = disc_point(i);
            let back = lens_map_inv(&p, lens_map(&p, w).unwrap()).unwrap();
            worst = worst.max((back - w).norm());
        }
    }
    group("conformal inverse round trip", worst, 1e-10)
}

fn symmetric_identity() -> GroupResult {
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let g = box_point(i, 0);
        let s = sigma_max_2x2(&Matrix2::unit_diagonal(g, g));
        worst = worst.max((s - (1.0 - g).norm().max((1.0 + g).norm())).abs());
    }
    group("symmetric sigma_max identity", worst, 1e-12)
}

fn parallelogram() -> GroupResult {
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let m = |k| Matrix2::new(box_point(i, k), box_point(i, k + 1), box_point(i, k + 2), box_point(i, k + 3));
        let (m1, m2) = (m(0), m(1));
        let ma = (m1 + m2).scale(0.5);
        let md = (m1 - m2).scale(0.5);
        let lhs = ma.gram() + md.gram();
        let rhs = (m1.gram() + m2.gram()).scale(0.5);
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    group("parallelogram identity", worst, 1e-13)
}

fn series_consistency() -> GroupResult {
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let mut coeffs: Vec<Complex64> = (0..9).map(|k| box_point(i, k) * 0.5).collect();
        coeffs[0] = Complex64::new(1.0, 0.0) + coeffs[0] * 0.1;
        let f = TruncatedSeries::new(coeffs);
        let prod = f.multiply(&f.reciprocal().unwrap()).unwrap();
        let unit = TruncatedSeries::one(8);
        worst = worst.max(prod.sub(&unit).unwrap().coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max));
    }
    group("series reciprocal consistency", worst, 1e-12)
}

fn golden_values(perturb: f64) -> GroupResult {
    let expected = SQRT_2 + perturb;
    let deriv = lens_derivative_at_zero(&LensParams::new(SQRT_2).unwrap());
    let inst = ProblemInstance::canonical();
    let res = match solve_gamma(&inst, DEFAULT_TOL) {
        Ok(r) => r,
        Err(e) => return GroupResult { name: "canonical golden values", passed: false, detail: e.to_string() },
    };
    let cost = res.s_star.clone().map(|s| hinf_norm(&inst, &DiagonalController::optimal(s), 1e-9).map(|e| e.value));
    let zero_cost = hinf_norm(&inst, &DiagonalController::zero(), 1e-9).map(|e| e.value);
    let worst = match (cost, zero_cost) {
        (Some(Ok(c)), Ok(z)) => {
            [(res.gamma_star - expected).abs(), (c - expected).abs() / 1e3, (deriv - 0.5).abs(), (z - 1.5).abs()]
                .into_iter()
                .fold(0.0, f64::max)
        }
        _ => f64::INFINITY,
    };
    group("canonical golden values", worst, 1e-9)
}

/// Runs every group. `perturb` shifts the expected optimal cost and exists
/// only to exercise the failure path.
pub fn run(perturb: f64) -> Vec<GroupResult> {
    vec![
        conformal_symmetry(),
        conformal_geometry(),
        conformal_inverse(),
        symmetric_identity(),
        parallelogram(),
        series_consistency(),
        golden_values(perturb),
    ]
}
